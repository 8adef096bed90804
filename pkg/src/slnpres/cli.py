"""Command-line front end: ``slnpres {emit,verify,dims,groebner,preimage}``.

Exit codes: 0 success, 1 check failure or I/O error, 2 bound insufficient or
capped computation skipped, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence

from slnpres import formats, verify
from slnpres.exactpoly import canonical_text
from slnpres.ideal import buchberger
from slnpres.presgen import build_presentation
from slnpres.slnalg import SIGNS

EXIT_OK, EXIT_FAIL, EXIT_BOUND, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    n: int
    out: str | None = None
    format: str = "canonical-json"
    checks: tuple[str, ...] = ()
    bound: int = 2
    allow_expensive: bool = False
    reduce: bool = False
    entry: tuple[int, int] | None = None
    timing: bool = False

    def __post_init__(self) -> None:
        if self.n < 2:
            raise UsageError(f"--n must be at least 2, got {self.n}")
        if self.bound < 1:
            raise UsageError("--bound must be positive")

    @property
    def caps(self) -> verify.Caps:
        return verify.Caps(allow_expensive=self.allow_expensive,
                           surjectivity_bound=self.bound)


def _entry(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j, got {text!r}") from None
    return i, j


def _checks(text: str) -> tuple[str, ...]:
    return tuple(c.strip() for c in text.split(",") if c.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slnpres", description="Canonical presentation of k[SL_n] by generators and relations.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, required=True, help="matrix size (n >= 2)")
        p.add_argument("--allow-expensive", action="store_true",
                       help="lift the size caps on Groebner computations")

    p = sub.add_parser("emit", help="write the presentation")
    common(p)
    p.add_argument("--format", choices=formats.FORMATS, default="canonical-json")
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--reduce", action="store_true", help="row-reduce each Pluecker family")

    p = sub.add_parser("verify", help="run verification checks, JSON lines on stdout")
    common(p)
    p.add_argument("--checks", type=_checks, default=(),
                   help=f"comma list from: {', '.join(verify.CHECK_NAMES)}")
    p.add_argument("--bound", type=int, default=2, help="degree bound for surjectivity")
    p.add_argument("--timing", action="store_true", help="include timings (output no longer deterministic)")

    p = sub.add_parser("dims", help="bidegree dimension table")
    common(p)

    p = sub.add_parser("groebner", help="reduced Groebner basis of the relation ideal")
    common(p)
    p.add_argument("--reduce", action="store_true", help="start from the row-reduced relations")

    p = sub.add_parser("preimage", help="preimage of a matrix entry under phi")
    common(p)
    p.add_argument("--entry", type=_entry, required=True, help="matrix entry i,j")
    p.add_argument("--bound", type=int, default=2, help="total degree bound")
    return parser


def cmd_emit(cfg: CliConfig) -> int:
    data = formats.emit(build_presentation(cfg.n, reduce=cfg.reduce), cfg.format)
    if cfg.out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return EXIT_OK
    try:
        with open(cfg.out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        print(f"slnpres: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    unknown = [c for c in cfg.checks if c not in verify.CHECK_NAMES]
    if unknown:
        raise UsageError(f"unknown check(s) {', '.join(unknown)}; valid: {', '.join(verify.CHECK_NAMES)}")
    reports = verify.run_suite(cfg.n, cfg.checks or None, cfg.caps)
    sys.stdout.write("".join(r.to_json(timing=cfg.timing) + "\n" for r in reports))
    return EXIT_FAIL if verify.suite_failed(reports) else EXIT_OK


def dims_rows(n: int) -> list[tuple[str, int, int, int, int, int]]:
    rows = []
    for sign in SIGNS:
        for p in range(1, n):
            for q in range(p, n):
                r = verify.check_bidegree_dims(n, sign, p, q, caps=verify.Caps(max_n=max(n, 4)))
                rows.append((sign, p, q, r.params["dim"], r.params["rank"], r.params["weyl_dim"]))
    return rows


def cmd_dims(cfg: CliConfig) -> int:
    lines = ["sign p q dim rank weyl_dim"]
    lines += [" ".join(map(str, row)) for row in dims_rows(cfg.n)]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_groebner(cfg: CliConfig) -> int:
    if cfg.n > 4 and not cfg.allow_expensive:
        print(f"slnpres: groebner capped at n=4; pass --allow-expensive for n={cfg.n}", file=sys.stderr)
        return EXIT_BOUND
    gb = buchberger(build_presentation(cfg.n, reduce=cfg.reduce).relation_polys())
    sys.stdout.write("".join(canonical_text(g) + "\n" for g in gb.generators))
    return EXIT_OK


def cmd_preimage(cfg: CliConfig) -> int:
    i, j = cfg.entry
    if not (1 <= i <= cfg.n and 1 <= j <= cfg.n):
        raise UsageError(f"--entry {i},{j} outside a {cfg.n}x{cfg.n} matrix")
    pre = verify.find_preimage(cfg.n, i, j, cfg.bound)
    if pre is None:
        print("no preimage within bound")
        return EXIT_BOUND
    print(canonical_text(pre))
    return EXIT_OK


COMMANDS = {"emit": cmd_emit, "verify": cmd_verify, "dims": cmd_dims,
            "groebner": cmd_groebner, "preimage": cmd_preimage}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = CliConfig(
            subcommand=args.subcommand, n=args.n,
            out=getattr(args, "out", None), format=getattr(args, "format", "canonical-json"),
            checks=getattr(args, "checks", ()), bound=getattr(args, "bound", 2),
            allow_expensive=args.allow_expensive, reduce=getattr(args, "reduce", False),
            entry=getattr(args, "entry", None), timing=getattr(args, "timing", False))
        return COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        print(f"slnpres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
