"""Exact checks of the structural facts behind the presentation, at small n.

Each check returns a :class:`VerificationReport`.  Checks accept optional
overrides of their inputs (relations, invariants, candidate preimages) so that
mutated data can be fed through the same code path as negative controls.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Sequence

from slnpres import linalg
from slnpres.exactpoly import Polynomial, VarTable, canonical_text, coefficient_rows
from slnpres.ideal import buchberger, eliminate, normal_form
from slnpres.lieact import casimir_delta, is_invariant, polarized_casimir
from slnpres.presgen import (build_presentation, build_vartable, phi_map, plucker_relations,
                             sl2_relation_closed, value_at_identity)
from slnpres.slnalg import (SIGNS, PresVar, c_lambda, determinant, fundamental_weight,
                            index_sequences, killing_pair, matrix_table, matrix_var, weyl_dim)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

CHECK_NAMES = (
    "relations-vanish",
    "kernel-equality",
    "bidegree-dims",
    "kernel-projector",
    "casimir",
    "invariant-monomials",
    "surjectivity",
)


@dataclass
class VerificationReport:
    check: str
    params: dict[str, Any]
    verdict: str
    witness: str | None = None
    reason: str | None = None
    timing: float = 0.0

    def __post_init__(self) -> None:
        if self.verdict not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.witness:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {"check": self.check, "params": self.params, "verdict": self.verdict,
               "witness": self.witness, "reason": self.reason}
        if timing:
            out["timing"] = round(self.timing, 6)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Caps:
    """Resource caps; checks above a cap report ``skipped``."""

    max_n: int = 4
    max_n_elimination: int = 2
    allow_expensive: bool = False
    invariant_degree: int = 2
    surjectivity_bound: int = 2

    def __post_init__(self) -> None:
        if min(self.max_n, self.max_n_elimination, self.invariant_degree, self.surjectivity_bound) < 1:
            raise ValueError("caps must be positive")

    @property
    def elimination_limit(self) -> int:
        return self.max_n if self.allow_expensive else self.max_n_elimination


def _timed(fn: Callable[..., VerificationReport]) -> Callable[..., VerificationReport]:
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.timing = time.perf_counter() - start
        return report
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _det_basis(n: int) -> list[Polynomial]:
    return [determinant(n) - 1]


def _mod_det(n: int, p: Polynomial) -> Polynomial:
    """Normal form modulo ``det - 1`` (a one-element Groebner basis)."""
    return normal_form(p, _det_basis(n))


def _too_big(name: str, params: dict, n: int, cap: int) -> VerificationReport | None:
    if n > cap:
        return VerificationReport(name, params, SKIPPED, reason=f"n={n} exceeds cap {cap}")
    return None


# -- individual checks -------------------------------------------------------------

@_timed
def check_relations_vanish(n: int, presentation=None, caps: Caps = Caps()) -> VerificationReport:
    """Every relation maps to 0 under phi modulo ``det - 1``."""
    params = {"n": n}
    if skip := _too_big("relations-vanish", params, n, caps.max_n):
        return skip
    pres = presentation or build_presentation(n)
    phi = pres.phi
    for rel in pres.relations:
        rem = _mod_det(n, rel.poly.substitute(phi))
        if rem:
            return VerificationReport("relations-vanish", params, FAIL,
                                      witness=f"[{rel.tag}] {canonical_text(rel.poly)} -> {canonical_text(rem)}")
    params["relations"] = len(pres.relations)
    return VerificationReport("relations-vanish", params, PASS)


def graph_ideal(n: int) -> tuple[VarTable, list[Polynomial], list[int]]:
    """Generators ``x - phi(x)`` and ``det - 1`` over presentation plus matrix variables.

    Presentation variables keep their ids; matrix variables follow them.
    Returns the joint table, the generators and the matrix variable ids.
    """
    ptable, mtable = build_vartable(n), matrix_table(n)
    joint = VarTable(list(ptable) + list(mtable))
    gens = [Polynomial.var(joint, vid) - img.rebase(joint) for vid, img in phi_map(n).items()]
    gens.append((determinant(n) - 1).rebase(joint))
    return joint, gens, list(range(len(ptable), len(joint)))


@_timed
def check_kernel_equality(n: int, relations: Sequence[Polynomial] | None = None,
                          caps: Caps = Caps()) -> VerificationReport:
    """The elimination ideal of the graph of phi equals the ideal of the relations."""
    params = {"n": n}
    if n > caps.elimination_limit:
        hint = "" if caps.allow_expensive else "; pass allow_expensive to run it"
        return VerificationReport("kernel-equality", params, SKIPPED,
                                  reason=f"elimination capped at n={caps.elimination_limit}{hint}")
    ptable = build_vartable(n)
    rels = list(relations) if relations is not None else build_presentation(n).relation_polys()
    joint, gens, drop = graph_ideal(n)
    kernel = [g.rebase(ptable, {v: v for v in g.variables()}) for g in eliminate(gens, drop)]
    # an empty relation set generates the zero ideal
    rel_gb = list(buchberger(rels).generators) if any(rels) else []
    if kernel == rel_gb:
        params["generators"] = len(kernel)
        # small bases are spelled out; larger ones are only counted
        witness = "; ".join(canonical_text(g) for g in kernel) if len(kernel) <= 4 else None
        return VerificationReport("kernel-equality", params, PASS, witness=witness)
    extra = [g for g in kernel if g not in rel_gb] or [g for g in rel_gb if g not in kernel]
    return VerificationReport(
        "kernel-equality", params, FAIL,
        witness=(f"kernel basis has {len(kernel)} generators, relation basis {len(rel_gb)}; "
                 f"first differing generator: {canonical_text(extra[0])}"))


def bidegree_basis(n: int, sign: str, p: int, q: int) -> list[Polynomial]:
    """Monomial basis of the degree ``e_p + e_q`` component of ``F^sign``."""
    table = build_vartable(n)
    left = [Polynomial.var(table, PresVar(sign, s)) for s in index_sequences(n, p)]
    if p != q:
        right = [Polynomial.var(table, PresVar(sign, s)) for s in index_sequences(n, q)]
        return [a * b for a in left for b in right]
    return [left[a] * left[b] for a in range(len(left)) for b in range(a, len(left))]


def _family(n: int, sign: str, p: int, q: int, relations) -> list[Polynomial]:
    return list(relations) if relations is not None else plucker_relations(n, sign, p, q)


def _rank_of(polys: Sequence[Polynomial]) -> int:
    if not polys:
        return 0
    _, rows = coefficient_rows(polys)
    return linalg.rank(rows)


@_timed
def check_bidegree_dims(n: int, sign: str, p: int, q: int,
                        relations: Sequence[Polynomial] | None = None,
                        caps: Caps = Caps()) -> VerificationReport:
    """``dim F_{p,q} - rank(relations) = weyl_dim(w_p + w_q)``."""
    params = {"n": n, "sign": sign, "p": p, "q": q}
    if skip := _too_big("bidegree-dims", params, n, caps.max_n):
        return skip
    dim = len(bidegree_basis(n, sign, p, q))
    rank = _rank_of(_family(n, sign, p, q, relations))
    wd = weyl_dim(n, fundamental_weight(n, p) + fundamental_weight(n, q))
    params.update(dim=dim, rank=rank, weyl_dim=wd)
    witness = f"{dim} - {rank} = {dim - rank}, weyl_dim = {wd}"
    if dim - rank == wd:
        return VerificationReport("bidegree-dims", params, PASS, witness=witness)
    return VerificationReport("bidegree-dims", params, FAIL, witness=witness)


def projector_image(n: int, sign: str, p: int, q: int) -> list[Polynomial]:
    """Images of the basis of ``F_{p,q}`` under ``Delta - 2 Phi(w_p*, w_q*) id``."""
    shift = 2 * killing_pair(n, fundamental_weight(n, p).star(), fundamental_weight(n, q).star())
    return [polarized_casimir(n, m) - m.scale(shift) for m in bidegree_basis(n, sign, p, q)]


@_timed
def check_kernel_projector(n: int, sign: str, p: int, q: int,
                           relations: Sequence[Polynomial] | None = None,
                           caps: Caps = Caps()) -> VerificationReport:
    """The image of the shifted two-leg Casimir equals the span of the Pluecker family."""
    params = {"n": n, "sign": sign, "p": p, "q": q}
    if skip := _too_big("kernel-projector", params, n, caps.max_n):
        return skip
    image = [v for v in projector_image(n, sign, p, q) if v]
    family = [r for r in _family(n, sign, p, q, relations) if r]
    r_img, r_fam = _rank_of(image), _rank_of(family)
    r_joint = _rank_of(image + family)
    params.update(image_rank=r_img, relation_rank=r_fam)
    witness = f"rank(image) = {r_img}, rank(relations) = {r_fam}, rank(joint) = {r_joint}"
    if r_img == r_fam == r_joint:
        return VerificationReport("kernel-projector", params, PASS, witness=witness)
    return VerificationReport("kernel-projector", params, FAIL, witness=witness)


@_timed
def check_casimir(n: int, d: int, s: Polynomial | None = None, caps: Caps = Caps()) -> VerificationReport:
    """``Delta(s) = -c s`` with ``c = c_lambda(w_d)``, and ``s(e, e) = 1``."""
    params = {"n": n, "d": d}
    if skip := _too_big("casimir", params, n, caps.max_n):
        return skip
    s = s if s is not None else sl2_relation_closed(n, d)
    c = c_lambda(n, fundamental_weight(n, d))
    params["c"] = str(c)
    residual = casimir_delta(n, s) + s.scale(c)
    if residual:
        return VerificationReport("casimir", params, FAIL,
                                  witness=f"Delta(s) + {c}*s = {canonical_text(residual)}")
    val = value_at_identity(n, s)
    if val != 1:
        return VerificationReport("casimir", params, FAIL, witness=f"s(e,e) = {val}")
    return VerificationReport("casimir", params, PASS, witness=f"eigenvalue -{c}")


def _exponent_vectors(m: int, maxdeg: int):
    for total in range(1, maxdeg + 1):
        for combo in itertools.combinations_with_replacement(range(m), total):
            yield tuple(combo.count(k) for k in range(m))


@_timed
def check_invariant_monomials(n: int, maxdeg: int = 2, generators: Sequence[Polynomial] | None = None,
                              caps: Caps = Caps()) -> VerificationReport:
    """Each product ``prod (s_d - 1)^{a_d}`` with ``0 < sum a_d <= maxdeg`` is invariant and in ker phi."""
    params = {"n": n, "maxdeg": maxdeg}
    if skip := _too_big("invariant-monomials", params, n, caps.max_n):
        return skip
    gens = list(generators) if generators is not None else [sl2_relation_closed(n, d) for d in range(1, n)]
    phi = phi_map(n)
    count = 0
    for a in _exponent_vectors(len(gens), maxdeg):
        prod = Polynomial.constant(build_vartable(n), 1)
        for g, k in zip(gens, a):
            if k:
                prod = prod * (g - 1) ** k
        label = "*".join(f"(s{d + 1}-1)^{k}" for d, k in enumerate(a) if k)
        if not is_invariant(n, prod, "pres"):
            return VerificationReport("invariant-monomials", params, FAIL, witness=f"{label} is not invariant")
        rem = _mod_det(n, prod.substitute(phi))
        if rem:
            return VerificationReport("invariant-monomials", params, FAIL,
                                      witness=f"phi({label}) = {canonical_text(rem)} mod det-1")
        count += 1
    params["products"] = count
    return VerificationReport("invariant-monomials", params, PASS)


@lru_cache(maxsize=8)
def _image_span(n: int, bound: int) -> tuple[linalg.SparseEchelon, tuple]:
    table = build_vartable(n)
    phi = phi_map(n)
    span = linalg.SparseEchelon()
    monos = []
    for deg in range(bound + 1):
        for combo in itertools.combinations_with_replacement(range(len(table)), deg):
            mono = Polynomial.constant(table, 1)
            for v in combo:
                mono = mono * Polynomial.var(table, v)
            monos.append(mono)
            span.add(dict(_mod_det(n, mono.substitute(phi)).terms), len(monos) - 1)
    return span, tuple(monos)


def find_preimage(n: int, i: int, j: int, bound: int) -> Polynomial | None:
    """A polynomial of degree ``<= bound`` whose phi-image is ``x_ij`` modulo ``det - 1``."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"entry ({i}, {j}) outside a {n}x{n} matrix")
    target = dict(matrix_var(n, i, j).terms)
    for b in range(bound + 1):
        span, monos = _image_span(n, b)
        combo = span.express(target)
        if combo is not None:
            out = Polynomial.zero(build_vartable(n))
            for lab in sorted(combo):
                out = out + monos[lab].scale(combo[lab])
            return out
    return None


@_timed
def check_surjectivity(n: int, i: int, j: int, bound: int = 2, preimage: Polynomial | None = None,
                       caps: Caps = Caps()) -> VerificationReport:
    """Find (or verify a supplied) preimage of ``x_ij`` under phi modulo ``det - 1``."""
    params = {"n": n, "i": i, "j": j, "bound": bound}
    if skip := _too_big("surjectivity", params, n, caps.max_n):
        return skip
    cand = preimage if preimage is not None else find_preimage(n, i, j, bound)
    if cand is None:
        return VerificationReport("surjectivity", params, SKIPPED,
                                  reason=f"no preimage of degree <= {bound}")
    rem = _mod_det(n, cand.substitute(phi_map(n)) - matrix_var(n, i, j))
    if rem:
        return VerificationReport("surjectivity", params, FAIL,
                                  witness=f"phi({canonical_text(cand)}) - x_{i},{j} = {canonical_text(rem)}")
    return VerificationReport("surjectivity", params, PASS, witness=canonical_text(cand))


# -- suite -------------------------------------------------------------------------

def _pairs(n: int):
    return [(sign, p, q) for sign in SIGNS for p in range(1, n) for q in range(p, n)]


def run_suite(n: int, selection: Sequence[str] | None = None, caps: Caps = Caps()) -> list[VerificationReport]:
    """Run the selected checks (all by default) in a fixed order."""
    chosen = list(CHECK_NAMES) if not selection else list(selection)
    unknown = [c for c in chosen if c not in CHECK_NAMES]
    if unknown:
        raise ValueError(f"unknown check(s) {', '.join(unknown)}; valid: {', '.join(CHECK_NAMES)}")
    if n < 2:
        raise ValueError("n must be at least 2")
    reports: list[VerificationReport] = []
    for name in CHECK_NAMES:
        if name not in chosen:
            continue
        if name == "relations-vanish":
            reports.append(check_relations_vanish(n, caps=caps))
        elif name == "kernel-equality":
            reports.append(check_kernel_equality(n, caps=caps))
        elif name == "bidegree-dims":
            reports += [check_bidegree_dims(n, *spq, caps=caps) for spq in _pairs(n)]
        elif name == "kernel-projector":
            reports += [check_kernel_projector(n, *spq, caps=caps) for spq in _pairs(n)]
        elif name == "casimir":
            reports += [check_casimir(n, d, caps=caps) for d in range(1, n)]
        elif name == "invariant-monomials":
            reports.append(check_invariant_monomials(n, caps.invariant_degree, caps=caps))
        elif name == "surjectivity":
            reports += [check_surjectivity(n, i, j, caps.surjectivity_bound, caps=caps)
                        for i in range(1, n + 1) for j in range(1, n + 1)]
    return reports


def suite_failed(reports: Sequence[VerificationReport]) -> bool:
    return any(r.verdict == FAIL for r in reports)
