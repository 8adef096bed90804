"""Byte-deterministic serialization of presentations (canonical JSON and text).

Canonical JSON schema::

    {
      "det_relation": POLY,                      # over matrix variable ids
      "matrix_variables": {"n": n, "order": "row-major"},
      "n": n,
      "phi": {"<var id>": POLY, ...},            # over matrix variable ids
      "relations": [{"poly": POLY, "tag": {"kind": "plucker"|"sl2", "params": {...}}}, ...],
      "variables": [{"indices": [i, ...], "sign": "+"|"-"}, ...]
    }

``POLY`` is a list of ``[num, den, [[var_id, exp], ...]]`` in descending
degrevlex order, with ``num`` and ``den`` as decimal strings.  Matrix variable
``x_ij`` has id ``(i-1)*n + (j-1)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from slnpres.exactpoly import Polynomial, VarTable, canonical_text, parse_text, to_sparse
from slnpres.presgen import Presentation, Tag, TaggedRelation
from slnpres.slnalg import IndexSeq, PresVar, matrix_table

FORMATS = ("canonical-json", "text")


class PresentationFormatError(ValueError):
    """Malformed serialized presentation; the message carries the location."""


def _poly_json(p: Polynomial) -> list:
    return [[str(c.numerator), str(c.denominator), [list(ve) for ve in to_sparse(e)]]
            for e, c in p.sorted_terms()]


def _tag_json(tag: Tag) -> dict:
    return {"kind": tag.kind,
            "params": {k: list(v) if isinstance(v, tuple) else v for k, v in tag.params}}


def to_json_obj(pres: Presentation) -> dict:
    return {
        "n": pres.n,
        "variables": [{"sign": v.sign, "indices": list(v.seq.entries)} for v in pres.table],
        "matrix_variables": {"n": pres.n, "order": "row-major"},
        "relations": [{"tag": _tag_json(r.tag), "poly": _poly_json(r.poly)} for r in pres.relations],
        "phi": {str(k): _poly_json(pres.phi[k]) for k in sorted(pres.phi)},
        "det_relation": _poly_json(pres.det_relation),
    }


def _emit_text(pres: Presentation) -> str:
    lines = [f"n {pres.n}"]
    lines += [f"var {v}" for v in pres.table]
    lines += [f"relation {r.tag} : {canonical_text(r.poly)}" for r in pres.relations]
    lines += [f"phi {pres.table.name(k)} : {canonical_text(pres.phi[k])}" for k in sorted(pres.phi)]
    lines.append(f"det : {canonical_text(pres.det_relation)}")
    return "\n".join(lines) + "\n"


def emit(pres: Presentation, fmt: str = "canonical-json") -> bytes:
    if fmt == "canonical-json":
        text = json.dumps(to_json_obj(pres), sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        return (text + "\n").encode("ascii")
    if fmt == "text":
        return _emit_text(pres).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


# -- parsing -------------------------------------------------------------------------

def _fail(where: str, msg: str) -> PresentationFormatError:
    return PresentationFormatError(f"{where}: {msg}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(where, f"expected an integer, got {value!r}")
    return value


def _poly_from_json(data: Any, table: VarTable, where: str) -> Polynomial:
    if not isinstance(data, list):
        raise _fail(where, "polynomial must be a list of terms")
    terms = []
    for t, term in enumerate(data):
        here = f"{where}[{t}]"
        if not (isinstance(term, list) and len(term) == 3):
            raise _fail(here, "term must be [num, den, monomial]")
        num, den, mono = term
        try:
            c = Fraction(int(num), int(den))
        except (TypeError, ValueError, ZeroDivisionError):
            raise _fail(here, f"bad coefficient {num!r}/{den!r}") from None
        if not isinstance(mono, list):
            raise _fail(here, "monomial must be a list of [var, exp] pairs")
        pairs = []
        for k, pair in enumerate(mono):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise _fail(f"{here}[2][{k}]", "expected [var, exp]")
            v = _int(pair[0], f"{here}[2][{k}][0]")
            e = _int(pair[1], f"{here}[2][{k}][1]")
            if not 0 <= v < len(table):
                raise _fail(f"{here}[2][{k}]", f"undeclared variable id {v}")
            if e <= 0:
                raise _fail(f"{here}[2][{k}]", f"non-positive exponent {e}")
            pairs.append((v, e))
        terms.append((c, pairs))
    return Polynomial.from_sparse_terms(table, terms)


def _tag_from_json(data: Any, where: str) -> Tag:
    if not isinstance(data, dict) or "kind" not in data:
        raise _fail(where, "tag must be an object with a kind")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise _fail(where, "tag params must be an object")
    try:
        return Tag.make(data["kind"], **params)
    except ValueError as exc:
        raise _fail(where, str(exc)) from None


def _build(n: int, variables: list[PresVar], relations, phi, det, where: str) -> Presentation:
    try:
        table = VarTable(variables)
    except ValueError as exc:
        raise _fail(where, str(exc)) from None
    return Presentation(n, table, tuple(relations), phi, det)


def _parse_json(obj: Any) -> Presentation:
    if not isinstance(obj, dict):
        raise _fail("$", "top level must be an object")
    for key in ("n", "variables", "relations", "phi", "det_relation"):
        if key not in obj:
            raise _fail("$", f"missing field {key!r}")
    n = _int(obj["n"], "$.n")
    if n < 2:
        raise _fail("$.n", "n must be at least 2")
    variables = []
    for k, v in enumerate(obj["variables"]):
        where = f"$.variables[{k}]"
        try:
            variables.append(PresVar(v["sign"], IndexSeq(n, tuple(v["indices"]))))
        except (KeyError, TypeError, ValueError) as exc:
            raise _fail(where, f"bad variable: {exc}") from None
    pres_table = VarTable(variables) if len(set(variables)) == len(variables) else None
    if pres_table is None:
        raise _fail("$.variables", "duplicate variable")
    mtable = matrix_table(n)
    relations = []
    for k, r in enumerate(obj["relations"]):
        where = f"$.relations[{k}]"
        if not isinstance(r, dict) or "tag" not in r or "poly" not in r:
            raise _fail(where, "relation must have tag and poly")
        relations.append(TaggedRelation(_tag_from_json(r["tag"], f"{where}.tag"),
                                        _poly_from_json(r["poly"], pres_table, f"{where}.poly")))
    if not isinstance(obj["phi"], dict):
        raise _fail("$.phi", "phi must be an object")
    phi = {}
    for key, val in obj["phi"].items():
        try:
            vid = int(key)
        except ValueError:
            raise _fail(f"$.phi[{key!r}]", "key must be a variable id") from None
        if not 0 <= vid < len(pres_table):
            raise _fail(f"$.phi[{key!r}]", f"undeclared variable id {vid}")
        phi[vid] = _poly_from_json(val, mtable, f"$.phi[{key!r}]")
    det = _poly_from_json(obj["det_relation"], mtable, "$.det_relation")
    return _build(n, variables, relations, phi, det, "$")


def _parse_tag_text(src: str, where: str) -> Tag:
    kind, *items = src.split()
    params: dict[str, Any] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise _fail(where, f"bad tag parameter {item!r}")
        if key in ("i", "j"):
            params[key] = tuple(int(x) for x in value.split(",") if x)
        elif key == "sign":
            params[key] = value
        else:
            try:
                params[key] = int(value)
            except ValueError:
                raise _fail(where, f"bad tag parameter {item!r}") from None
    try:
        return Tag.make(kind, **params)
    except ValueError as exc:
        raise _fail(where, str(exc)) from None


def _parse_var_name(name: str, n: int, where: str) -> PresVar:
    if len(name) < 4 or name[0] != "x" or name[1] not in "+-" or name[2] != "_":
        raise _fail(where, f"bad variable name {name!r}")
    try:
        return PresVar(name[1], IndexSeq(n, tuple(int(x) for x in name[3:].split(","))))
    except ValueError as exc:
        raise _fail(where, str(exc)) from None


def _parse_text(text: str) -> Presentation:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("n "):
        raise _fail("line 1", "expected 'n <int>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise _fail("line 1", "bad n") from None
    if n < 2:
        raise _fail("line 1", "n must be at least 2")
    variables: list[PresVar] = []
    rel_lines, phi_lines, det_line = [], [], None
    for no, line in enumerate(lines[1:], start=2):
        where = f"line {no}"
        if not line.strip():
            continue
        word, _, rest = line.partition(" ")
        if word == "var":
            variables.append(_parse_var_name(rest.strip(), n, where))
        elif word == "relation":
            rel_lines.append((where, rest))
        elif word == "phi":
            phi_lines.append((where, rest))
        elif word == "det":
            det_line = (where, rest)
        else:
            raise _fail(where, f"unknown directive {word!r}")
    if len(set(variables)) != len(variables):
        raise _fail("variables", "duplicate variable")
    table = VarTable(variables)
    mtable = matrix_table(n)

    def poly(src: str, tbl: VarTable, where: str) -> Polynomial:
        try:
            return parse_text(src, tbl)
        except ValueError as exc:
            raise _fail(where, str(exc)) from None

    relations = []
    for where, rest in rel_lines:
        head, sep, body = rest.partition(" : ")
        if not sep:
            raise _fail(where, "expected 'relation <tag> : <poly>'")
        relations.append(TaggedRelation(_parse_tag_text(head, where), poly(body, table, where)))
    phi = {}
    for where, rest in phi_lines:
        name, sep, body = rest.partition(" : ")
        if not sep or name not in table.names:
            raise _fail(where, f"phi entry for undeclared variable {name!r}")
        phi[table.names.index(name)] = poly(body, mtable, where)
    if det_line is None:
        raise _fail("end of input", "missing det line")
    where, rest = det_line
    if not rest.startswith(": "):
        raise _fail(where, "expected 'det : <poly>'")
    det = poly(rest[2:], mtable, where)
    return _build(n, variables, relations, phi, det, "text")


def parse(data: bytes | str) -> Presentation:
    """Read a presentation written by :func:`emit` in either format."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise _fail(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
        return _parse_json(obj)
    return _parse_text(text)
