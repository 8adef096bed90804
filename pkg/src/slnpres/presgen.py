"""The canonical presentation of k[SL_n]: variables, relations and the map phi.

Generators are the variables ``x+_I`` and ``x-_I`` (``I`` increasing in
``[n]`` of length ``1..n-1``); ``phi`` sends them to the minors ``f+_I`` and
``f-_I``.  Relations come in two families: the quadratic Pluecker-type
relations of each sign, and the SL2-type relations ``s_{w_d} - 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

from slnpres import linalg
from slnpres.exactpoly import Polynomial, VarTable, apply_derivation, coefficient_rows
from slnpres.lieact import chevalley_generators, pres_images
from slnpres.slnalg import (MINUS, PLUS, SIGNS, IndexSeq, PresVar, complement, determinant,
                            identity_point, index_sequences, matrix_table, minor,
                            normalize_index, pres_variables, _check_sign)


class InvariantDimensionError(ArithmeticError):
    """The invariant solver found a space of dimension other than 1."""


@lru_cache(maxsize=None)
def build_vartable(n: int) -> VarTable:
    """One variable per sign and index sequence: ``2 (2^n - 2)`` in total."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return VarTable(pres_variables(n))


def _pvar(table: VarTable, sign: str, seq: IndexSeq) -> Polynomial:
    return Polynomial.var(table, PresVar(sign, seq))


def _signed_var(table: VarTable, n: int, sign: str, raw: tuple[int, ...]) -> tuple[int, int | None]:
    norm = normalize_index(n, raw)
    if norm is None:
        return 0, None
    s, seq = norm
    return s, table.id_of(PresVar(sign, seq))


def _plucker_family(n: int, sign: str, p: int, q: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], Polynomial]]:
    _check_sign(sign)
    if not 1 <= p <= q <= n - 1:
        raise ValueError(f"need 1 <= p <= q <= {n - 1}, got p={p}, q={q}")
    table = build_vartable(n)
    nvars = len(table)
    for i in itertools.combinations(range(1, n + 1), p - 1):
        for j in itertools.combinations(range(1, n + 1), q + 1):
            acc: dict[tuple[int, ...], Fraction] = {}
            for l in range(1, q + 2):
                s1, v1 = _signed_var(table, n, sign, i + (j[l - 1],))
                s2, v2 = _signed_var(table, n, sign, j[:l - 1] + j[l:])
                if v1 is None or v2 is None:
                    continue
                exp = [0] * nvars
                exp[v1] += 1
                exp[v2] += 1
                key = tuple(exp)
                acc[key] = acc.get(key, Fraction(0)) + (-1) ** l * s1 * s2
            poly = Polynomial(table, acc)
            if poly:
                yield i, j, poly


def plucker_relations(n: int, sign: str, p: int, q: int) -> list[Polynomial]:
    """``sum_l (-1)^l x_{i, j_l} x_{j without j_l}`` for every ``i in [n]_{p-1}``, ``j in [n]_{q+1}``.

    Identically zero expressions are dropped; the rest are kept even when
    they repeat up to sign (this is the full spanning family).
    """
    return [poly for _, _, poly in _plucker_family(n, sign, p, q)]


def sl2_relation_closed(n: int, d: int) -> Polynomial:
    """``s_{w_d} = sum_{I in [n]_{n-d}} sgn(I, I*) x-_I x+_{I*}``."""
    if not 1 <= d <= n - 1:
        raise ValueError(f"d must lie in [1, {n - 1}]")
    table = build_vartable(n)
    out = Polynomial.zero(table)
    for seq in index_sequences(n, n - d):
        comp, sgn = complement(seq)
        out = out + (_pvar(table, MINUS, seq) * _pvar(table, PLUS, comp)).scale(sgn)
    return out


def phi_map(n: int) -> dict[int, Polynomial]:
    """Variable id to its minor over the matrix coordinates."""
    table = build_vartable(n)
    return {vid: minor(n, v.sign, v.seq) for vid, v in enumerate(table)}


def value_at_identity(n: int, p: Polynomial) -> Fraction:
    """``phi(p)`` evaluated at the identity matrix."""
    return p.substitute(phi_map(n)).evaluate(identity_point(n))


def invariant_space(n: int, d: int) -> list[Polynomial]:
    """Basis of the sl_n-invariants in the span of ``x+_I x-_J`` with ``|I| = d``, ``|J| = n - d``.

    Solves the linear system "every Chevalley generator annihilates t" exactly.
    """
    if not 1 <= d <= n - 1:
        raise ValueError(f"d must lie in [1, {n - 1}]")
    table = build_vartable(n)
    component = [_pvar(table, PLUS, a) * _pvar(table, MINUS, b)
                 for a in index_sequences(n, d) for b in index_sequences(n, n - d)]
    images = [pres_images(x, table) for x in chevalley_generators(n)]
    # columns = component monomials, rows = (generator, output monomial)
    row_index: dict[tuple[int, tuple[int, ...]], int] = {}
    entries: dict[tuple[int, int], Fraction] = {}
    for col, mono in enumerate(component):
        for g, img in enumerate(images):
            for exp, c in apply_derivation(mono, img).terms.items():
                r = row_index.setdefault((g, exp), len(row_index))
                entries[(r, col)] = c
    rows = [[Fraction(0)] * len(component) for _ in range(len(row_index))]
    for (r, col), c in entries.items():
        rows[r][col] = c
    basis = linalg.nullspace(rows, len(component))
    out = []
    for vec in basis:
        t = Polynomial.zero(table)
        for c, mono in zip(vec, component):
            if c:
                t = t + mono.scale(c)
        out.append(t)
    return out


def sl2_relation_solve(n: int, d: int) -> Polynomial:
    """``s_{w_d}`` as the unique invariant of its bidegree with value 1 at the identity."""
    space = invariant_space(n, d)
    if len(space) != 1:
        raise InvariantDimensionError(f"invariant space for n={n}, d={d} has dimension {len(space)}")
    t = space[0]
    val = value_at_identity(n, t)
    if not val:
        raise InvariantDimensionError("invariant vanishes at the identity")
    return t.scale(1 / val)


# -- presentation ------------------------------------------------------------------

@dataclass(frozen=True)
class Tag:
    kind: str
    params: tuple[tuple[str, Any], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("plucker", "sl2"):
            raise ValueError(f"unknown relation kind {self.kind!r}")

    @classmethod
    def make(cls, kind: str, **params: Any) -> "Tag":
        return cls(kind, tuple(sorted((k, tuple(v) if isinstance(v, list) else v)
                                      for k, v in params.items())))

    def param(self, name: str) -> Any:
        return dict(self.params)[name]

    def __str__(self) -> str:
        parts = [self.kind]
        for k, v in self.params:
            if isinstance(v, tuple):
                v = ",".join(map(str, v))
            parts.append(f"{k}={v}")
        return " ".join(parts)


@dataclass(frozen=True)
class TaggedRelation:
    tag: Tag
    poly: Polynomial


@dataclass(frozen=True)
class Presentation:
    n: int
    table: VarTable
    relations: tuple[TaggedRelation, ...]
    phi: dict[int, Polynomial] = field(hash=False)
    det_relation: Polynomial = field(hash=False)

    @property
    def matrix_table(self) -> VarTable:
        return matrix_table(self.n)

    def relation_polys(self, kind: str | None = None) -> list[Polynomial]:
        return [r.poly for r in self.relations if kind is None or r.tag.kind == kind]

    def family(self, sign: str, p: int, q: int) -> list[Polynomial]:
        return [r.poly for r in self.relations if r.tag.kind == "plucker"
                and r.tag.param("sign") == sign and r.tag.param("p") == p and r.tag.param("q") == q]


def _reduced_family(n: int, sign: str, p: int, q: int) -> list[Polynomial]:
    polys = plucker_relations(n, sign, p, q)
    if not polys:
        return []
    cols, rows = coefficient_rows(polys)
    red, _ = linalg.rref(rows)
    table = build_vartable(n)
    return [Polynomial(table, {e: c for e, c in zip(cols, row) if c}) for row in red]


def build_presentation(n: int, reduce: bool = False) -> Presentation:
    """Generators, Pluecker-type and SL2-type relations, ``phi`` and ``det - 1``.

    With ``reduce=True`` each Pluecker family is replaced by the rows of its
    reduced echelon form, which are linearly independent.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    table = build_vartable(n)
    relations: list[TaggedRelation] = []
    for sign in SIGNS:
        for p in range(1, n):
            for q in range(p, n):
                if reduce:
                    for r, poly in enumerate(_reduced_family(n, sign, p, q)):
                        relations.append(TaggedRelation(Tag.make("plucker", sign=sign, p=p, q=q, row=r), poly))
                else:
                    for i, j, poly in _plucker_family(n, sign, p, q):
                        relations.append(TaggedRelation(Tag.make("plucker", sign=sign, p=p, q=q, i=i, j=j), poly))
    for d in range(1, n):
        relations.append(TaggedRelation(Tag.make("sl2", d=d), sl2_relation_closed(n, d) - 1))
    return Presentation(n, table, tuple(relations), phi_map(n), determinant(n) - 1)
