"""The sl_n action by derivations, Killing-dual bases and the mixed Casimir operator.

Sign convention: ``(X.f)(h) = -d/dt f(exp(tX) h)`` at ``t = 0``, so on matrix
coordinates ``X.x_ij = -sum_k X_ik x_kj``.  This is a Lie algebra
homomorphism (``[D_X, D_Y] = D_[X,Y]``).  On a presentation variable the
same rule replaces one row of the underlying minor at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from slnpres import linalg
from slnpres.exactpoly import Polynomial, VarTable, apply_derivation
from slnpres.slnalg import (MINUS, PLUS, MatrixVar, PresVar, matrix_table,
                            normalize_index)


@dataclass(frozen=True)
class LieElt:
    """A traceless ``n x n`` rational matrix, stored as ``{(row, col): value}`` (1-based)."""

    n: int
    entries: tuple[tuple[tuple[int, int], Fraction], ...]

    def __post_init__(self) -> None:
        clean = {}
        for (a, b), v in dict(self.entries).items():
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"entry ({a}, {b}) outside a {self.n}x{self.n} matrix")
            v = Fraction(v)
            if v:
                clean[(a, b)] = v
        if sum(v for (a, b), v in clean.items() if a == b) != 0:
            raise ValueError("Lie algebra element must have trace 0")
        object.__setattr__(self, "entries", tuple(sorted(clean.items())))

    @classmethod
    def from_dict(cls, n: int, entries: Mapping[tuple[int, int], Fraction | int]) -> "LieElt":
        return cls(n, tuple(entries.items()))

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.entries)

    def __getitem__(self, ab: tuple[int, int]) -> Fraction:
        return dict(self.entries).get(ab, Fraction(0))

    def __add__(self, other: "LieElt") -> "LieElt":
        acc = self.as_dict()
        for k, v in other.entries:
            acc[k] = acc.get(k, Fraction(0)) + v
        return LieElt.from_dict(self.n, acc)

    def scale(self, c: Fraction | int) -> "LieElt":
        return LieElt.from_dict(self.n, {k: v * c for k, v in self.entries})

    def matmul(self, other: "LieElt") -> dict[tuple[int, int], Fraction]:
        acc: dict[tuple[int, int], Fraction] = {}
        for (a, b), v in self.entries:
            for (c, d), w in other.entries:
                if b == c:
                    acc[(a, d)] = acc.get((a, d), Fraction(0)) + v * w
        return acc

    def bracket(self, other: "LieElt") -> "LieElt":
        xy, yx = self.matmul(other), other.matmul(self)
        keys = set(xy) | set(yx)
        return LieElt.from_dict(self.n, {k: xy.get(k, 0) - yx.get(k, 0) for k in keys})


def elementary(n: int, a: int, b: int) -> LieElt:
    if a == b:
        raise ValueError("diagonal matrix units are not traceless")
    return LieElt.from_dict(n, {(a, b): 1})


def cartan_element(n: int, k: int) -> LieElt:
    """``h_k = E_kk - E_{k+1,k+1}``."""
    return LieElt.from_dict(n, {(k, k): 1, (k + 1, k + 1): -1})


def chevalley_generators(n: int) -> list[LieElt]:
    """``e_{a,a+1}`` and ``e_{a+1,a}`` for ``a = 1..n-1``; they generate sl_n."""
    gens = []
    for a in range(1, n):
        gens.append(elementary(n, a, a + 1))
        gens.append(elementary(n, a + 1, a))
    return gens


def killing(x: LieElt, y: LieElt) -> Fraction:
    """``Phi(X, Y) = 2n tr(XY)``."""
    if x.n != y.n:
        raise ValueError("Lie algebra elements for different n")
    prod = x.matmul(y)
    return 2 * x.n * sum((v for (a, b), v in prod.items() if a == b), Fraction(0))


@dataclass(frozen=True)
class DualBasisPair:
    basis: tuple[LieElt, ...]
    dual: tuple[LieElt, ...]

    @property
    def n(self) -> int:
        return self.basis[0].n

    def __iter__(self):
        return iter(zip(self.basis, self.dual))


def dual_of(basis: Sequence[LieElt]) -> DualBasisPair:
    """Killing-dual of an arbitrary basis of sl_n, by inverting the full Gram matrix."""
    n = basis[0].n
    dim = n * n - 1
    if len(basis) != dim:
        raise ValueError(f"a basis of sl_{n} has {dim} elements")
    gram = [[killing(x, y) for y in basis] for x in basis]
    red, pivots = linalg.rref([row + [Fraction(int(i == j)) for j in range(dim)]
                               for i, row in enumerate(gram)])
    if pivots[:dim] != list(range(dim)):
        raise ValueError("elements do not form a basis of sl_n")
    inv = [row[dim:] for row in red]
    dual = []
    for i in range(dim):
        acc: dict[tuple[int, int], Fraction] = {}
        for j in range(dim):
            c = inv[i][j]
            if c:
                for k, v in basis[j].entries:
                    acc[k] = acc.get(k, Fraction(0)) + c * v
        dual.append(LieElt.from_dict(n, acc))
    return DualBasisPair(tuple(basis), tuple(dual))


@lru_cache(maxsize=None)
def dual_bases(n: int) -> DualBasisPair:
    """Standard basis of sl_n with its Killing dual.

    Off-diagonal units pair as ``(e_ab)* = e_ba / 2n``; the Cartan block is
    dualized through its Gram matrix.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    off = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    basis = [elementary(n, a, b) for a, b in off]
    dual = [elementary(n, b, a).scale(Fraction(1, 2 * n)) for a, b in off]
    cartan = [cartan_element(n, k) for k in range(1, n)]
    r = n - 1
    gram = [[killing(x, y) for y in cartan] for x in cartan]
    red, _ = linalg.rref([row + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(gram)])
    for i in range(r):
        acc: dict[tuple[int, int], Fraction] = {}
        for j in range(r):
            for k, v in cartan[j].entries:
                acc[k] = acc.get(k, Fraction(0)) + red[i][r + j] * v
        basis.append(cartan[i])
        dual.append(LieElt.from_dict(n, acc))
    return DualBasisPair(tuple(basis), tuple(dual))


# -- actions -----------------------------------------------------------------------

def _matrix_images(x: LieElt, table: VarTable) -> dict[int, Polynomial]:
    images: dict[int, Polynomial] = {}
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (a, b), v in x.entries:
        rows.setdefault(a, []).append((b, v))
    for vid, desc in enumerate(table):
        if not isinstance(desc, MatrixVar) or desc.i not in rows:
            continue
        img = Polynomial.zero(table)
        for k, v in rows[desc.i]:
            img = img - Polynomial.var(table, MatrixVar(k, desc.j)).scale(v)
        if img:
            images[vid] = img
    return images


def act_matrix(x: LieElt, p: Polynomial) -> Polynomial:
    """``X.p`` on polynomials in the matrix coordinates of SL_n."""
    if p.table != matrix_table(x.n):
        raise ValueError("polynomial is not over the matrix coordinates for this n")
    return apply_derivation(p, _matrix_images(x, p.table))


def pres_images(x: LieElt, table: VarTable, only: Iterable[int] | None = None) -> dict[int, Polynomial]:
    """Images of presentation variables under ``X``: replace each row ``i_r`` by ``k``.

    ``X.x_{i_1..i_d} = -sum_r sum_k X[i_r, k] x_{i_1..k..i_d}`` with the
    replaced index sequence normalized (signed, zero on repeats).
    """
    n = x.n
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (a, b), v in x.entries:
        rows.setdefault(a, []).append((b, v))
    allowed = None if only is None else set(only)
    images: dict[int, Polynomial] = {}
    for vid, desc in enumerate(table):
        if allowed is not None and vid not in allowed:
            continue
        if not isinstance(desc, PresVar):
            continue
        if desc.n != n:
            raise ValueError("presentation variable belongs to a different n")
        entries = desc.seq.entries
        acc: dict[int, Fraction] = {}
        for r, i in enumerate(entries):
            for k, v in rows.get(i, ()):
                raw = entries[:r] + (k,) + entries[r + 1:]
                norm = normalize_index(n, raw)
                if norm is None:
                    continue
                sign, seq = norm
                tid = table.id_of(PresVar(desc.sign, seq))
                acc[tid] = acc.get(tid, Fraction(0)) - sign * v
        img = Polynomial.zero(table)
        for tid, c in acc.items():
            img = img + Polynomial.var(table, tid).scale(c)
        if img:
            images[vid] = img
    return images


def act_pres(x: LieElt, p: Polynomial, only: Iterable[int] | None = None) -> Polynomial:
    """``X.p`` on polynomials in presentation variables.

    ``only`` restricts the derivation to a subset of variable ids (one tensor leg).
    """
    return apply_derivation(p, pres_images(x, p.table, only))


def act(x: LieElt, p: Polynomial) -> Polynomial:
    """Dispatch on the kind of variables ``p`` is written in."""
    if len(p.table) and isinstance(p.table[0], MatrixVar):
        return act_matrix(x, p)
    return act_pres(x, p)


def is_invariant(n: int, p: Polynomial, space: str | None = None) -> bool:
    """Whether every Chevalley generator of sl_n annihilates ``p``.

    ``space`` is ``"matrix"`` or ``"pres"``; inferred from the table when omitted.
    """
    if space is None:
        space = "matrix" if len(p.table) and isinstance(p.table[0], MatrixVar) else "pres"
    if space not in ("matrix", "pres"):
        raise ValueError(f"unknown variable space {space!r}")
    op = act_matrix if space == "matrix" else act_pres
    return all(op(x, p).is_zero() for x in chevalley_generators(n))


# -- Casimir-type operators ------------------------------------------------------------

def sign_split(table: VarTable) -> tuple[list[int], list[int]]:
    """Ids of the ``x+`` and the ``x-`` variables of a presentation table."""
    plus = [i for i, d in enumerate(table) if isinstance(d, PresVar) and d.sign == PLUS]
    minus = [i for i, d in enumerate(table) if isinstance(d, PresVar) and d.sign == MINUS]
    return plus, minus


def _leg_degrees(p: Polynomial, plus: set[int], minus: set[int]) -> set[tuple[int, int]]:
    return {(sum(e for v, e in enumerate(exp) if v in plus),
             sum(e for v, e in enumerate(exp) if v in minus)) for exp in p.terms}


def casimir_delta(n: int, p: Polynomial, plus: Iterable[int] | None = None,
                  minus: Iterable[int] | None = None,
                  bases: DualBasisPair | None = None) -> Polynomial:
    """The mixed operator ``sum_i (x_i (x) x_i* + x_i* (x) x_i)``.

    The first tensor factor acts on the ``plus`` leg, the second on the
    ``minus`` leg (defaults: the ``x+`` / ``x-`` variables).
    """
    if plus is None or minus is None:
        dplus, dminus = sign_split(p.table)
        plus = dplus if plus is None else plus
        minus = dminus if minus is None else minus
    plus_set, minus_set = set(plus), set(minus)
    if plus_set & minus_set:
        raise ValueError("tensor legs overlap")
    if len(_leg_degrees(p, plus_set, minus_set)) > 1:
        raise ValueError("polynomial is not bihomogeneous for the tensor split")
    bases = bases or dual_bases(n)
    out = Polynomial.zero(p.table)
    for x, xs in bases:
        out = out + act_pres(x, act_pres(xs, p, minus_set), plus_set)
        out = out + act_pres(xs, act_pres(x, p, minus_set), plus_set)
    return out


def casimir(n: int, p: Polynomial, bases: DualBasisPair | None = None) -> Polynomial:
    """``Omega = sum_i x_i x_i*`` acting on all variables of ``p``."""
    bases = bases or dual_bases(n)
    out = Polynomial.zero(p.table)
    for x, xs in bases:
        out = out + act(x, act(xs, p))
    return out


def polarized_casimir(n: int, p: Polynomial, bases: DualBasisPair | None = None) -> Polynomial:
    """Cross part of the Casimir: ``Omega`` minus its action on single variables.

    On a product ``u v`` of two variables this is
    ``sum_i (x_i u)(x_i* v) + (x_i* u)(x_i v)``, i.e. the two-leg operator
    on ``S(a) (x) S(b)`` and its restriction to ``Sym^2 S(a)``.
    """
    bases = bases or dual_bases(n)
    table = p.table
    omega_on_vars: dict[int, Polynomial] = {}
    for v in p.variables():
        omega_on_vars[v] = casimir(n, Polynomial.var(table, v), bases)
    return casimir(n, p, bases) - apply_derivation(p, omega_on_vars)
