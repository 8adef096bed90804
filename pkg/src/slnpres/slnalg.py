"""SL_n domain objects: index sequences, minors, weights and the Killing form.

Conventions: B+ is the lower triangular Borel subgroup, so the positive roots
are ``eps_i - eps_j`` with ``i > j`` and the fundamental weight ``w_d`` is
``eps_{n-d+1} + ... + eps_n``.  The Killing form on sl_n is
``Phi(X, Y) = 2n tr(XY)``; weights are paired with the induced dual form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from slnpres import linalg
from slnpres.exactpoly import Polynomial, VarTable

PLUS = "+"
MINUS = "-"
SIGNS = (PLUS, MINUS)


def _check_sign(sign: str) -> str:
    if sign not in SIGNS:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return sign


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries), by inversion count."""
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


@dataclass(frozen=True, order=True)
class IndexSeq:
    """A strictly increasing sequence in ``[n]`` of length ``1 <= d <= n-1``."""

    n: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.n < 2:
            raise ValueError("n must be at least 2")
        d = len(self.entries)
        if not 1 <= d <= self.n - 1:
            raise ValueError(f"length {d} outside [1, {self.n - 1}]")
        if any(not 1 <= i <= self.n for i in self.entries):
            raise ValueError(f"entries {self.entries} outside [1, {self.n}]")
        if any(a >= b for a, b in zip(self.entries, self.entries[1:])):
            raise ValueError(f"entries {self.entries} not strictly increasing")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))


@dataclass(frozen=True, order=True)
class MatrixVar:
    """The coordinate function ``g -> g[i, j]`` (1-based)."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"x_{self.i},{self.j}"


@dataclass(frozen=True)
class PresVar:
    """The presentation variable ``x^sign_seq``, standing for the minor ``f^sign_seq``."""

    sign: str
    seq: IndexSeq

    def __post_init__(self) -> None:
        _check_sign(self.sign)

    @property
    def n(self) -> int:
        return self.seq.n

    @property
    def d(self) -> int:
        return len(self.seq)

    def __str__(self) -> str:
        return f"x{self.sign}_{self.seq}"


def index_sequences(n: int, d: int) -> list[IndexSeq]:
    """All of ``[n]_d`` in lexicographic order."""
    return [IndexSeq(n, c) for c in itertools.combinations(range(1, n + 1), d)]


def normalize_index(n: int, raw: Sequence[int]) -> tuple[int, IndexSeq] | None:
    """Sort ``raw`` into an index sequence with the sign of the sorting permutation.

    Returns ``None`` (the zero element) when an entry repeats.
    """
    if any(not 1 <= i <= n for i in raw):
        raise ValueError(f"entries {tuple(raw)} outside [1, {n}]")
    if len(set(raw)) != len(raw):
        return None
    return permutation_sign(raw), IndexSeq(n, tuple(sorted(raw)))


def complement(seq: IndexSeq) -> tuple[IndexSeq, int]:
    """The increasing complement of ``seq`` in ``[n]`` and the sign of ``(seq, complement)``."""
    rest = tuple(i for i in range(1, seq.n + 1) if i not in seq.entries)
    return IndexSeq(seq.n, rest), permutation_sign(seq.entries + rest)


# -- matrix coordinates and minors -------------------------------------------------

@lru_cache(maxsize=None)
def matrix_table(n: int) -> VarTable:
    """Row-major table of the ``n*n`` matrix coordinates."""
    return VarTable(MatrixVar(i, j) for i in range(1, n + 1) for j in range(1, n + 1))


def matrix_var(n: int, i: int, j: int) -> Polynomial:
    return Polynomial.var(matrix_table(n), MatrixVar(i, j))


def _det(n: int, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    table = matrix_table(n)
    k = len(rows)
    terms = {}
    for perm in itertools.permutations(range(k)):
        exp = [0] * (n * n)
        for r, c in zip(rows, (cols[p] for p in perm)):
            exp[(r - 1) * n + (c - 1)] += 1
        terms[tuple(exp)] = permutation_sign(perm)
    return Polynomial(table, terms)


def minor_columns(n: int, sign: str, d: int) -> tuple[int, ...]:
    """Columns used by ``f^-`` (first ``d``) or ``f^+`` (last ``d``)."""
    _check_sign(sign)
    if not 1 <= d <= n - 1:
        raise ValueError(f"minor size {d} outside [1, {n - 1}]")
    return tuple(range(1, d + 1)) if sign == MINUS else tuple(range(n - d + 1, n + 1))


def minor(n: int, sign: str, seq: IndexSeq | Sequence[int]) -> Polynomial:
    """The minor ``f^sign_seq``: rows ``seq``, columns from :func:`minor_columns`."""
    rows = tuple(seq)
    if isinstance(seq, IndexSeq) and seq.n != n:
        raise ValueError("index sequence belongs to a different n")
    return _det(n, rows, minor_columns(n, sign, len(rows)))


@lru_cache(maxsize=None)
def determinant(n: int) -> Polynomial:
    return _det(n, tuple(range(1, n + 1)), tuple(range(1, n + 1)))


def identity_point(n: int) -> dict[int, Fraction]:
    """The identity matrix as an assignment of matrix variable ids."""
    return {(i - 1) * n + (j - 1): Fraction(int(i == j))
            for i in range(1, n + 1) for j in range(1, n + 1)}


# -- weights ---------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """A weight of the diagonal torus of SL_n in eps-coordinates modulo ``(1, ..., 1)``.

    The stored representative has first coordinate 0, so the coordinates are
    partial sums of the fundamental-weight expansion.
    """

    n: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(x) for x in self.coords)
        if len(c) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(c)}")
        object.__setattr__(self, "coords", tuple(x - c[0] for x in c))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls(n, (0,) * n)

    @classmethod
    def from_fundamental(cls, n: int, multiplicities: Sequence[int]) -> "Weight":
        """``sum_d a_d w_d`` for ``multiplicities = (a_1, ..., a_{n-1})``."""
        if len(multiplicities) != n - 1:
            raise ValueError(f"expected {n - 1} multiplicities")
        w = cls.zero(n)
        for d, a in enumerate(multiplicities, start=1):
            w = w + a * fundamental_weight(n, d)
        return w

    def fundamental_coords(self) -> tuple[int, ...]:
        """Coefficients ``a_d`` with ``self = sum a_d w_d``."""
        c = self.coords
        return tuple(c[self.n - d] - c[self.n - d - 1] for d in range(1, self.n))

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.fundamental_coords())

    def star(self) -> "Weight":
        return weight_star(self)

    def _check(self, other: "Weight") -> None:
        if not isinstance(other, Weight) or other.n != self.n:
            raise ValueError("weights for different n")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.n, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "Weight":
        return Weight(self.n, tuple(k * a for a in self.coords))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def fundamental_weight(n: int, d: int) -> Weight:
    if not 1 <= d <= n - 1:
        raise ValueError(f"fundamental weight index {d} outside [1, {n - 1}]")
    return Weight(n, (0,) * (n - d) + (1,) * d)


def weight_star(w: Weight) -> Weight:
    """``-w0(w)``: reverse the eps-coordinates and negate."""
    return Weight(w.n, tuple(-a for a in reversed(w.coords)))


def positive_roots(n: int) -> list[tuple[int, ...]]:
    """``eps_i - eps_j`` for ``i > j`` as integer coordinate vectors."""
    roots = []
    for i in range(1, n + 1):
        for j in range(1, i):
            v = [0] * n
            v[i - 1] += 1
            v[j - 1] -= 1
            roots.append(tuple(v))
    return roots


def sigma(n: int) -> tuple[int, ...]:
    """Sum of the positive roots, ``(1-n, 3-n, ..., n-1)``."""
    return tuple(2 * k - n - 1 for k in range(1, n + 1))


def highest_root(n: int) -> tuple[int, ...]:
    return tuple([-1] + [0] * (n - 2) + [1])


@lru_cache(maxsize=None)
def _inverse_cartan_gram(n: int) -> tuple[tuple[Fraction, ...], ...]:
    # Cartan basis h_k = E_kk - E_{k+1,k+1}; Gram entries Phi(h_k, h_l) = 2n tr(h_k h_l)
    r = n - 1
    gram = [[Fraction(0)] * r for _ in range(r)]
    for k in range(r):
        gram[k][k] = Fraction(4 * n)
        if k + 1 < r:
            gram[k][k + 1] = gram[k + 1][k] = Fraction(-2 * n)
    red, _ = linalg.rref([row + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(gram)])
    return tuple(tuple(row[r:]) for row in red)


def _on_cartan(n: int, v: Sequence[int | Fraction]) -> list[Fraction]:
    # values of the functional v on h_1, ..., h_{n-1}
    return [Fraction(v[k]) - Fraction(v[k + 1]) for k in range(n - 1)]


def killing_pair_vectors(n: int, u: Sequence[int | Fraction], v: Sequence[int | Fraction]) -> Fraction:
    """Dual Killing form on raw eps-coordinate vectors (no dominance or class checks)."""
    if len(u) != n or len(v) != n:
        raise ValueError("coordinate vectors do not match n")
    inv = _inverse_cartan_gram(n)
    a, b = _on_cartan(n, u), _on_cartan(n, v)
    return sum((a[k] * inv[k][l] * b[l] for k in range(n - 1) for l in range(n - 1)), Fraction(0))


def killing_pair(n: int, lam: Weight, mu: Weight) -> Fraction:
    """The Killing form transported to weights, by inverting the Cartan Gram matrix."""
    if lam.n != n or mu.n != n:
        raise ValueError("weight does not belong to SL_n for this n")
    return killing_pair_vectors(n, lam.coords, mu.coords)


def c_lambda(n: int, lam: Weight) -> Fraction:
    """``Phi(lam + sigma, lam) + Phi(lam* + sigma, lam*)`` for dominant ``lam``."""
    if lam.n != n:
        raise ValueError("weight does not belong to SL_n for this n")
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    s = sigma(n)
    total = Fraction(0)
    for w in (lam, weight_star(lam)):
        total += killing_pair_vectors(n, [a + b for a, b in zip(w.coords, s)], w.coords)
    return total


def weyl_dim(n: int, lam: Weight) -> int:
    """Dimension of the simple module with highest weight ``lam`` (Weyl's formula)."""
    if lam.n != n:
        raise ValueError("weight does not belong to SL_n for this n")
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    s = sigma(n)
    # pair with 2*lam + sigma and sigma = 2*rho to stay integral
    shifted = [2 * a + b for a, b in zip(lam.coords, s)]
    value = Fraction(1)
    for alpha in positive_roots(n):
        value *= killing_pair_vectors(n, shifted, alpha) / killing_pair_vectors(n, s, alpha)
    if value.denominator != 1:
        raise ArithmeticError(f"Weyl formula returned non-integer {value}")
    return int(value)


def torus_weight_of(n: int, p: Polynomial) -> Weight | None:
    """Right-torus weight of ``p`` (``x_ij -> a_j x_ij``), or ``None`` if ``p`` has none."""
    if p.table != matrix_table(n):
        raise ValueError("polynomial is not over the matrix coordinates of SL_n")
    if p.is_zero():
        raise ValueError("the zero polynomial has no weight")
    found: Weight | None = None
    for exp in p.terms:
        cols = [sum(exp[(i - 1) * n + (j - 1)] for i in range(1, n + 1)) for j in range(1, n + 1)]
        w = Weight(n, tuple(cols))
        if found is None:
            found = w
        elif w != found:
            return None
    return found


def num_index_sequences(n: int, d: int) -> int:
    return comb(n, d)


def pres_variables(n: int) -> list[PresVar]:
    """Presentation variables: all ``x+`` then all ``x-``, each by ``d`` then lexicographically."""
    return [PresVar(sign, seq) for sign in SIGNS for d in range(1, n) for seq in index_sequences(n, d)]

