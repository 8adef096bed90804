"""Exact dense linear algebra over the rationals.

Ranks use fraction-free (Bareiss) elimination on integer matrices; solving and
null spaces use reduced row echelon form over ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by Bareiss fraction-free elimination (rows scaled to integers first)."""
    m = [r for r in _integer_rows(rows) if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            # exact division is the Bareiss invariant
            m[i] = [(p * row_i[k] - a * row_r[k]) // prev if k > c else 0 for k in range(ncols)]
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows dropped."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of ``{v : rows @ v = 0}``, one vector per free column."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` (free variables set to 0), or ``None``."""
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def same_row_space(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> bool:
    """Whether two matrices with equal column count span the same row space."""
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(list(a) + list(b)) == ra


class SparseEchelon:
    """Incremental echelon basis of sparse vectors ``{key: Fraction}`` over sortable keys.

    Each basis vector is normalized so its largest key (its pivot) has
    coefficient 1, and remembers which input labels combine into it, so
    :meth:`express` returns a combination of the inserted vectors.
    """

    def __init__(self) -> None:
        self._pivots: dict = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def _reduce(self, vec: dict, combo: dict) -> tuple[dict, dict]:
        vec, combo = dict(vec), dict(combo)
        while True:
            hits = [k for k in vec if k in self._pivots]
            if not hits:
                return vec, combo
            k = max(hits)
            c = vec[k]
            bvec, bcombo = self._pivots[k]
            for key, v in bvec.items():
                nv = vec.get(key, Fraction(0)) - c * v
                if nv:
                    vec[key] = nv
                else:
                    vec.pop(key, None)
            for lab, v in bcombo.items():
                nv = combo.get(lab, Fraction(0)) - c * v
                if nv:
                    combo[lab] = nv
                else:
                    combo.pop(lab, None)

    def add(self, vec: dict, label) -> bool:
        """Insert ``vec``; return whether it was independent of the current span."""
        red, combo = self._reduce(vec, {label: Fraction(1)})
        if not red:
            return False
        piv = max(red)
        inv = 1 / red[piv]
        self._pivots[piv] = ({k: v * inv for k, v in red.items()},
                             {k: v * inv for k, v in combo.items()})
        return True

    def express(self, vec: dict) -> dict | None:
        """Labels and coefficients combining to ``vec``, or ``None`` if outside the span."""
        red, combo = self._reduce(vec, {})
        if red:
            return None
        return {k: -v for k, v in combo.items()}
