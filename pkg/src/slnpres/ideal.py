"""Multivariate division, Buchberger's algorithm, membership and elimination.

The engine works on plain ``{exponent tuple: Fraction}`` dicts.  Reducers are
kept monic so a reduction step is a single scaled subtraction, and the terms of
the dividend are visited in descending order through a heap of sort keys.

Pair selection is the normal strategy (smallest lcm degree, ties by pair
index) with the Gebauer-Moeller criteria, so results are reproducible.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from slnpres.exactpoly import Polynomial, VarTable, VarTableMismatch
from slnpres.orders import Exponent, MonomialOrder

log = logging.getLogger(__name__)

Terms = dict[Exponent, Fraction]
KeyFn = Callable[[Exponent], tuple]


def _mask(exp: Exponent) -> int:
    m = 0
    for i, e in enumerate(exp):
        if e:
            m |= 1 << i
    return m


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class _Reducer:
    """A monic polynomial split into leading exponent and tail."""

    __slots__ = ("lt", "mask", "support", "tail", "terms")

    def __init__(self, terms: Terms, key: KeyFn):
        lt = min(terms, key=key)
        c = terms[lt]
        self.terms = {e: v / c for e, v in terms.items()}
        self.lt = lt
        self.mask = _mask(lt)
        self.support = [(i, e) for i, e in enumerate(lt) if e]
        self.tail = [(e, v) for e, v in self.terms.items() if e != lt]

    def divides(self, exp: Exponent, emask: int) -> bool:
        if self.mask & ~emask:
            return False
        return all(exp[i] >= e for i, e in self.support)


def _find_reducer(exp: Exponent, reducers: Sequence[_Reducer]) -> _Reducer | None:
    emask = _mask(exp)
    for g in reducers:
        if g.divides(exp, emask):
            return g
    return None


def _reduce(terms: Terms, reducers: Sequence[_Reducer], key: KeyFn, full: bool = True) -> Terms:
    """Remainder of ``terms`` on division by ``reducers``.

    With ``full=False`` only the leading term is reduced (top reduction) and
    the remaining tail is returned untouched once the lead is irreducible.
    """
    f = dict(terms)
    heap = [(key(e), e) for e in f]
    heapq.heapify(heap)
    rem: Terms = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = f.pop(e, None)
        if c is None:
            continue
        g = _find_reducer(e, reducers)
        if g is None:
            rem[e] = c
            if not full:
                rem.update(f)
                return rem
            continue
        m = _sub(e, g.lt)
        for ge, gc in g.tail:
            ne = _add(m, ge)
            v = f.get(ne)
            if v is None:
                f[ne] = -c * gc
                heapq.heappush(heap, (key(ne), ne))
            else:
                v -= c * gc
                if v:
                    f[ne] = v
                else:
                    del f[ne]
    return rem


def _check_tables(polys: Iterable[Polynomial]) -> VarTable:
    tables = {p.table for p in polys}
    if len(tables) != 1:
        raise VarTableMismatch("polynomials live over different variable tables")
    return tables.pop()


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = True

    @property
    def table(self) -> VarTable:
        return self.generators[0].table

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, list(self.generators), self.order)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``p`` under multivariate division by ``basis``.

    No term of the result is divisible by a leading term of ``basis``.  Zero
    basis elements are ignored.
    """
    if not basis:
        raise ValueError("normal_form needs a nonempty basis")
    table = _check_tables([p, *basis])
    order = order or MonomialOrder.degrevlex()
    key = order.key_function(len(table))
    reducers = [_Reducer(dict(g.terms), key) for g in basis if g]
    if not reducers:
        return p
    return Polynomial(table, _reduce(dict(p.terms), reducers, key))


class _Buchberger:
    def __init__(self, key: KeyFn):
        self.key = key
        self.polys: list[_Reducer] = []
        self.active: list[int] = []
        self.pairs: dict[tuple[int, int], Exponent] = {}
        self.reductions = 0

    def reducers(self) -> list[_Reducer]:
        return [self.polys[i] for i in self.active]

    def update(self, h_terms: Terms) -> None:
        """Insert a new element with the Gebauer-Moeller pair criteria."""
        h = _Reducer(h_terms, self.key)
        k = len(self.polys)
        self.polys.append(h)
        lth = h.lt

        cands = []
        for i in self.active:
            lti = self.polys[i].lt
            cands.append((i, _lcm(lti, lth), not (self.polys[i].mask & h.mask)))

        # chain criterion among the new pairs (Becker-Weispfenning UPDATE)
        kept: list[tuple[int, Exponent, bool]] = []
        for idx, (i, l, coprime) in enumerate(cands):
            if coprime or not (any(_divides(l2, l) for _, l2, _ in cands[idx + 1:])
                               or any(_divides(l2, l) for _, l2, _ in kept)):
                kept.append((i, l, coprime))
        new_pairs = {(i, k): l for i, l, coprime in kept if not coprime}

        # old pairs made redundant by the new leading term
        survivors = {}
        for (i, j), l in self.pairs.items():
            if (_divides(lth, l) and _lcm(self.polys[i].lt, lth) != l
                    and _lcm(self.polys[j].lt, lth) != l):
                continue
            survivors[(i, j)] = l
        survivors.update(new_pairs)
        self.pairs = survivors
        self.active = [i for i in self.active if not _divides(lth, self.polys[i].lt)] + [k]

    def select(self) -> tuple[int, int]:
        return min(self.pairs, key=lambda ij: (sum(self.pairs[ij]), ij))

    def spoly(self, i: int, j: int) -> Terms:
        gi, gj = self.polys[i], self.polys[j]
        l = self.pairs[(i, j)]
        mi, mj = _sub(l, gi.lt), _sub(l, gj.lt)
        out: Terms = {}
        for e, c in gi.tail:
            ne = _add(mi, e)
            out[ne] = out.get(ne, Fraction(0)) + c
        for e, c in gj.tail:
            ne = _add(mj, e)
            out[ne] = out.get(ne, Fraction(0)) - c
        return {e: c for e, c in out.items() if c}

    def run(self, gens: list[Terms]) -> list[Terms]:
        for g in gens:
            r = _reduce(g, self.reducers(), self.key) if self.active else g
            if r:
                self.update(r)
        while self.pairs:
            i, j = self.select()
            s = self.spoly(i, j)
            del self.pairs[(i, j)]
            self.reductions += 1
            if not s:
                continue
            h = _reduce(s, self.reducers(), self.key)
            if h:
                self.update(h)
                log.debug("basis grew to %d active elements, %d pairs pending",
                          len(self.active), len(self.pairs))
        return self._interreduce()

    def _interreduce(self) -> list[Terms]:
        gs = self.reducers()
        # minimal basis: drop elements whose leading term another one divides
        minimal = []
        for idx, g in enumerate(gs):
            if any(_divides(h.lt, g.lt) and (h.lt != g.lt or jdx < idx)
                   for jdx, h in enumerate(gs) if jdx != idx):
                continue
            minimal.append(g)
        out = []
        for idx, g in enumerate(minimal):
            others = [h for jdx, h in enumerate(minimal) if jdx != idx]
            tail = _reduce(dict(g.tail), others, self.key) if others else dict(g.tail)
            tail[g.lt] = Fraction(1)
            out.append(tail)
        out.sort(key=lambda t: self.key(min(t, key=self.key)))
        return out


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Generators come out monic and sorted by descending leading monomial.
    """
    nonzero = [g for g in gens if g]
    if not nonzero:
        raise ValueError("cannot compute a Groebner basis of the zero ideal")
    table = _check_tables(nonzero)
    order = order or MonomialOrder.degrevlex()
    key = order.key_function(len(table))
    engine = _Buchberger(key)
    basis = engine.run([dict(g.terms) for g in nonzero])
    log.debug("buchberger: %d S-polynomials, %d generators", engine.reductions, len(basis))
    return GroebnerBasis(tuple(Polynomial(table, t) for t in basis), order, True)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    order = order or MonomialOrder.degrevlex()
    (ef, cf), (eg, cg) = f.leading_term(order), g.leading_term(order)
    l = _lcm(ef, eg)
    return f.mul_monomial(_sub(l, ef), 1 / cf) - g.mul_monomial(_sub(l, eg), 1 / cg)


def satisfies_buchberger_criterion(gb: GroebnerBasis) -> bool:
    """Post-hoc check: every S-polynomial of ``gb`` reduces to zero."""
    gens = list(gb.generators)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not normal_form(s_polynomial(gens[i], gens[j], gb.order), gens, gb.order).is_zero():
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    """Every generator monic and no term divisible by another generator's leading term."""
    leads = [g.leading_term(gb.order) for g in gb.generators]
    if any(c != 1 for _, c in leads):
        return False
    for i, g in enumerate(gb.generators):
        for e in g.terms:
            if any(_divides(leads[j][0], e) for j in range(len(leads)) if j != i):
                return False
    return True


def ideal_member(p: Polynomial, gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    if p.is_zero():
        return True
    return buchberger(gens, order).contains(p)


def eliminate(gens: Sequence[Polynomial], drop: Iterable[int], inner: str = "degrevlex") -> list[Polynomial]:
    """Reduced Groebner basis of the ideal intersected with the subring on the kept variables.

    Uses a block order with the ``drop`` variables in the top block.  The
    returned polynomials stay over the input table and involve only kept
    variables; they form a reduced basis for the ``inner`` order on that subring.
    """
    nonzero = [g for g in gens if g]
    if not nonzero:
        raise ValueError("cannot eliminate from the zero ideal")
    table = _check_tables(nonzero)
    drop_set = set(drop)
    keep = [v for v in range(len(table)) if v not in drop_set]
    order = MonomialOrder.block(sorted(drop_set), keep, inner)
    gb = buchberger(nonzero, order)
    return [g for g in gb.generators if not (g.variables() & drop_set)]
