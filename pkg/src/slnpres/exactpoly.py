"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives over a :class:`VarTable` and stores its terms as a dict
mapping dense exponent tuples (one entry per table variable) to nonzero
``Fraction`` coefficients.  The zero polynomial has no terms.

Values are immutable after construction; operations return new polynomials.
Mixing polynomials over different tables raises :class:`VarTableMismatch`;
moving between tables is always explicit (:meth:`Polynomial.rebase`).
"""

from __future__ import annotations

import operator
from fractions import Fraction
from types import MappingProxyType
from typing import Hashable, Iterable, Iterator, Mapping, Sequence, Union

from slnpres.orders import Exponent, MonomialOrder

Scalar = Union[int, Fraction]
#: Sparse view of a monomial: sorted ``(variable id, exponent)`` pairs, no zero exponents.
Monomial = tuple[tuple[int, int], ...]


class VarTableMismatch(ValueError):
    """Raised when an operation combines polynomials over different tables."""


class MissingAssignment(KeyError):
    """Raised when substitution or evaluation meets an unassigned variable."""


class VarTable:
    """Ordered variable descriptors with dense integer ids ``0..N-1``.

    Descriptors are any hashable values; ``str(descriptor)`` is the name used
    in canonical text.  Two tables are equal iff their descriptor lists are.
    """

    __slots__ = ("_descriptors", "_index", "_names", "_hash")

    def __init__(self, descriptors: Iterable[Hashable]):
        self._descriptors = tuple(descriptors)
        self._index = {d: i for i, d in enumerate(self._descriptors)}
        if len(self._index) != len(self._descriptors):
            raise ValueError("duplicate variable descriptor")
        self._names = tuple(str(d) for d in self._descriptors)
        if len(set(self._names)) != len(self._names):
            raise ValueError("variable names are not unique")
        self._hash = hash(self._descriptors)

    def __len__(self) -> int:
        return len(self._descriptors)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._descriptors)

    def __getitem__(self, var_id: int) -> Hashable:
        return self._descriptors[var_id]

    def __contains__(self, descriptor: object) -> bool:
        return descriptor in self._index

    def id_of(self, descriptor: Hashable) -> int:
        try:
            return self._index[descriptor]
        except KeyError:
            raise KeyError(f"variable {descriptor!s} not in table") from None

    def name(self, var_id: int) -> str:
        return self._names[var_id]

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, VarTable):
            return NotImplemented
        return self._hash == other._hash and self._descriptors == other._descriptors

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VarTable({list(self._names)!r})"


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.add, a, b))


def to_sparse(exp: Exponent) -> Monomial:
    """Sparse ``(var, exponent)`` form of a dense exponent tuple."""
    return tuple((v, e) for v, e in enumerate(exp) if e)


def from_sparse(mono: Iterable[tuple[int, int]], nvars: int) -> Exponent:
    exp = [0] * nvars
    for v, e in mono:
        if e <= 0:
            raise ValueError("monomial exponents must be positive")
        exp[v] += e
    return tuple(exp)


class Polynomial:
    __slots__ = ("table", "_terms", "_hash")

    def __init__(self, table: VarTable, terms: Mapping[Exponent, Scalar] | None = None):
        self.table = table
        clean: dict[Exponent, Fraction] = {}
        if terms:
            nvars = len(table)
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not match table of {nvars} variables")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, table: VarTable, terms: dict[Exponent, Fraction]) -> "Polynomial":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.table = table
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, table: VarTable) -> "Polynomial":
        return cls._raw(table, {})

    @classmethod
    def constant(cls, table: VarTable, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return cls._raw(table, {(0,) * len(table): c} if c else {})

    @classmethod
    def var(cls, table: VarTable, var: Union[int, Hashable]) -> "Polynomial":
        """The polynomial of a single variable, given by id or descriptor."""
        vid = var if isinstance(var, int) else table.id_of(var)
        if not 0 <= vid < len(table):
            raise IndexError(f"variable id {vid} out of range")
        exp = [0] * len(table)
        exp[vid] = 1
        return cls._raw(table, {tuple(exp): Fraction(1)})

    @classmethod
    def from_sparse_terms(cls, table: VarTable,
                          terms: Iterable[tuple[Scalar, Iterable[tuple[int, int]]]]) -> "Polynomial":
        acc: dict[Exponent, Fraction] = {}
        n = len(table)
        for c, mono in terms:
            exp = from_sparse(mono, n)
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(c)
        return cls(table, acc)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.table), Fraction(0))

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def variables(self) -> set[int]:
        used: set[int] = set()
        for exp in self._terms:
            used.update(v for v, e in enumerate(exp) if e)
        return used

    def sparse_terms(self) -> list[tuple[Fraction, Monomial]]:
        return [(c, to_sparse(e)) for e, c in self._terms.items()]

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending ``order`` (degrevlex by default)."""
        key = (order or MonomialOrder.degrevlex()).key_function(len(self.table))
        return sorted(self._terms.items(), key=lambda t: key(t[0]))

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or MonomialOrder.degrevlex()).key_function(len(self.table))
        exp = min(self._terms, key=key)
        return exp, self._terms[exp]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: object) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.table != self.table:
                raise VarTableMismatch("polynomials live over different variable tables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.table, other)
        return None

    def __add__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in q._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.table, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q - self

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.table)
        return Polynomial._raw(self.table, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in q._terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.table, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exp: Exponent, c: Scalar = 1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.table)
        return Polynomial._raw(self.table, {_add_exp(e, exp): v * c for e, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.table == other.table and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.table, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table, frozenset(self._terms.items())))
        return self._hash

    # -- homomorphisms ----------------------------------------------------

    def substitute(self, images: Mapping[int, "Polynomial"]) -> "Polynomial":
        return substitute(self, images)

    def evaluate(self, point: Mapping[int, Scalar]) -> Fraction:
        return evaluate(self, point)

    def rebase(self, table: VarTable, mapping: Mapping[int, int] | None = None) -> "Polynomial":
        """Re-express over ``table`` by renaming variable ids.

        Without ``mapping`` variables are matched by descriptor.
        """
        if mapping is None:
            mapping = {self_v: table._index[self.table[self_v]]
                       for self_v in self.variables() if self.table[self_v] in table}
        n = len(table)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            new = [0] * n
            for v, e in enumerate(exp):
                if e:
                    try:
                        new[mapping[v]] += e
                    except KeyError:
                        raise MissingAssignment(f"no target for variable {self.table.name(v)}") from None
            out[tuple(new)] = c
        return Polynomial._raw(table, out)

    def __str__(self) -> str:
        return canonical_text(self)

    def __repr__(self) -> str:
        return f"Polynomial({canonical_text(self)!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def substitute(p: Polynomial, images: Mapping[int, Polynomial]) -> Polynomial:
    """Apply the ring homomorphism sending variable ``v`` to ``images[v]``.

    Only variables occurring in ``p`` need images; all images must share one
    target table.
    """
    used = sorted(p.variables())
    missing = [v for v in used if v not in images]
    if missing:
        raise MissingAssignment(f"no image for variable {p.table.name(missing[0])}")
    targets = {images[v].table for v in used}
    if len(targets) > 1:
        raise VarTableMismatch("substitution images live over different tables")
    if not used:
        if images:
            target = next(iter(images.values())).table
        else:
            target = p.table
        return Polynomial.constant(target, p.constant_term())
    target = targets.pop()
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(v: int, e: int) -> Polynomial:
        key = (v, e)
        if key not in powers:
            powers[key] = images[v] if e == 1 else power(v, e - 1) * images[v]
        return powers[key]

    acc: dict[Exponent, Fraction] = {}
    for exp, c in p._terms.items():
        term = Polynomial.constant(target, c)
        for v, e in enumerate(exp):
            if e:
                term = term * power(v, e)
        for e2, c2 in term._terms.items():
            acc[e2] = acc.get(e2, Fraction(0)) + c2
    return Polynomial._raw(target, {e: c for e, c in acc.items() if c})


def evaluate(p: Polynomial, point: Mapping[int, Scalar]) -> Fraction:
    """Exact value of ``p`` at ``point`` (variable id to rational)."""
    for v in p.variables():
        if v not in point:
            raise MissingAssignment(f"no value for variable {p.table.name(v)}")
    total = Fraction(0)
    for exp, c in p._terms.items():
        val = c
        for v, e in enumerate(exp):
            if e:
                val *= Fraction(point[v]) ** e
        total += val
    return total


def apply_derivation(p: Polynomial, images: Mapping[int, Polynomial]) -> Polynomial:
    """Apply the derivation determined by ``v -> images[v]`` (missing variables map to 0)."""
    table = p.table
    acc: dict[Exponent, Fraction] = {}
    for exp, c in p._terms.items():
        for v, e in enumerate(exp):
            if not e or v not in images:
                continue
            img = images[v]
            if img.table != table:
                raise VarTableMismatch("derivation image over a different table")
            lowered = list(exp)
            lowered[v] -= 1
            lowered_t = tuple(lowered)
            scale = c * e
            for e2, c2 in img._terms.items():
                key = _add_exp(lowered_t, e2)
                acc[key] = acc.get(key, Fraction(0)) + scale * c2
    return Polynomial._raw(table, {e: c for e, c in acc.items() if c})


# -- canonical text ------------------------------------------------------------

def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(table: VarTable, exp: Exponent) -> str:
    # factors are listed from the highest variable id down
    parts = []
    for v in range(len(exp) - 1, -1, -1):
        e = exp[v]
        if e == 1:
            parts.append(table.name(v))
        elif e:
            parts.append(f"{table.name(v)}^{e}")
    return "*".join(parts)


def canonical_text(p: Polynomial, order: MonomialOrder | None = None) -> str:
    """Deterministic rendering with terms in descending ``order`` (degrevlex default).

    Coefficients print as ``num/den`` (``den`` omitted when 1); a unit
    coefficient in front of a nonconstant monomial is omitted.
    """
    if p.is_zero():
        return "0"
    out: list[str] = []
    for i, (exp, c) in enumerate(p.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_monomial(p.table, exp)
        if not mono:
            body = _format_coefficient(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coefficient(a)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if sign == "-" else body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def parse_text(text: str, table: VarTable) -> Polynomial:
    """Inverse of :func:`canonical_text` for names of ``table``.

    Accepts any term order and repeated monomials; raises ``ValueError`` with
    the offending column on malformed input.
    """
    src = text.strip()
    if src == "0":
        return Polynomial.zero(table)
    names = {name: i for i, name in enumerate(table.names)}
    n = len(table)
    acc: dict[Exponent, Fraction] = {}
    pos = 0
    sign = 1
    if src.startswith("-"):
        sign, pos = -1, 1
    while True:
        nxt_plus = src.find(" + ", pos)
        nxt_minus = src.find(" - ", pos)
        cands = [i for i in (nxt_plus, nxt_minus) if i >= 0]
        end = min(cands) if cands else len(src)
        chunk = src[pos:end]
        if not chunk:
            raise ValueError(f"empty term at column {pos}")
        coef = Fraction(sign)
        exp = [0] * n
        for fi, factor in enumerate(chunk.split("*")):
            base, _, power = factor.partition("^")
            if base in names:
                try:
                    e = int(power) if power else 1
                except ValueError:
                    raise ValueError(f"bad exponent {power!r} at column {pos}") from None
                if e <= 0:
                    raise ValueError(f"non-positive exponent at column {pos}")
                exp[names[base]] += e
            elif fi == 0 and not power:
                try:
                    coef *= Fraction(base)
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"unknown variable or coefficient {base!r} at column {pos}") from None
            else:
                raise ValueError(f"unknown variable {base!r} at column {pos}")
        key = tuple(exp)
        acc[key] = acc.get(key, Fraction(0)) + coef
        if end == len(src):
            break
        sign = 1 if src[end + 1] == "+" else -1
        pos = end + 3
    return Polynomial(table, acc)


def coefficient_rows(polys: Sequence[Polynomial],
                     order: MonomialOrder | None = None) -> tuple[list[Exponent], list[list[Fraction]]]:
    """Coefficient matrix of ``polys`` (one row each) over their joint monomial support."""
    if not polys:
        return [], []
    table = polys[0].table
    support: set[Exponent] = set()
    for p in polys:
        if p.table != table:
            raise VarTableMismatch("polynomials live over different variable tables")
        support.update(p._terms)
    key = (order or MonomialOrder.degrevlex()).key_function(len(table))
    cols = sorted(support, key=key)
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(cols)
        for e, c in p._terms.items():
            row[index[e]] = c
        rows.append(row)
    return cols, rows
