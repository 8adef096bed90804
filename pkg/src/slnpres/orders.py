"""Monomial orders on dense exponent tuples.

Every order exposes ``key(exp)``: sorting exponent tuples ascending by this key
lists the monomials in *descending* order, so the leading monomial of a set is
``min(exps, key=order.key)``.  Variable 0 is the largest variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

Exponent = tuple[int, ...]

_KINDS = ("lex", "degrevlex", "block")
_INNER = ("lex", "degrevlex")


def _lex_key(exp: Sequence[int]) -> tuple:
    return tuple(-e for e in exp)


def _degrevlex_key(exp: Sequence[int]) -> tuple:
    return (-sum(exp),) + tuple(reversed(exp))


_INNER_KEYS: dict[str, Callable[[Sequence[int]], tuple]] = {
    "lex": _lex_key,
    "degrevlex": _degrevlex_key,
}


@dataclass(frozen=True)
class MonomialOrder:
    """A total, multiplicative order on monomials.

    ``kind="block"`` ranks monomials first by the ``eliminate`` variables (inner
    order ``inner``), then by the ``keep`` variables.  Any monomial involving an
    eliminated variable is larger than every monomial free of them.
    """

    kind: str = "degrevlex"
    eliminate: tuple[int, ...] = ()
    keep: tuple[int, ...] = ()
    inner: str = "degrevlex"

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.inner not in _INNER:
            raise ValueError(f"unknown inner order {self.inner!r}")
        if self.kind == "block":
            if set(self.eliminate) & set(self.keep):
                raise ValueError("eliminate and keep blocks overlap")
            if not self.eliminate:
                raise ValueError("block order needs a nonempty eliminate block")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def degrevlex(cls) -> "MonomialOrder":
        return cls("degrevlex")

    @classmethod
    def block(cls, eliminate: Iterable[int], keep: Iterable[int],
              inner: str = "degrevlex") -> "MonomialOrder":
        return cls("block", tuple(sorted(eliminate)), tuple(sorted(keep)), inner)

    def key_function(self, nvars: int) -> Callable[[Exponent], tuple]:
        """Return the sort key for exponent tuples of length ``nvars``."""
        if self.kind == "lex":
            return _lex_key
        if self.kind == "degrevlex":
            return _degrevlex_key
        covered = set(self.eliminate) | set(self.keep)
        if any(v >= nvars for v in covered) or len(covered) != nvars:
            raise ValueError("block order does not partition the variables")
        inner = _INNER_KEYS[self.inner]
        elim, keep = self.eliminate, self.keep

        def key(exp: Exponent) -> tuple:
            return inner([exp[v] for v in elim]) + inner([exp[v] for v in keep])

        return key

    def compare(self, a: Exponent, b: Exponent) -> int:
        """Three-way comparison: 1 if ``a > b``, -1 if ``a < b``, else 0."""
        key = self.key_function(len(a))
        ka, kb = key(a), key(b)
        if ka == kb:
            return 0
        return 1 if ka < kb else -1

    def __str__(self) -> str:
        if self.kind != "block":
            return self.kind
        return f"block({self.inner}:{list(self.eliminate)} > {self.inner}:{list(self.keep)})"
