"""Canonical presentation of the coordinate ring of SL_n, with exact checks."""

from slnpres.exactpoly import Polynomial, VarTable, canonical_text
from slnpres.orders import MonomialOrder

__all__ = ["Polynomial", "VarTable", "MonomialOrder", "canonical_text"]
__version__ = "0.1.0"
