from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from slnpres.exactpoly import Polynomial, VarTable

XYZ = VarTable(["x", "y", "z"])


@st.composite
def polynomials(draw, table=XYZ, max_terms=4, max_exp=2, max_coef=5):
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        exp = tuple(draw(st.integers(0, max_exp)) for _ in range(len(table)))
        num = draw(st.integers(-max_coef, max_coef))
        den = draw(st.integers(1, 3))
        terms[exp] = terms.get(exp, Fraction(0)) + Fraction(num, den)
    return Polynomial(table, terms)


def sym_vars(table):
    return sympy.symbols([f"v{i}" for i in range(len(table))])


def to_sympy(p: Polynomial):
    xs = sym_vars(p.table)
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        mono = sympy.Rational(c.numerator, c.denominator)
        for v, e in zip(xs, exp):
            mono *= v ** e
        expr += mono
    return sympy.expand(expr)


def from_sympy(expr, table) -> Polynomial:
    xs = sym_vars(table)
    poly = sympy.Poly(sympy.expand(expr), *xs)
    terms = {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}
    return Polynomial(table, terms)


@pytest.fixture
def xyz():
    return XYZ
