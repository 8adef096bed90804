from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import XYZ, from_sympy, polynomials, to_sympy
from slnpres.exactpoly import (MissingAssignment, Polynomial, VarTable, VarTableMismatch,
                               apply_derivation, canonical_text, coefficient_rows, evaluate,
                               parse_text, substitute)
from slnpres.orders import MonomialOrder
from slnpres.presgen import build_vartable, phi_map, sl2_relation_closed
from slnpres.slnalg import MINUS, IndexSeq, PresVar, determinant, identity_point, matrix_table, matrix_var

X, Y, Z = (Polynomial.var(XYZ, v) for v in "xyz")


def test_zero_and_constants():
    zero = Polynomial.zero(XYZ)
    assert zero.is_zero() and not zero and zero.degree() == -1
    assert Polynomial.constant(XYZ, 0) == zero
    assert Polynomial.constant(XYZ, Fraction(3, 2)).constant_term() == Fraction(3, 2)
    assert X - X == zero


def test_table_mismatch_is_an_error():
    other = VarTable(["x", "y"])
    with pytest.raises(VarTableMismatch):
        X + Polynomial.var(other, "x")


def test_table_rejects_duplicates():
    with pytest.raises(ValueError):
        VarTable(["a", "a"])


def test_rebase_by_descriptor():
    small = VarTable(["y", "x"])
    p = (X * X - Y).rebase(VarTable(["x", "y", "z", "w"]))
    assert canonical_text(p) == "x^2 - y"
    with pytest.raises(MissingAssignment):
        Z.rebase(small)


def test_evaluate_examples():
    t = VarTable(["x"])
    x = Polynomial.var(t, 0)
    assert evaluate(x * x + 1, {0: 2}) == 5
    assert evaluate(Polynomial.zero(t), {}) == 0
    assert evaluate(determinant(3), identity_point(3)) == 1
    with pytest.raises(MissingAssignment):
        evaluate(x, {})


def test_substitute_phi_examples():
    table = build_vartable(2)
    phi = phi_map(2)
    xm1 = Polynomial.var(table, PresVar(MINUS, IndexSeq(2, (1,))))
    assert substitute(xm1, phi) == matrix_var(2, 1, 1)
    s = sl2_relation_closed(2, 1)
    expect = matrix_var(2, 1, 1) * matrix_var(2, 2, 2) - matrix_var(2, 2, 1) * matrix_var(2, 1, 2)
    assert substitute(s, phi) == expect


def test_substitute_missing_image():
    with pytest.raises(MissingAssignment):
        substitute(X * Y, {0: X})


def test_canonical_text_examples():
    t = VarTable(["x"])
    x = Polynomial.var(t, 0)
    assert canonical_text(Polynomial.zero(t)) == "0"
    assert canonical_text(x ** 2 - 1) == "x^2 - 1"
    assert canonical_text(sl2_relation_closed(2, 1)) == "x-_1*x+_2 - x-_2*x+_1"
    assert canonical_text(x.scale(Fraction(-2, 3)) + Fraction(1, 2)) == "-2/3*x + 1/2"


def test_canonical_text_orders():
    p = X * Z + Y ** 2
    # degrevlex: y^2 > xz (smaller last exponent wins); lex: xz first
    assert canonical_text(p) == "y^2 + z*x"
    assert canonical_text(p, MonomialOrder.lex()) == "z*x + y^2"


def test_parse_text_rejects_junk():
    for bad in ("x +", "q*x", "x^0", "x^a"):
        with pytest.raises(ValueError):
            parse_text(bad, XYZ)


def test_matrix_names():
    assert matrix_table(2).names == ("x_1,1", "x_1,2", "x_2,1", "x_2,2")


def test_coefficient_rows_shape():
    cols, rows = coefficient_rows([X + Y, Y - Z])
    assert len(cols) == 3 and [sum(map(abs, r)) for r in rows] == [2, 2]


def test_derivation_d_dx():
    images = {0: Polynomial.constant(XYZ, 1)}
    assert apply_derivation(X ** 3 * Y + Z, images) == (X ** 2 * Y).scale(3)


# -- properties --------------------------------------------------------------------

@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    zero, one = Polynomial.zero(XYZ), Polynomial.constant(XYZ, 1)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + zero == p and p * one == p and p * zero == zero
    assert p - p == zero


@given(polynomials(), polynomials())
def test_arithmetic_matches_sympy(p, q):
    assert from_sympy(to_sympy(p) * to_sympy(q), XYZ) == p * q
    assert from_sympy(to_sympy(p) - to_sympy(q), XYZ) == p - q


@given(polynomials(), polynomials(), st.lists(polynomials(max_terms=3), min_size=3, max_size=3))
def test_substitute_is_ring_homomorphism(p, q, imgs):
    m = dict(enumerate(imgs))
    assert substitute(p + q, m) == substitute(p, m) + substitute(q, m)
    assert substitute(p * q, m) == substitute(p, m) * substitute(q, m)


@given(polynomials(), st.lists(polynomials(max_terms=3), min_size=3, max_size=3),
       st.lists(st.fractions(max_denominator=5).filter(lambda f: abs(f) < 10), min_size=3, max_size=3))
def test_evaluate_composes_with_substitute(p, imgs, pt):
    point = dict(enumerate(pt))
    m = dict(enumerate(imgs))
    inner = {v: evaluate(img, point) for v, img in m.items()}
    assert evaluate(substitute(p, m), point) == evaluate(p, inner)


@given(polynomials(), polynomials())
def test_canonical_text_round_trip_and_injective(p, q):
    assert parse_text(canonical_text(p), XYZ) == p
    if p != q:
        assert canonical_text(p) != canonical_text(q)


@given(polynomials(), polynomials(), st.lists(polynomials(max_terms=2), min_size=3, max_size=3))
def test_derivation_leibniz(p, q, imgs):
    m = dict(enumerate(imgs))
    assert apply_derivation(p * q, m) == apply_derivation(p, m) * q + p * apply_derivation(q, m)


@settings(max_examples=50)
@given(polynomials())
def test_sorted_terms_respect_order(p):
    for order in (MonomialOrder.degrevlex(), MonomialOrder.lex()):
        exps = [e for e, _ in p.sorted_terms(order)]
        for a, b in zip(exps, exps[1:]):
            assert order.compare(a, b) > 0
