import dataclasses
import json
from fractions import Fraction

import pytest

from slnpres.exactpoly import Polynomial
from slnpres.presgen import (TaggedRelation, build_presentation, build_vartable, plucker_relations,
                             sl2_relation_closed)
from slnpres.slnalg import MINUS, PLUS, IndexSeq, PresVar
from slnpres.verify import (CHECK_NAMES, Caps, VerificationReport, check_bidegree_dims,
                            check_casimir, check_invariant_monomials, check_kernel_equality,
                            check_kernel_projector, check_relations_vanish, check_surjectivity,
                            find_preimage, run_suite, suite_failed)


def flip_first_term(p: Polynomial) -> Polynomial:
    """Negate the leading coefficient only."""
    exp, c = p.leading_term()
    return p - Polynomial(p.table, {exp: 2 * c})


def pvar(n, sign, *entries):
    return Polynomial.var(build_vartable(n), PresVar(sign, IndexSeq(n, entries)))


# -- relations vanish ------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_relations_vanish_pass(n):
    r = check_relations_vanish(n)
    assert r.verdict == "pass"


def test_relations_vanish_negative_control():
    pres = build_presentation(3)
    rels = list(pres.relations)
    rels[0] = TaggedRelation(rels[0].tag, flip_first_term(rels[0].poly))
    r = check_relations_vanish(3, dataclasses.replace(pres, relations=tuple(rels)))
    assert r.verdict == "fail" and r.witness


def test_relations_vanish_cap():
    assert check_relations_vanish(5, caps=Caps(max_n=4)).verdict == "skipped"


# -- kernel equality -------------------------------------------------------------------

def test_kernel_equality_n2():
    r = check_kernel_equality(2)
    assert r.verdict == "pass"
    assert r.witness == "x-_1*x+_2 - x-_2*x+_1 - 1"


def test_kernel_equality_gated():
    r = check_kernel_equality(3)
    assert r.verdict == "skipped" and "allow_expensive" in r.reason


def test_kernel_equality_n3_opt_in():
    assert check_kernel_equality(3, caps=Caps(allow_expensive=True)).verdict == "pass"


def test_kernel_equality_negative_controls():
    # dropping the SL2-type relation leaves the zero ideal
    assert check_kernel_equality(2, relations=[]).verdict == "fail"
    pres = build_presentation(3)
    no_sl2 = pres.relation_polys("plucker") + pres.relation_polys("sl2")[:1]
    r = check_kernel_equality(3, relations=no_sl2, caps=Caps(allow_expensive=True))
    assert r.verdict == "fail" and r.witness
    flipped = [flip_first_term(p) for p in build_presentation(2).relation_polys()]
    assert check_kernel_equality(2, relations=flipped).verdict == "fail"


# -- bidegree dimensions and projector ---------------------------------------------------

@pytest.mark.parametrize("n,sign,p,q,dim,rank,wd", [
    (3, PLUS, 1, 2, 9, 1, 8),
    (4, PLUS, 2, 2, 21, 1, 20),
    (2, PLUS, 1, 1, 3, 0, 3),
    (3, MINUS, 1, 2, 9, 1, 8),
])
def test_bidegree_dims_examples(n, sign, p, q, dim, rank, wd):
    r = check_bidegree_dims(n, sign, p, q)
    assert r.verdict == "pass"
    assert (r.params["dim"], r.params["rank"], r.params["weyl_dim"]) == (dim, rank, wd)


def test_bidegree_dims_negative_control():
    assert check_bidegree_dims(3, PLUS, 1, 2, relations=[]).verdict == "fail"
    fam = plucker_relations(4, PLUS, 1, 3)
    assert check_bidegree_dims(4, PLUS, 1, 3, relations=fam[1:]).verdict == "fail"


@pytest.mark.parametrize("n,sign,p,q,rank", [
    (3, PLUS, 1, 2, 1), (4, PLUS, 2, 2, 1), (2, PLUS, 1, 1, 0), (3, MINUS, 1, 2, 1),
])
def test_kernel_projector_examples(n, sign, p, q, rank):
    r = check_kernel_projector(n, sign, p, q)
    assert r.verdict == "pass"
    assert r.params["image_rank"] == rank


def test_kernel_projector_negative_control():
    fam = plucker_relations(3, PLUS, 1, 2)
    assert check_kernel_projector(3, PLUS, 1, 2, relations=[flip_first_term(fam[0])]).verdict == "fail"
    assert check_kernel_projector(3, PLUS, 1, 2, relations=[]).verdict == "fail"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dims_and_projector_agree_on_rank(n):
    for sign in (PLUS, MINUS):
        for p in range(1, n):
            for q in range(p, n):
                a = check_bidegree_dims(n, sign, p, q)
                b = check_kernel_projector(n, sign, p, q)
                assert a.params["rank"] == b.params["image_rank"] == b.params["relation_rank"]


# -- Casimir and invariants ----------------------------------------------------------

@pytest.mark.parametrize("n,d,c", [(2, 1, "3/4"), (3, 1, "8/9"), (3, 2, "8/9")])
def test_casimir_examples(n, d, c):
    r = check_casimir(n, d)
    assert r.verdict == "pass" and r.params["c"] == c


def test_casimir_negative_controls():
    s = sl2_relation_closed(3, 1)
    assert check_casimir(3, 1, s=flip_first_term(s)).verdict == "fail"
    # right eigenvector, wrong normalization
    r = check_casimir(3, 1, s=s.scale(2))
    assert r.verdict == "fail" and "s(e,e) = 2" in r.witness


def test_invariant_monomials():
    assert check_invariant_monomials(2, 2).verdict == "pass"
    r = check_invariant_monomials(3, 2)
    assert r.verdict == "pass" and r.params["products"] == 5


def test_invariant_monomials_negative_controls():
    s1, s2 = sl2_relation_closed(3, 1), sl2_relation_closed(3, 2)
    r = check_invariant_monomials(3, 1, generators=[s1 * pvar(3, PLUS, 1), s2])
    assert r.verdict == "fail" and "not invariant" in r.witness
    # invariant but wrongly normalized: not in the kernel
    r = check_invariant_monomials(3, 1, generators=[s1.scale(2), s2])
    assert r.verdict == "fail" and "phi(" in r.witness


# -- surjectivity --------------------------------------------------------------------

def test_surjectivity_n2_degree_one():
    names = {(1, 1): "x-_1", (1, 2): "x+_1", (2, 1): "x-_2", (2, 2): "x+_2"}
    for (i, j), name in names.items():
        r = check_surjectivity(2, i, j, 1)
        assert r.verdict == "pass" and r.witness == name


def test_surjectivity_n3():
    r = check_surjectivity(3, 1, 2, 2)
    assert r.verdict == "pass"
    assert find_preimage(3, 1, 2, 2).degree() == 2
    r1 = check_surjectivity(3, 1, 2, 1)
    assert r1.verdict == "skipped" and "degree <= 1" in r1.reason


def test_surjectivity_negative_control():
    wrong = pvar(2, PLUS, 1)
    r = check_surjectivity(2, 1, 1, 1, preimage=wrong)
    assert r.verdict == "fail" and r.witness
    with pytest.raises(ValueError):
        find_preimage(2, 3, 1, 1)


# -- suite and reports -----------------------------------------------------------------

def test_suite_n2_all_pass():
    reports = run_suite(2)
    assert reports and all(r.verdict == "pass" for r in reports)
    assert not suite_failed(reports)
    assert [r.check for r in reports][0] == "relations-vanish"


def test_suite_n3_kernel_skipped():
    reports = run_suite(3)
    kinds = {r.check: r.verdict for r in reports if r.verdict != "pass"}
    assert kinds == {"kernel-equality": "skipped"}
    assert not suite_failed(reports)


def test_suite_is_deterministic():
    a = [r.to_json(timing=False) for r in run_suite(3, ["casimir", "bidegree-dims"])]
    b = [r.to_json(timing=False) for r in run_suite(3, ["bidegree-dims", "casimir"])]
    assert a == b
    assert json.loads(a[0])["check"] == "bidegree-dims"


def test_suite_unknown_check():
    with pytest.raises(ValueError, match="valid: " + ", ".join(CHECK_NAMES)):
        run_suite(2, ["nope"])


def test_report_invariants():
    with pytest.raises(ValueError):
        VerificationReport("casimir", {}, "fail")
    with pytest.raises(ValueError):
        VerificationReport("casimir", {}, "maybe")
    r = VerificationReport("casimir", {"n": 2}, "pass", timing=0.5)
    assert "timing" not in json.loads(r.to_json(timing=False))


def test_caps_must_be_positive():
    with pytest.raises(ValueError):
        Caps(max_n=0)
    assert Caps(allow_expensive=True).elimination_limit == 4
    assert Caps().elimination_limit == 2


def test_skipped_reports_for_large_n():
    assert all(r.verdict == "skipped" for r in run_suite(5, ["casimir"], Caps(max_n=4)))


def test_fraction_params_are_strings():
    r = check_casimir(2, 1)
    assert Fraction(r.params["c"]) == Fraction(3, 4)
