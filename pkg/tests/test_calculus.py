import pytest

from ftczin import corpus
from ftczin.calculus import (
    LAW_NAMES,
    augmentation,
    check_action,
    check_augmented,
    check_ftc1,
    check_ftc2,
    check_ftc2_equivalence,
    check_ftc_morphism,
    check_hybrid_rb,
    check_kernel_linearity,
    check_leibniz,
    check_linearity,
    check_rota_baxter,
    hurwitz_pair,
    hurwitz_shift_left,
    hurwitz_shift_right,
    law_suite,
    poly_derivation,
    poly_integration,
    poly_pair,
    shuffle_pair,
    zero_operator,
)
from ftczin.carriers import HurwitzAlgebra, HurwitzSeries, PolynomialRing, ScalarAlgebra, TensorSum
from ftczin.equivalence import identity_ftc
from ftczin.laws import HOLDS, VIOLATED
from ftczin.rings import QQ, ZZ, NotInvertibleError, Zmod

FAST = {"samples": 80}
A = PolynomialRing(QQ)
HZ = HurwitzAlgebra(ScalarAlgebra(ZZ))


def hs(*xs):
    return HurwitzSeries([ZZ.coerce(x) for x in xs], HZ.base)


def test_polynomial_operators():
    D, P = poly_derivation(), poly_integration()
    assert D(A.monomial(3)) == A.parse("3*x^2")
    assert P(A.monomial(3)) == A.parse("1/4*x^4")
    assert D(A.one()) == A.zero()


def test_integration_needs_inverses():
    P = poly_integration(Zmod(3))
    B = P.domain
    assert P(B.monomial(1)) == B.parse("2*x^2")  # 1/2 = 2 mod 3
    with pytest.raises(NotInvertibleError):
        P(B.monomial(2))


def test_hurwitz_shifts():
    D, P = hurwitz_shift_left(HZ), hurwitz_shift_right(HZ)
    assert D(hs(1, 2, 3)) == hs(2, 3)
    assert P(hs(1, 2, 3)) == hs(0, 1, 2, 3)
    assert check_ftc1(hurwitz_pair(ScalarAlgebra(ZZ)), samples=200).holds


def test_shuffle_pair_operators():
    pair = shuffle_pair(3)
    one = pair.algebra.one()
    a = TensorSum.word(0)
    assert pair.D(pair.algebra.add(one, a)) == a
    assert pair.P(TensorSum.word(0, 1)) == TensorSum.word(0, 1)
    assert pair.action(one, a) == a


def test_constant_projector():
    assert poly_pair().E(A.parse("x^2 + 3")) == A.parse("3")
    pair = hurwitz_pair(ScalarAlgebra(ZZ))
    assert pair.E(hs(1, 2, 3)) == hs(1)
    assert pair.E(pair.algebra.one()) == pair.algebra.one()


def test_operators_are_linear():
    for op in (poly_derivation(), poly_integration(), hurwitz_shift_left(HZ), shuffle_pair().D):
        assert check_linearity(op, **FAST).holds


@pytest.mark.parametrize("name", ["poly-ftc", "hurwitz-ftc", "hurwitz-ftc-z2", "shuffle-ftc"])
def test_reference_pairs_pass_every_law(name):
    pair = corpus.build_ftc(name)
    reports = law_suite(pair, **FAST)
    assert [r.law for r in reports] == list(LAW_NAMES)
    assert all(r.holds for r in reports), [str(r) for r in reports if not r.holds]
    assert check_action(pair, **FAST).holds
    assert check_kernel_linearity(pair, **FAST).holds


def test_leibniz_direct_value():
    D = poly_derivation()
    x, x2 = A.monomial(1), A.monomial(2)
    assert D(x * x2) == x * D(x2) + x2 * D(x) == A.parse("3*x^2")


def test_rota_baxter_examples():
    P = poly_integration()
    one = A.one()
    assert P(one) * P(one) == P(P(one) * one) + P(P(one) * one)
    z2 = HurwitzAlgebra(ScalarAlgebra(Zmod(2)))
    assert check_rota_baxter(hurwitz_shift_right(z2), z2.mul).holds
    assert check_rota_baxter(zero_operator(A, A), A.mul, **FAST).holds


def test_lowering_mutant_fails_leibniz_at_x_x():
    pair = corpus.build_ftc("poly-derivation-lowering")
    report = check_leibniz(pair.D, pair.action, **FAST)
    assert report.status == VIOLATED
    assert report.witness.inputs == {"a": "x", "b": "x"}
    assert report.reevaluate()


def test_zero_integration_separates_ftc1_from_ftc2():
    pair = corpus.build_ftc("zero-integration")
    ftc1 = check_ftc1(pair, **FAST)
    assert ftc1.status == VIOLATED and ftc1.witness.inputs == {"m": "1"}
    assert ftc1.reevaluate()
    assert check_ftc2(pair, **FAST).holds


def test_derivation_with_zero_integration():
    pair = corpus.build_ftc("derivation-zero-integration")
    ftc2 = check_ftc2(pair, **FAST)
    assert ftc2.status == VIOLATED
    assert ftc2.witness.clause == "D(E(a)) = 0" and ftc2.witness.inputs == {"a": "x"}
    eq = check_ftc2_equivalence(pair, **FAST)
    assert eq.holds and eq.details == {"ftc2": VIOLATED, "hybrid-rota-baxter": VIOLATED}


def test_unscaled_mutant_fails_hybrid_with_recorded_witness():
    pair = corpus.build_ftc("poly-integration-unscaled")
    report = check_hybrid_rb(pair, **FAST)
    assert report.status == VIOLATED and report.reevaluate()


@pytest.mark.parametrize("name", list(corpus.FTC_INSTANCES) + list(corpus.MUTATIONS))
def test_corpus_expectations(name):
    entry = corpus.FTC_INSTANCES.get(name) or corpus.MUTATIONS[name]
    reports = law_suite(corpus.build_ftc(name), **FAST)
    violated = {r.law for r in reports if not r.holds}
    assert violated == set(entry.expected_violations)
    for r in reports:
        # violated iff a witness exists, and the witness reproduces
        assert (r.witness is not None) == (r.status == VIOLATED)
        if r.witness:
            assert r.reevaluate()


@pytest.mark.parametrize("name", list(corpus.FTC_INSTANCES) + list(corpus.MUTATIONS))
def test_derivation_ftc1_and_hybrid_imply_rota_baxter(name):
    # Leibniz is part of the premise: the Cauchy mutant has FTC1 and hybrid but not RB
    reports = {r.law: r for r in law_suite(corpus.build_ftc(name), **FAST)}
    if all(reports[k].holds for k in ("leibniz", "ftc1", "hybrid-rota-baxter")):
        assert reports["rota-baxter"].holds


def test_augmented_examples():
    pair = poly_pair()
    assert check_augmented(pair, **FAST).holds
    assert augmentation(pair)(A.parse("x^2 + 3")) == 3
    assert check_augmented(shuffle_pair(), **FAST).holds
    dual = corpus.build_ftc("hurwitz-dual-numbers")
    report = check_augmented(dual, **FAST)
    assert report.status == VIOLATED
    assert "y" in report.witness.lhs


def test_morphism_checks():
    pair = shuffle_pair()
    ident = identity_ftc(pair)
    assert check_ftc_morphism(ident.f, ident.g, pair, pair, **FAST).holds
    bad = corpus.sign_mutation(pair)
    report = check_ftc_morphism(bad.f, bad.g, pair, pair, **FAST)
    assert report.status == VIOLATED and report.reevaluate()


def test_reports_serialise():
    report = check_ftc1(corpus.build_ftc("zero-integration"), samples=5)
    data = report.to_dict()
    assert data["status"] == VIOLATED and data["witness"]["inputs"] == {"m": "1"}
    assert set(data) == {"law", "status", "samples", "seed", "witness"}
    assert '"law": "ftc1"' in report.to_json()
    assert check_ftc1(poly_pair(), samples=5).to_dict()["status"] == HOLDS
