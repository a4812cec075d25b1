import random

import pytest

from ftczin import corpus
from ftczin.calculus import LinearOperator, law_suite, poly_integration
from ftczin.carriers import FiniteAlgebra, PolynomialRing, ShuffleAlgebra, TensorSum, mixable_shuffle_product
from ftczin.constructions import (
    BoundExceededError,
    ConstructionError,
    InvalidConstructionInputError,
    InverseValidationError,
    KNotInvertibleError,
    free_rota_baxter,
    ftc_from_derivation,
    ftc_from_diff_algebra,
    ftc_from_integration,
    invert_K_graded,
)
from ftczin.linalg import SingularMatrixError, adjugate_inverse, determinant, inverse, matmul, identity
from ftczin.rings import QQ, NotInvertibleError, Zmod

FAST = {"samples": 60}
W = TensorSum.word


@pytest.mark.parametrize("ring", [QQ, Zmod(7), Zmod(12)], ids=str)
def test_inverse_matches_adjugate(ring):
    rng = random.Random(str(ring))
    checked = 0
    for _ in range(60):
        n = rng.randint(1, 4)
        m = [[ring.random(rng) for _ in range(n)] for _ in range(n)]
        if not ring.is_invertible(determinant(m, ring)):
            with pytest.raises((SingularMatrixError, NotInvertibleError)):
                inverse(m, ring)
            continue
        inv = inverse(m, ring)
        assert inv == adjugate_inverse(m, ring)
        assert matmul(m, inv, ring) == identity(n, ring)
        checked += 1
    assert checked > 10


def _shear(S: ShuffleAlgebra) -> LinearOperator:
    # degree-preserving and non-diagonal on words of length 1: [0] -> [0] + [1]
    def K(t):
        out = t
        c = t.terms.get((0,))
        if c is not None:
            out = out + W(1, coef=c, basis_size=S.basis_size, ring=S.ring)
        return out

    return LinearOperator("shear", S, S, K)


def test_graded_inverse_on_a_non_diagonal_piece():
    S = ShuffleAlgebra(2, QQ)
    K = _shear(S)
    Kinv = invert_K_graded(K, degree_bound=2)
    w0, w1 = W(0, basis_size=2), W(1, basis_size=2)
    assert Kinv(w0) == w0 - w1
    assert Kinv(K(w0 + W(0, 1, basis_size=2))) == w0 + W(0, 1, basis_size=2)
    # matches the adjugate oracle on the 2x2 block
    block = [[QQ.one(), QQ.zero()], [QQ.one(), QQ.one()]]
    oracle = adjugate_inverse(block, QQ)
    assert S.coordinates(Kinv(w0)) == {(0,): oracle[0][0], (1,): oracle[1][0]}
    with pytest.raises(BoundExceededError) as info:
        Kinv(W(0, 0, 1, basis_size=2))
    assert (info.value.degree, info.value.bound) == (3, 2)


def test_identity_K_is_its_own_inverse():
    A = PolynomialRing(QQ)
    Kinv = invert_K_graded(LinearOperator("id", A, A, lambda p: p), degree_bound=5)
    p = A.parse("x^5 - 2/3*x + 7")
    assert Kinv(p) == p


def test_K_leaving_its_degree_is_rejected():
    A = PolynomialRing(QQ)
    with pytest.raises(ConstructionError):
        invert_K_graded(LinearOperator("x·", A, A, lambda p: p * A.x()), 3)


def test_polynomial_derivation_construction():
    pair = corpus.poly_derivation_construction()
    assert all(r.holds for r in law_suite(pair, **FAST))
    A = pair.algebra
    # K = x d/dx + ev0, so K⁻¹(x^n) = x^n/n
    assert pair.Kinverse(A.parse("x^3")) == A.parse("1/3*x^3")
    assert pair.D(A.parse("x^3")) == A.parse("3*x^3")
    E = corpus.poly_eval_zero(A)
    for text in ("5", "x^2 + 3"):
        a = A.parse(text)
        assert pair.K(E(a)) == E(a) == pair.Kinverse(E(a))


def test_closed_form_inverse_is_validated():
    pair = ftc_from_derivation(corpus.poly_derivation_input(closed_form=True), **FAST)
    assert pair.Kinverse(pair.algebra.monomial(4)) == pair.algebra.parse("1/4*x^4")
    inp = corpus.poly_derivation_input()
    A = inp.algebra
    inp.Kinverse = LinearOperator("wrong", A, A, lambda p: p)
    with pytest.raises(InverseValidationError) as info:
        ftc_from_derivation(inp, **FAST)
    assert info.value.report.law == "k-inverse" and info.value.report.reevaluate()


def test_K_singular_mod_3():
    with pytest.raises(KNotInvertibleError) as info:
        corpus.poly_derivation_construction(Zmod(3))
    assert info.value.degree == 3
    assert "degree 3" in str(info.value)


def test_invalid_construction_input():
    inp = corpus.poly_derivation_input()
    A = inp.algebra
    inp.E = LinearOperator("id", A, A, lambda p: p)
    with pytest.raises(InvalidConstructionInputError) as info:
        ftc_from_derivation(inp, **FAST)
    assert not info.value.report.holds


def test_diff_algebra_constructions():
    for name in ("poly-diff-algebra", "hurwitz-diff-algebra"):
        pair = corpus.build_ftc(name)
        assert all(r.holds for r in law_suite(pair, **FAST)), name
    H = corpus.build_ftc("hurwitz-diff-algebra").algebra
    pair = corpus.build_ftc("hurwitz-diff-algebra")
    assert pair.P(H.parse("(0, 2, 6)")) == H.parse("(0, 2, 3)")


def test_degenerate_diff_algebra():
    # D = 0 with E = id: K = id, the module is ker E = 0
    A = PolynomialRing(QQ)
    pair = ftc_from_diff_algebra(LinearOperator("0", A, A, lambda p: A.zero()), LinearOperator("id", A, A, lambda p: p), **FAST)
    assert all(r.holds for r in law_suite(pair, **FAST))
    assert pair.Kinverse(A.parse("x^2 + 1")) == A.parse("x^2 + 1")


def test_free_rota_baxter():
    letters = FiniteAlgebra.truncated_polynomial(3)
    R, P = free_rota_baxter(letters)
    a = W(1, basis_size=3)
    assert P(a) == W(0, 1, basis_size=3)
    assert R.mul(R.one(), a) == a
    # P(a)P(b) = P(P(a)b + aP(b)) on a sample
    b = W(2, basis_size=3)
    lhs = R.mul(P(a), P(b))
    assert lhs == P(R.mul(P(a), b) + R.mul(a, P(b)))
    assert lhs == mixable_shuffle_product(W(0, 1, basis_size=3), W(0, 2, basis_size=3), letters)


def test_from_integration_pairs():
    pair = corpus.build_ftc("rb-free")
    assert all(r.holds for r in law_suite(pair, **FAST))
    P = poly_integration()
    g = ftc_from_integration(P, P.domain.mul, **FAST)
    assert all(r.holds for r in law_suite(g, **FAST))
    assert g.name.startswith("from-integration")
