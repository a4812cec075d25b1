from ftczin import corpus
from ftczin.calculus import law_suite
from ftczin.carriers import PolynomialRing, ScalarAlgebra
from ftczin.laws import HOLDS, VIOLATED, Clause, Variable, check_law, sample_rng, tuple_stream
from ftczin.rings import QQ, ZZ

A = PolynomialRing(QQ)


def test_sample_stream_is_reproducible():
    assert sample_rng(3, 7).random() == sample_rng(3, 7).random()
    assert sample_rng(3, 7).random() != sample_rng(3, 8).random()
    vs = [Variable("a", A), Variable("b", A)]
    assert tuple_stream(vs, 4, 20) == tuple_stream(vs, 4, 20)
    assert tuple_stream(vs, 4, 20) != tuple_stream(vs, 5, 20)


def test_exhaustive_tuples_come_first():
    vs = [Variable("a", A)]
    stream = tuple_stream(vs, 0, 3)
    basis = A.basis()
    assert [t[0] for t in stream[: len(basis)]] == list(basis)
    assert len(stream) == len(basis) + 3


def test_reports_do_not_depend_on_worker_count():
    for name in ("zero-integration", "poly-derivation-lowering", "shuffle-double-injection"):
        pair = corpus.build_ftc(name)
        one = [r.to_dict() for r in law_suite(pair, samples=120, workers=1)]
        four = [r.to_dict() for r in law_suite(pair, samples=120, workers=4)]
        assert one == four


def test_first_failure_in_stream_order_is_the_witness():
    Z = ScalarAlgebra(ZZ)
    # fails for every c >= 3; the first such tuple must be reported
    clause = Clause("c < 3", ("c",), lambda c: c if c < 3 else -c, lambda c: c, Z)
    values = [(ZZ.coerce(i),) for i in range(10)]
    report = check_law("small", [Variable("c", Z)], [clause], exhaustive=values, samples=0)
    assert report.status == VIOLATED and report.witness.inputs == {"c": "3"}
    assert report.reevaluate()


def test_explicit_exhaustive_list_replaces_the_basis():
    Z = ScalarAlgebra(ZZ)
    clause = Clause("c = c", ("c",), lambda c: c, lambda c: c, Z)
    report = check_law("id", [Variable("c", Z)], [clause], exhaustive=[(ZZ.one(),)], samples=0)
    assert report.status == HOLDS and report.samples == 1
