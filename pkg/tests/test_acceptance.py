"""Acceptance criteria 1-10.  Every comparison is exact; a PASS/FAIL line per
criterion is printed in the terminal summary (see conftest.py)."""

import contextlib
import io
import itertools
import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from ftczin import cli, corpus
from ftczin.calculus import check_ftc1, check_ftc2, law_suite
from ftczin.carriers import TensorSum, shuffle_product, shuffle_product_oracle, zinbiel_product
from ftczin.equivalence import check_augmented_correspondence, check_roundtrip_ftc, functor_F
from ftczin.laws import HOLDS, VIOLATED
from ftczin.rings import Zmod
from ftczin.suite import to_text
from ftczin.constructions import KNotInvertibleError, ftc_from_derivation

SEEDS = range(10)
SAMPLES = 500


def _suite_json() -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "ftczin", "suite", "--seed", "0", "--format", "json"],
        capture_output=True,
        env={**os.environ, "FTC_SEED": ""},
    )


def _suite_json_in_process() -> subprocess.CompletedProcess:
    saved = os.environ.pop("FTC_SEED", None)
    out = io.StringIO()
    try:
        with contextlib.redirect_stdout(out):
            code = cli.main(["suite", "--seed", "0", "--format", "json"])
    finally:
        if saved is not None:
            os.environ["FTC_SEED"] = saved
    return subprocess.CompletedProcess([], code, out.getvalue().encode(), b"")


@pytest.fixture(scope="session")
def suite_runs():
    # one fresh interpreter, one in-process run with warm caches
    return _suite_json(), _suite_json_in_process()


@pytest.fixture(scope="session")
def suite(suite_runs):
    first, _ = suite_runs
    assert first.returncode == cli.EXIT_OK, first.stderr.decode()
    return json.loads(first.stdout)


def _entries(suite, law=None, instance=None):
    return [
        e
        for e in suite["entries"]
        if (law is None or e["law"] == law) and (instance is None or e["instance"] == instance)
    ]


def _words(basis: int, max_len: int, min_len: int = 1):
    for n in range(min_len, max_len + 1):
        yield from itertools.product(range(basis), repeat=n)


# 1 ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["poly-ftc", "hurwitz-ftc", "hurwitz-ftc-z2", "shuffle-ftc"])
def test_criterion_1_laws_on_asserted_instances(name):
    pair = corpus.build_ftc(name)
    for seed in SEEDS:
        reports = law_suite(pair, seed=seed, samples=SAMPLES)
        assert [r.law for r in reports] == ["leibniz", "rota-baxter", "ftc1", "ftc2", "hybrid-rota-baxter"]
        for r in reports:
            assert r.status == HOLDS, str(r)
            assert r.samples > SAMPLES  # exhaustive tuples came first


# 2 ---------------------------------------------------------------------------


def test_criterion_2_separating_example(suite):
    pair = corpus.build_ftc("zero-integration")
    ftc1 = check_ftc1(pair, samples=SAMPLES)
    assert ftc1.status == VIOLATED
    assert ftc1.reevaluate()
    w = ftc1.witness
    assert (w.inputs, w.lhs, w.rhs) == ({"m": "1"}, "0", "1")
    assert check_ftc2(pair, samples=SAMPLES).status == HOLDS
    [entry] = _entries(suite, "ftc1", "zero-integration")
    assert entry["status"] == VIOLATED and entry["witness"]["inputs"] == {"m": "1"}
    assert "witness [D(P(m)) = m] m = 1" in to_text(suite)


# 3 ---------------------------------------------------------------------------


def test_criterion_3_ftc2_criteria_agree(suite):
    entries = _entries(suite, "ftc2-equivalence")
    names = set(corpus.FTC_INSTANCES) | set(corpus.MUTATIONS)
    assert {e["instance"] for e in entries} == names
    assert len(entries) >= 20
    verdicts = set()
    for e in entries:
        d = e["details"]
        assert e["status"] == HOLDS and d["ftc2"] == d["hybrid-rota-baxter"], e
        verdicts.add(d["ftc2"])
    # the metamorphic test must see both verdicts
    assert verdicts == {HOLDS, VIOLATED}


# 4 ---------------------------------------------------------------------------


def test_criterion_4_zinbiel_identity_and_polynomial_values():
    W = TensorSum.word
    count = 0
    for total in range(3, 7):
        for l1 in range(1, total - 1):
            for l2 in range(1, total - l1):
                for letters in itertools.product(range(3), repeat=total):
                    u, v, w = W(*letters[:l1]), W(*letters[l1 : l1 + l2]), W(*letters[l1 + l2 :])
                    lhs = zinbiel_product(zinbiel_product(u, v), w)
                    rhs = zinbiel_product(u, zinbiel_product(v, w)) + zinbiel_product(u, zinbiel_product(w, v))
                    assert lhs == rhs, (u, v, w)
                    count += 1
    assert count == 27 + 3 * 81 + 6 * 243 + 10 * 729

    z = corpus.build_zin("poly-zinbiel")
    A = z.carrier
    for m in range(7):
        for n in range(7):
            expected = A.parse(f"{Fraction(1, n + 1)}*x^{m + n + 1}")
            assert z.zin(A.monomial(m), A.monomial(n)) == expected


# 5 ---------------------------------------------------------------------------


def test_criterion_5_symmetrized_products():
    z = corpus.build_zin("shuffle-zinbiel")
    pairs = 0
    for u in _words(3, 4):
        for v in _words(3, 5 - len(u)):
            a, b = TensorSum.word(*u), TensorSum.word(*v)
            assert z.star(a, b) == shuffle_product(a, b)
            pairs += 1
    assert pairs > 0

    pz = corpus.build_zin("poly-zinbiel")
    A = pz.carrier
    assert pz.star(A.monomial(1), A.monomial(1)) == A.monomial(3)
    for m in range(7):
        for n in range(7):
            c = Fraction(m + n + 2, (m + 1) * (n + 1))
            assert pz.star(A.monomial(m), A.monomial(n)) == A.parse(f"{c}*x^{m + n + 1}")


# 6 ---------------------------------------------------------------------------


def _graded(carrier, top):
    return [b for d in range(top + 1) for b in carrier.graded_basis(d)]


@pytest.mark.parametrize("name,top", [("poly-ftc", 8), ("hurwitz-dual-numbers", 4), ("shuffle-ftc", 3)])
def test_criterion_6_eta_round_trips(name, top):
    pair = corpus.build_ftc(name)
    algebra, module = _graded(pair.algebra, top), _graded(pair.module, top)
    report = check_roundtrip_ftc(pair, algebra_elements=algebra, module_elements=module, samples=0)
    assert report.status == HOLDS, str(report)


def test_criterion_6_equivalence_in_suite(suite):
    zin_names = set(corpus.ZIN_INSTANCES)
    assert {e["instance"] for e in _entries(suite, "roundtrip-zin")} == zin_names
    gf = [e for e in suite["entries"] if e["instance"].startswith("G(F(")]
    fg = [e for e in suite["entries"] if e["instance"].startswith("F(G(")]
    assert len({e["instance"] for e in fg}) == len(zin_names)
    assert gf and fg
    natural = [e for e in suite["entries"] if e["law"].startswith("naturality") and e["expected"] == HOLDS]
    assert len(natural) >= 10
    for e in _entries(suite, "roundtrip-zin") + _entries(suite, "roundtrip-ftc") + gf + fg + natural:
        assert e["status"] == HOLDS, e


# 7 ---------------------------------------------------------------------------


def test_criterion_7_augmented_correspondence(suite):
    for name in ("poly-ftc", "shuffle-ftc"):
        r = check_augmented_correspondence(corpus.build_ftc(name), samples=SAMPLES)
        assert r.status == HOLDS and r.details["augmented"] is True and r.details["kernelRank"] == 1
    dual = check_augmented_correspondence(corpus.build_ftc("hurwitz-dual-numbers"), samples=SAMPLES)
    assert dual.status == HOLDS and dual.details["augmented"] is False
    constant = dual.details["nonScalarConstant"]
    assert constant["lhs"] == "(y)"  # E(a) for the witness: a D-constant outside k·1
    [entry] = _entries(suite, "augmented", "hurwitz-dual-numbers")
    assert entry["status"] == VIOLATED and entry["ok"]


# 8 ---------------------------------------------------------------------------


def test_criterion_8_constructions():
    rb = functor_F(corpus.build_ftc("rb-free"), verify=False)
    words = [TensorSum.word(*w, basis_size=4) for w in _words(4, 3)]
    for u in words:
        for v in words:
            assert rb.zin(u, v) == zinbiel_product(u, v)

    # degree bound 13 keeps x^(n+1) inside the inverted range for n <= 12
    pair = ftc_from_derivation(corpus.poly_derivation_input(degree_bound=13), samples=SAMPLES)
    A = pair.algebra
    for n in range(1, 13):
        assert pair.Kinverse(A.monomial(n)) == A.parse(f"{Fraction(1, n)}*x^{n}")
    for n in range(13):
        assert pair.P(A.monomial(n + 1)) == A.parse(f"{Fraction(1, n + 1)}*x^{n + 1}")

    with pytest.raises(KNotInvertibleError) as info:
        ftc_from_derivation(corpus.poly_derivation_input(Zmod(3)))
    assert info.value.degree == 3


# 9 ---------------------------------------------------------------------------


def test_criterion_9_shuffle_matches_enumeration():
    count = 0
    for u in _words(3, 5):
        for v in _words(3, 6 - len(u)):
            expected = shuffle_product_oracle(u, v, basis_size=3)
            assert shuffle_product(TensorSum.word(*u), TensorSum.word(*v)) == expected
            count += 1
    # empty words: the unit
    assert shuffle_product(TensorSum(unit=1), TensorSum.word(0, 1)) == TensorSum.word(0, 1)
    assert count > 1000


# 10 --------------------------------------------------------------------------

EXIT_MATRIX = [
    (["check-laws", "--instance", "poly-ftc", "--samples", "50"], cli.EXIT_OK),
    (["check-laws", "--instance", "shuffle-zinbiel", "--samples", "20"], cli.EXIT_OK),
    (["check-laws", "--instance", "zero-integration", "--samples", "50"], cli.EXIT_VIOLATION),
    (["check-laws", "--instance", "shuffle-zinbiel-dropped-summand", "--samples", "20"], cli.EXIT_VIOLATION),
    (["roundtrip", "--instance", "zero-integration", "--samples", "20"], cli.EXIT_VIOLATION),
    (["check-laws", "--instance", "no-such-instance"], cli.EXIT_USAGE),
    (["shuffle", "[0,1", "[2]"], cli.EXIT_USAGE),
    (["hurwitz-mul", "(1,2", "(3)"], cli.EXIT_USAGE),
    (["frobnicate"], cli.EXIT_USAGE),
    (["check-laws", "--instance", '{"construction": "from-derivation", "ring": "mod 3"}'], cli.EXIT_CONSTRUCTION),
    (["shuffle", "[0,1]", "[2]"], cli.EXIT_OK),
]


def test_criterion_10_determinism_and_exit_codes(suite_runs, capsys):
    first, second = suite_runs
    assert first.returncode == second.returncode == cli.EXIT_OK
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["summary"]["failed"] == []
    for argv, code in EXIT_MATRIX:
        assert cli.main(argv) == code, argv
    capsys.readouterr()
