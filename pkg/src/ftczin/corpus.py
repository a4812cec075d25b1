"""Named instances: the reference FTC-pairs and Zinbiel algebras, planted mutations,
example morphisms, and parsing of instance-spec JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .calculus import (
    FtcPair,
    LinearOperator,
    hurwitz_pair,
    hurwitz_shift_right,
    poly_derivation,
    poly_integration,
    poly_pair,
    shuffle_pair,
    zero_operator,
)
from .carriers import (
    ZERO,
    FiniteAlgebra,
    HurwitzAlgebra,
    HurwitzSeries,
    Polynomial,
    PolynomialRing,
    ScalarAlgebra,
    TensorSum,
    ZeroModule,
)
from .constructions import (
    DerivationConstructionInput,
    free_rota_baxter,
    ftc_from_derivation,
    ftc_from_diff_algebra,
    ftc_from_integration,
)
from .equivalence import FtcMorphism, functor_F
from .rings import QQ, ZZ, Ring, Zmod, ring_from_tag
from .zinbiel import ZinbielInstance, ZinMorphism, mutated_shuffle_zinbiel, shuffle_zinbiel, zinbiel_from_integration

LAWS = ("leibniz", "rota-baxter", "ftc1", "ftc2", "hybrid-rota-baxter")


class UnknownInstanceError(KeyError):
    pass


# operators used by several instances ---------------------------------------


def poly_map(name, A: PolynomialRing, fn) -> LinearOperator:
    """Operator on k[x] given degree-wise: fn(n, c) -> list of (degree, coefficient)."""

    def apply(p):
        out = {}
        for d, c in p.coeffs.items():
            for d2, c2 in fn(d, c):
                out[d2] = out[d2] + c2 if d2 in out else c2
        return Polynomial._raw(out, A.ring)

    return LinearOperator(name, A, A, apply)


def poly_eval_zero(A: PolynomialRing) -> LinearOperator:
    return poly_map("p(0)", A, lambda d, c: [(0, c)] if d == 0 else [])


def poly_euler(A: PolynomialRing) -> LinearOperator:
    r = A.ring
    return poly_map("x d/dx", A, lambda d, c: [(d, r.from_int(d) * c)] if d else [])


def poly_K_inverse_closed_form(A: PolynomialRing) -> LinearOperator:
    """x^n -> x^n / n for n >= 1 and 1 -> 1."""
    r = A.ring
    return poly_map("K⁻¹", A, lambda d, c: [(d, c * r.invert(r.from_int(d)) if d else c)])


def hurwitz_euler(H: HurwitzAlgebra) -> LinearOperator:
    base = H.base
    return LinearOperator(
        "n·f(n)", H, H, lambda f: HurwitzSeries((base.scale(H.ring.from_int(n), a) for n, a in enumerate(f.entries)), base)
    )


def hurwitz_head(H: HurwitzAlgebra) -> LinearOperator:
    return LinearOperator("head", H, H, lambda f: HurwitzSeries(f.entries[:1], H.base))


# built-in FTC-pairs ---------------------------------------------------------


def poly_derivation_input(ring: Ring = QQ, degree_bound: int = 12, closed_form: bool = False) -> DerivationConstructionInput:
    """k[x] with D = d/dx, D°(p) = p·x and E(p) = p(0), so L(x^n) = n x^n."""
    A = PolynomialRing(ring)
    D = poly_derivation(algebra=A)
    x = A.x()
    Dcirc = LinearOperator("·x", A, A, lambda p: p * x)
    E = poly_eval_zero(A)
    Kinv = poly_K_inverse_closed_form(A) if closed_form else None
    return DerivationConstructionInput(A, A, A.mul, D, Dcirc, E, Kinv, degree_bound, "poly-derivation-construction")


def poly_derivation_construction(ring: Ring = QQ, degree_bound: int = 12, **kw) -> FtcPair:
    return ftc_from_derivation(poly_derivation_input(ring, degree_bound), **kw)


def zero_integration(ring: Ring = QQ) -> FtcPair:
    A = PolynomialRing(ring)
    return FtcPair("zero-integration", A, A, A.mul, zero_operator(A, A), zero_operator(A, A))


def zero_both(ring: Ring = QQ) -> FtcPair:
    A = PolynomialRing(ring)
    M = ZeroModule(ring)
    return FtcPair("zero-both", A, M, lambda a, m: ZERO, zero_operator(A, M), zero_operator(M, A))


def derivation_zero_integration(ring: Ring = QQ) -> FtcPair:
    A = PolynomialRing(ring)
    return FtcPair("derivation-zero-integration", A, A, A.mul, poly_derivation(algebra=A), zero_operator(A, A))


def rb_free(truncation: int = 4, ring: Ring = QQ) -> FtcPair:
    R, P = free_rota_baxter(FiniteAlgebra.truncated_polynomial(truncation, ring))
    return ftc_from_integration(P, R.mul, name="rb-free", verify=False)


def _poly_from_integration() -> FtcPair:
    P = poly_integration()
    return ftc_from_integration(P, P.domain.mul, name="poly-from-integration", verify=False)


def _zero_from_integration() -> FtcPair:
    M = ZeroModule(QQ)
    k = ScalarAlgebra(QQ)
    return ftc_from_integration(zero_operator(M, k), lambda c, m: ZERO, name="zero-from-integration", verify=False)


def _poly_diff_algebra() -> FtcPair:
    A = PolynomialRing(QQ)
    return ftc_from_diff_algebra(poly_euler(A), poly_eval_zero(A), name="poly-diff-algebra")


def _hurwitz_diff_algebra() -> FtcPair:
    H = HurwitzAlgebra(ScalarAlgebra(QQ))
    return ftc_from_diff_algebra(hurwitz_euler(H), hurwitz_head(H), name="hurwitz-diff-algebra")


def _dual_numbers():
    return FiniteAlgebra.truncated_polynomial(2, QQ)


@dataclass
class FtcEntry:
    build: Callable[[], FtcPair]
    expected_violations: frozenset = frozenset()
    augmented: bool | None = None
    mutation: bool = False
    note: str = ""


FTC_INSTANCES: dict[str, FtcEntry] = {
    "poly-ftc": FtcEntry(poly_pair, augmented=True),
    "hurwitz-ftc": FtcEntry(lambda: hurwitz_pair(ScalarAlgebra(ZZ)), augmented=True),
    "hurwitz-ftc-z2": FtcEntry(lambda: hurwitz_pair(ScalarAlgebra(Zmod(2)), "hurwitz-ftc-z2"), augmented=True),
    "hurwitz-ftc-z4": FtcEntry(lambda: hurwitz_pair(ScalarAlgebra(Zmod(4)), "hurwitz-ftc-z4"), augmented=True),
    "hurwitz-dual-numbers": FtcEntry(lambda: hurwitz_pair(_dual_numbers(), "hurwitz-dual-numbers"), augmented=False),
    "shuffle-ftc": FtcEntry(shuffle_pair, augmented=True),
    "rb-free": FtcEntry(rb_free, augmented=True),
    "poly-from-integration": FtcEntry(_poly_from_integration, augmented=True),
    "poly-derivation-construction": FtcEntry(poly_derivation_construction, augmented=True),
    "poly-diff-algebra": FtcEntry(_poly_diff_algebra, augmented=True),
    "hurwitz-diff-algebra": FtcEntry(_hurwitz_diff_algebra, augmented=True),
    "zero-integration": FtcEntry(zero_integration, frozenset({"ftc1"}), note="zero maps with M = k[x]"),
    "zero-both": FtcEntry(zero_both, augmented=False, note="zero maps with M = 0; ker D is all of k[x]"),
    "zero-from-integration": FtcEntry(_zero_from_integration, augmented=True),
}


# mutations ------------------------------------------------------------------


def _poly_mutant(name, D=None, P=None) -> FtcPair:
    A = PolynomialRing(QQ)
    D = D(A) if D else poly_derivation(algebra=A)
    P = P(A) if P else poly_integration(algebra=A)
    return FtcPair(name, A, A, A.mul, D, P)


def _scaled(op: LinearOperator, c) -> LinearOperator:
    Y = op.codomain
    return LinearOperator(f"{c}·{op.name}", op.domain, Y, lambda x: Y.scale(Y.ring.from_int(c), op(x)))


def _with_operators(pair: FtcPair, name: str, D=None, P=None) -> FtcPair:
    return FtcPair(name, pair.algebra, pair.module, pair.action, D or pair.D, P or pair.P)


def _p_plus_constant(A: PolynomialRing) -> LinearOperator:
    P = poly_integration(algebra=A)
    return LinearOperator("∫ + m(0)", A, A, lambda m: P(m) + m.coeff(0))


def _hurwitz_double_left(H: HurwitzAlgebra) -> LinearOperator:
    return LinearOperator("shift-left²", H, H, lambda f: HurwitzSeries(f.entries[2:], H.base))


MUTATIONS: dict[str, FtcEntry] = {
    "poly-integration-unscaled": FtcEntry(
        lambda: _poly_mutant("poly-integration-unscaled", P=lambda A: poly_map("x·", A, lambda d, c: [(d + 1, c)])),
        frozenset({"rota-baxter", "ftc1", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="P'(x^n) = x^(n+1)",
    ),
    "derivation-zero-integration": FtcEntry(
        derivation_zero_integration, frozenset({"ftc1", "ftc2", "hybrid-rota-baxter"}), mutation=True, note="(D, 0)"
    ),
    "poly-derivation-lowering": FtcEntry(
        lambda: _poly_mutant("poly-derivation-lowering", D=lambda A: poly_map("x⁻¹·", A, lambda d, c: [(d - 1, c)] if d else [])),
        frozenset({"leibniz", "ftc1", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="D'(x^n) = x^(n-1), D'(1) = 0",
    ),
    "poly-double-integration": FtcEntry(
        lambda: _with_operators(poly_pair(), "poly-double-integration", P=_scaled(poly_pair().P, 2)),
        frozenset({"ftc1", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="2·P is still Rota-Baxter (weight 0 rule is homogeneous)",
    ),
    "poly-integration-plus-constant": FtcEntry(
        lambda: _poly_mutant("poly-integration-plus-constant", P=_p_plus_constant),
        frozenset({"rota-baxter", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="P'(m) = P(m) + m(0); FTC1 survives",
    ),
    "hurwitz-cauchy": FtcEntry(
        lambda: hurwitz_pair(ScalarAlgebra(QQ), "hurwitz-cauchy", product="cauchy"),
        frozenset({"leibniz", "rota-baxter"}),
        mutation=True,
        note="unweighted convolution in place of the Hurwitz product; E stays the head projector",
    ),
    "hurwitz-double-integration": FtcEntry(
        lambda: (lambda p: _with_operators(p, "hurwitz-double-integration", P=_scaled(p.P, 2)))(hurwitz_pair(ScalarAlgebra(ZZ))),
        frozenset({"ftc1", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="2·shift-right",
    ),
    "hurwitz-double-shift": FtcEntry(
        lambda: (lambda p: _with_operators(p, "hurwitz-double-shift", D=_hurwitz_double_left(p.algebra)))(hurwitz_pair(ScalarAlgebra(ZZ))),
        frozenset({"leibniz", "ftc1", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="D = shift-left twice",
    ),
    "shuffle-double-injection": FtcEntry(
        lambda: (lambda p: _with_operators(p, "shuffle-double-injection", P=_scaled(p.P, 2)))(shuffle_pair()),
        frozenset({"ftc1", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="2·incl",
    ),
    "shuffle-double-projection": FtcEntry(
        lambda: (lambda p: _with_operators(p, "shuffle-double-projection", D=_scaled(p.D, 2)))(shuffle_pair()),
        frozenset({"ftc1", "ftc2", "hybrid-rota-baxter"}),
        mutation=True,
        note="2·proj+",
    ),
}


# Zinbiel instances ----------------------------------------------------------


def _zin_from(name: str, P: LinearOperator, action) -> ZinbielInstance:
    return zinbiel_from_integration(P, action, name=name, verify=False)


def _poly_zinbiel() -> ZinbielInstance:
    P = poly_integration()
    return _zin_from("poly-zinbiel", P, P.domain.mul)


def _hurwitz_zinbiel() -> ZinbielInstance:
    H = HurwitzAlgebra(ScalarAlgebra(ZZ))
    return _zin_from("hurwitz-zinbiel", hurwitz_shift_right(H), H.mul)


def _rb_zinbiel() -> ZinbielInstance:
    R, P = free_rota_baxter()
    return _zin_from("rb-zinbiel", P, R.mul)


def _f_of(name: str) -> Callable[[], ZinbielInstance]:
    def build():
        z = functor_F(build_ftc(name), verify=False)
        z.name = f"F({name})"
        return z

    return build


@dataclass
class ZinEntry:
    build: Callable[[], ZinbielInstance]
    expected_violations: frozenset = field(default_factory=frozenset)
    mutation: bool = False


ZIN_INSTANCES: dict[str, ZinEntry] = {
    "shuffle-zinbiel": ZinEntry(shuffle_zinbiel),
    "poly-zinbiel": ZinEntry(_poly_zinbiel),
    "hurwitz-zinbiel": ZinEntry(_hurwitz_zinbiel),
    "rb-zinbiel": ZinEntry(_rb_zinbiel),
    "F(poly-ftc)": ZinEntry(_f_of("poly-ftc")),
    "F(hurwitz-dual-numbers)": ZinEntry(_f_of("hurwitz-dual-numbers")),
    "F(shuffle-ftc)": ZinEntry(_f_of("shuffle-ftc")),
}

ZIN_MUTATIONS: dict[str, ZinEntry] = {
    "shuffle-zinbiel-dropped-summand": ZinEntry(
        mutated_shuffle_zinbiel, frozenset({"zinbiel-identity", "symmetrized-product"}), mutation=True
    ),
}


def build_ftc(name: str) -> FtcPair:
    entry = FTC_INSTANCES.get(name) or MUTATIONS.get(name)
    if entry is None:
        raise UnknownInstanceError(name)
    pair = entry.build()
    pair.name = name
    return pair


def build_zin(name: str) -> ZinbielInstance:
    entry = ZIN_INSTANCES.get(name) or ZIN_MUTATIONS.get(name)
    if entry is None:
        raise UnknownInstanceError(name)
    z = entry.build()
    z.name = name
    return z


def instance_kind(name: str) -> str | None:
    if name in FTC_INSTANCES or name in MUTATIONS:
        return "ftc"
    if name in ZIN_INSTANCES or name in ZIN_MUTATIONS:
        return "zin"
    return None


# example morphisms ----------------------------------------------------------


def poly_dilation(pair: FtcPair, lam=2) -> FtcMorphism:
    """f(p)(x) = p(λx), g(m)(x) = λ·m(λx): an automorphism of the polynomial pair."""
    A = pair.algebra
    lam = A.ring.coerce(lam)
    f = poly_map("p(λx)", A, lambda d, c: [(d, c * _power(lam, d, A.ring))])
    g = poly_map("λm(λx)", A, lambda d, c: [(d, c * _power(lam, d + 1, A.ring))])
    return FtcMorphism(f, g, pair, pair)


def _power(c, n, ring):
    out = ring.one()
    for _ in range(n):
        out = out * c
    return out


def _relabel(t: TensorSum, perm) -> TensorSum:
    return TensorSum._raw({tuple(perm[i] for i in w): c for w, c in t.terms.items()}, t.unit, t.basis_size, t.ring)


def letter_permutation(pair: FtcPair, perm=(1, 2, 0)) -> FtcMorphism:
    """Relabels letters of Sh(V) and Sh+(V) simultaneously."""
    f = LinearOperator("σ", pair.algebra, pair.algebra, lambda s: _relabel(s, perm))
    g = LinearOperator("σ", pair.module, pair.module, lambda w: _relabel(w, perm))
    return FtcMorphism(f, g, pair, pair)


def zin_letter_permutation(z: ZinbielInstance, perm=(1, 2, 0)) -> ZinMorphism:
    f = LinearOperator("id", z.base, z.base, lambda c: c)
    g = LinearOperator("σ", z.carrier, z.carrier, lambda w: _relabel(w, perm))
    return ZinMorphism(f, g, z, z)


def sign_mutation(pair: FtcPair, word=(0,)) -> FtcMorphism:
    """Identity on A, and on M the identity with the sign of one basis word flipped."""
    M = pair.module

    def g(w):
        c = w.terms.get(word)
        if c is None:
            return w
        return w - TensorSum._raw({word: c * 2}, M.ring.zero(), w.basis_size, w.ring)

    f = LinearOperator("id", pair.algebra, pair.algebra, lambda s: s)
    return FtcMorphism(f, LinearOperator(f"flip{list(word)}", M, M, g), pair, pair)


def zin_negation(z: ZinbielInstance) -> ZinMorphism:
    f = LinearOperator("id", z.base, z.base, lambda c: c)
    g = LinearOperator("-id", z.carrier, z.carrier, z.carrier.neg)
    return ZinMorphism(f, g, z, z)


# instance specs ---------------------------------------------------------------


class InstanceSpecError(ValueError):
    pass


def load_spec(text_or_path: str) -> dict:
    text = text_or_path.strip()
    if not text.startswith("{"):
        with open(text_or_path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceSpecError(f"invalid instance spec: {exc}") from None
    if not isinstance(spec, dict):
        raise InstanceSpecError("instance spec must be a JSON object")
    return spec


def _letters_from_spec(spec: dict, ring: Ring) -> FiniteAlgebra:
    sc = spec.get("structureConstants")
    if sc is None:
        return FiniteAlgebra.truncated_polynomial(int(spec.get("truncation", 4)), ring)
    dim = int(sc["dim"])
    table = {}
    for entry in sc["table"]:
        i, j, prod = entry
        table[(int(i), int(j))] = {int(k): ring.parse(str(v)) for k, v in prod.items()}
    unit = {int(k): ring.parse(str(v)) for k, v in sc.get("unit", {"0": 1}).items()}
    return FiniteAlgebra(ring, dim, table, unit, sc.get("names"), sc.get("name"))


def build_from_spec(spec: dict, degree_bound: int = 12):
    """Build an FTC-pair (or Zinbiel instance) from a parsed instance spec.

    ``degree_bound`` applies when the instance spec has no ``degreeBound`` of its own.
    """
    if "instance" in spec:
        name = spec["instance"]
        kind = instance_kind(name)
        if kind is None:
            raise UnknownInstanceError(name)
        return build_ftc(name) if kind == "ftc" else build_zin(name)
    construction = spec.get("construction")
    ring = ring_from_tag(str(spec.get("ring", "rationals")))
    carrier = spec.get("carrier", "polynomial")
    bound = int(spec.get("degreeBound", degree_bound))
    kw = {"seed": int(spec.get("seed", 0))}
    if construction == "from-integration":
        if carrier == "polynomial":
            P = poly_integration(ring)
            return ftc_from_integration(P, P.domain.mul, name="poly-from-integration", **kw)
        if carrier == "hurwitz":
            H = HurwitzAlgebra(ScalarAlgebra(ring))
            return ftc_from_integration(hurwitz_shift_right(H), H.mul, name="hurwitz-from-integration", **kw)
        if carrier in ("rb-free", "free-rota-baxter", "tensor"):
            R, P = free_rota_baxter(_letters_from_spec(spec, ring))
            return ftc_from_integration(P, R.mul, name="rb-free", **kw)
    elif construction == "from-derivation":
        if carrier == "polynomial":
            return ftc_from_derivation(poly_derivation_input(ring, bound), **kw)
    elif construction == "diff-algebra":
        if carrier == "polynomial":
            A = PolynomialRing(ring)
            return ftc_from_diff_algebra(poly_euler(A), poly_eval_zero(A), degree_bound=bound, **kw)
        if carrier == "hurwitz":
            H = HurwitzAlgebra(ScalarAlgebra(ring))
            return ftc_from_diff_algebra(hurwitz_euler(H), hurwitz_head(H), degree_bound=bound, **kw)
    elif construction == "pair":
        if carrier == "polynomial":
            return poly_pair(ring)
        if carrier == "hurwitz":
            return hurwitz_pair(ScalarAlgebra(ring))
        if carrier == "shuffle":
            return shuffle_pair(int(spec.get("basisSize", 3)), ring)
    else:
        raise InstanceSpecError(f"unknown construction {construction!r}")
    raise InstanceSpecError(f"construction {construction!r} does not support carrier {carrier!r}")
