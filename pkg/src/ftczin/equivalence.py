"""The functors F: FTC -> ZIN and G: ZIN -> FTC and the natural isomorphisms η, ε.

F sends (A ⇄ M) to (ker D, M, ◁_P) with ker D realised as the fixed points
of E.  G sends (A, Z, ◁) to (A ⋊ Z ⇄ Z) with D = π_Z and P = ι_Z.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .calculus import FtcPair, LinearOperator, check_augmented, check_ftc_morphism, law_suite, shuffle_pair
from .carriers import Carrier, ScalarAlgebra, SemidirectAlgebra, SemidirectElement, TensorSum
from .carriers.sub import KernelSubalgebra
from .laws import HOLDS, VIOLATED, Clause, LawReport, Variable, check_law, sample_rng
from .linalg import rank
from .rings import QQ, ZZ
from .zinbiel import (
    InvalidZinbielError,
    ZinbielInstance,
    ZinMorphism,
    check_bilinearity,
    check_zin_morphism,
    check_zinbiel_identity,
    shuffle_zinbiel,
)


class InvalidFtcPairError(ValueError):
    def __init__(self, reports: list[LawReport]):
        self.reports = reports
        failed = "\n".join(str(r) for r in reports if not r.holds)
        super().__init__(f"not an FTC-pair:\n{failed}")


class RestrictionError(ValueError):
    """f does not map ker(D) into ker(D')."""

    def __init__(self, report: LawReport):
        self.report = report
        super().__init__(f"restriction leaves the target kernel:\n{report}")


class InvalidMorphismError(ValueError):
    def __init__(self, report: LawReport):
        self.report = report
        super().__init__(f"not a morphism:\n{report}")


@dataclass(eq=False)
class FtcMorphism:
    """(f, g): (A ⇄ M) -> (C ⇄ N) with f: A -> C and g: M -> N."""

    f: LinearOperator
    g: LinearOperator
    src: FtcPair
    dst: FtcPair

    def compose(self, inner: "FtcMorphism") -> "FtcMorphism":
        """``self ∘ inner``."""
        return FtcMorphism(self.f.compose(inner.f), self.g.compose(inner.g), inner.src, self.dst)


def identity_ftc(pair: FtcPair) -> FtcMorphism:
    return FtcMorphism(
        LinearOperator("id", pair.algebra, pair.algebra, lambda a: a),
        LinearOperator("id", pair.module, pair.module, lambda m: m),
        pair,
        pair,
    )


def identity_zin(z: ZinbielInstance) -> ZinMorphism:
    return ZinMorphism(
        LinearOperator("id", z.base, z.base, lambda a: a),
        LinearOperator("id", z.carrier, z.carrier, lambda x: x),
        z,
        z,
    )


def _require(reports: list[LawReport], error):
    if not all(r.holds for r in reports):
        raise error(reports)


# functors -------------------------------------------------------------------


def functor_F(pair: FtcPair, verify: bool = True, **kw) -> ZinbielInstance:
    if verify:
        _require(law_suite(pair, **kw), InvalidFtcPairError)
    P, act = pair.P, pair.action
    z = ZinbielInstance(f"F({pair.name})", pair.kernel, pair.module, act, lambda m, n: act(P(n), m))
    z.source_pair = pair
    return z


def functor_F_map(m: FtcMorphism, zsrc: ZinbielInstance | None = None, zdst: ZinbielInstance | None = None, **kw) -> ZinMorphism:
    """(f, g) -> (f restricted to ker D, g); the restriction is checked on samples."""
    src, dst, f = m.src, m.dst, m.f
    zsrc = zsrc or functor_F(src, verify=False)
    zdst = zdst or functor_F(dst, verify=False)
    clause = Clause("E'(f(c)) = f(c)", ("c",), lambda c: dst.E(f(c)), f, dst.algebra)
    report = check_law("kernel-restriction", [Variable("c", zsrc.base)], [clause], **kw)
    if not report.holds:
        raise RestrictionError(report)
    fbar = LinearOperator(f"{f.name}|ker", zsrc.base, zdst.base, f.fn)
    return ZinMorphism(fbar, m.g, zsrc, zdst)


def functor_G(z: ZinbielInstance, verify: bool = True, **kw) -> FtcPair:
    if verify:
        _require([check_zinbiel_identity(z, **kw), check_bilinearity(z, **kw)], InvalidZinbielError)
    SA = SemidirectAlgebra(z)
    Z, A = z.carrier, z.base
    D = LinearOperator("π_Z", SA, Z, lambda p: p.z)
    P = LinearOperator("ι_Z", Z, SA, lambda x: SemidirectElement(A.zero(), x))
    pair = FtcPair(f"G({z.name})", SA, Z, SA.act, D, P)
    pair.source_zin = z
    return pair


def check_action_vs_product(pair: FtcPair, **kw) -> LawReport:
    """ι_Z((a,x)·y) against (a,x)(0,y) on G(Z).  They differ by x◁y, so a
    violation is the expected outcome whenever ◁ is nonzero."""
    SA, Z = pair.algebra, pair.module
    clause = Clause(
        "ι_Z((a,x)·y) = (a,x)(0,y)",
        ("p", "y"),
        lambda p, y: pair.P(pair.action(p, y)),
        lambda p, y: SA.mul(p, pair.P(y)),
        SA,
    )
    return check_law("action-vs-product", [Variable("p", SA), Variable("y", Z)], [clause], **kw)


def functor_G_map(m: ZinMorphism,gsrc: FtcPair | None = None, gdst: FtcPair | None = None) -> FtcMorphism:
    """(f, g) -> (f ⋊ g, g) with (f ⋊ g)(a, x) = (f(a), g(x))."""
    gsrc = gsrc or functor_G(m.src, verify=False)
    gdst = gdst or functor_G(m.dst, verify=False)
    f, g = m.f, m.g
    fg = LinearOperator(f"{f.name}⋊{g.name}", gsrc.algebra, gdst.algebra, lambda p: SemidirectElement(f(p.a), g(p.z)))
    return FtcMorphism(fg, g, gsrc, gdst)


# natural isomorphisms -------------------------------------------------------


def _gf(pair: FtcPair) -> FtcPair:
    return functor_G(functor_F(pair, verify=False), verify=False)


def eta(pair: FtcPair, target: FtcPair | None = None) -> FtcMorphism:
    """η: pair -> G(F(pair)), η₁(a) = (E(a), D(a)), η₂ = id."""
    target = target or _gf(pair)
    E, D = pair.E, pair.D
    eta1 = LinearOperator("η₁", pair.algebra, target.algebra, lambda a: SemidirectElement(E(a), D(a)))
    eta2 = LinearOperator("η₂", pair.module, target.module, lambda m: m)
    return FtcMorphism(eta1, eta2, pair, target)


def eta_inv(pair: FtcPair, source: FtcPair | None = None) -> FtcMorphism:
    """η⁻¹: G(F(pair)) -> pair, η₁⁻¹(c, m) = c + P(m), η₂⁻¹ = id."""
    source = source or _gf(pair)
    A, P = pair.algebra, pair.P
    inv1 = LinearOperator("η₁⁻¹", source.algebra, A, lambda p: A.add(p.a, P(p.z)))
    inv2 = LinearOperator("η₂⁻¹", source.module, pair.module, lambda m: m)
    return FtcMorphism(inv1, inv2, source, pair)


def _fg(z: ZinbielInstance) -> ZinbielInstance:
    return functor_F(functor_G(z, verify=False), verify=False)


def epsilon(z: ZinbielInstance, source: ZinbielInstance | None = None) -> ZinMorphism:
    """ε: F(G(z)) -> z, ε₁(a, 0) = a, ε₂ = id."""
    source = source or _fg(z)
    e1 = LinearOperator("ε₁", source.base, z.base, lambda p: p.a)
    e2 = LinearOperator("ε₂", source.carrier, z.carrier, lambda x: x)
    return ZinMorphism(e1, e2, source, z)


def epsilon_inv(z: ZinbielInstance, target: ZinbielInstance | None = None) -> ZinMorphism:
    target = target or _fg(z)
    Z = z.carrier
    inv1 = LinearOperator("ε₁⁻¹", z.base, target.base, lambda a: SemidirectElement(a, Z.zero()))
    inv2 = LinearOperator("ε₂⁻¹", z.carrier, target.carrier, lambda x: x)
    return ZinMorphism(inv1, inv2, z, target)


# round trips ----------------------------------------------------------------


def combine_reports(law: str, reports: list[LawReport]) -> LawReport:
    """One report for several sub-checks: the first violation, or holds with summed sample counts."""
    seed = reports[0].seed if reports else 0
    for r in reports:
        if not r.holds:
            return replace(r, law=law, details={**r.details, "part": r.law})
    return LawReport(law, HOLDS, sum(r.samples for r in reports), seed, None, {"parts": [r.law for r in reports]})


def _identity_check(name: str, carrier: Carrier, roundtrip, elements=None, **kw) -> LawReport:
    clause = Clause(f"{name}(x) = x", ("x",), roundtrip, lambda x: x, carrier)
    if elements is not None:
        kw = {**kw, "exhaustive": [(x,) for x in elements]}
    return check_law(name, [Variable("x", carrier)], [clause], **kw)


def check_roundtrip_ftc(pair: FtcPair, algebra_elements=None, module_elements=None, **kw) -> LawReport:
    """η⁻¹∘η = id on A and M, η∘η⁻¹ = id on G(F(pair))."""
    target = _gf(pair)
    fwd, back = eta(pair, target), eta_inv(pair, target)
    parts = [
        _identity_check("η₁⁻¹∘η₁", pair.algebra, lambda a: back.f(fwd.f(a)), algebra_elements, **kw),
        _identity_check("η₂⁻¹∘η₂", pair.module, lambda m: back.g(fwd.g(m)), module_elements, **kw),
        _identity_check("η₁∘η₁⁻¹", target.algebra, lambda p: fwd.f(back.f(p)), None, **kw),
        _identity_check("η₂∘η₂⁻¹", target.module, lambda m: fwd.g(back.g(m)), None, **kw),
    ]
    return combine_reports("roundtrip-ftc", parts)


def check_roundtrip_zin(z: ZinbielInstance, carrier_elements=None, **kw) -> LawReport:
    """ε∘ε⁻¹ = id, ε⁻¹∘ε = id, and the ◁ induced on Z by ι_Z equals the original ◁."""
    source = _fg(z)
    fwd, back = epsilon(z, source), epsilon_inv(z, source)
    Z = z.carrier
    induced = Clause("x◁_ι y = x◁y", ("x", "y"), source.zin, z.zin, Z)
    pair_kw = dict(kw)
    if carrier_elements is not None:
        pair_kw["exhaustive"] = [(x, y) for x in carrier_elements for y in carrier_elements]
    parts = [
        _identity_check("ε₁∘ε₁⁻¹", z.base, lambda a: fwd.f(back.f(a)), None, **kw),
        _identity_check("ε₁⁻¹∘ε₁", source.base, lambda p: back.f(fwd.f(p)), None, **kw),
        _identity_check("ε₂∘ε₂⁻¹", Z, lambda x: fwd.g(back.g(x)), carrier_elements, **kw),
        check_law("induced-zinbiel", [Variable("x", Z), Variable("y", Z)], [induced], **pair_kw),
    ]
    return combine_reports("roundtrip-zin", parts)


def check_naturality(m, **kw) -> LawReport:
    """Pointwise naturality square for an FTC or ZIN morphism."""
    if isinstance(m, FtcMorphism):
        src, dst, f, g = m.src, m.dst, m.f, m.g
        e_src, e_dst = eta(src), eta(dst)
        clauses = [
            Clause(
                "(f̄⋊g)(η₁(a)) = η₁'(f(a))",
                ("a",),
                lambda a: (lambda p: SemidirectElement(f(p.a), g(p.z)))(e_src.f(a)),
                lambda a: e_dst.f(f(a)),
                e_dst.dst.algebra,
            ),
            Clause("g(η₂(m)) = η₂'(g(m))", ("m",), lambda x: g(e_src.g(x)), lambda x: e_dst.g(g(x)), dst.module),
        ]
        variables = [Variable("a", src.algebra), Variable("m", src.module)]
        return check_law("naturality-eta", variables, clauses, **kw)
    if isinstance(m, ZinMorphism):
        src, dst, f, g = m.src, m.dst, m.f, m.g
        fg_src = _fg(src)
        e_src, e_dst = epsilon(src, fg_src), epsilon(dst)
        clauses = [
            Clause(
                "ε₁'((f⋊g)(p)) = f(ε₁(p))",
                ("p",),
                lambda p: e_dst.f(SemidirectElement(f(p.a), g(p.z))),
                lambda p: f(e_src.f(p)),
                dst.base,
            ),
            Clause("ε₂'(g(x)) = g(ε₂(x))", ("x",), lambda x: e_dst.g(g(x)), lambda x: g(e_src.g(x)), dst.carrier),
        ]
        variables = [Variable("p", fg_src.base), Variable("x", src.carrier)]
        return check_law("naturality-epsilon", variables, clauses, **kw)
    raise TypeError(f"not a morphism: {m!r}")


# the shuffle example --------------------------------------------------------


def shuffle_iso(basis_size: int = 3, ring=QQ, zin=None, pair=None) -> tuple[FtcMorphism, FtcMorphism]:
    """k ⋊ Sh+(V) ≅ Sh(V): (c, t) -> c·1 + t, with g = id on Sh+(V)."""
    pair = pair or shuffle_pair(basis_size, ring)
    gpair = functor_G(zin or shuffle_zinbiel(basis_size, ring), verify=False)
    A = pair.algebra

    def forward(p):
        return TensorSum._raw(dict(p.z.terms), p.a, basis_size, ring)

    def backward(s):
        return SemidirectElement(s.unit, s.reduced_part)

    ident = LinearOperator("id", pair.module, pair.module, lambda w: w)
    fwd = FtcMorphism(LinearOperator("c+t", gpair.algebra, A, forward), ident, gpair, pair)
    back = FtcMorphism(LinearOperator("(c,t)", A, gpair.algebra, backward), ident, pair, gpair)
    return fwd, back


# augmented correspondence ---------------------------------------------------


def kernel_rank(pair: FtcPair, samples: int = 50, seed: int = 0) -> int:
    """Rank of the E-images of the basis and of some samples (a lower bound for dim ker D)."""
    A, E = pair.algebra, pair.E
    images = [E(b) for b in A.basis()]
    images += [E(A.sample(sample_rng(seed, i))) for i in range(samples)]
    rows = [A.coordinates(x) for x in images]
    keys = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    ring = QQ if pair.ring == ZZ else pair.ring
    conv = QQ.coerce if pair.ring == ZZ else (lambda c: c)
    matrix = [[conv(r.get(k, pair.ring.zero())) for k in keys] for r in rows]
    return rank(matrix, ring) if keys else 0


def check_augmented_correspondence(obj, **kw) -> LawReport:
    """For a pair: augmented iff ker(D) is one-dimensional.  For a k-Zinbiel
    instance: G(k, Z) is augmented."""
    if isinstance(obj, ZinbielInstance):
        if not isinstance(obj.base, ScalarAlgebra):
            raise ValueError("the correspondence applies to Zinbiel instances over the base ring")
        report = check_augmented(functor_G(obj, verify=False), **kw)
        return replace(report, law="augmented-correspondence", details={"augmented": report.holds})
    aug = check_augmented(obj, **kw)
    r = kernel_rank(obj, seed=kw.get("seed", 0))
    details = {"augmented": aug.holds, "kernelRank": r}
    if aug.witness is not None:
        details["nonScalarConstant"] = aug.witness.to_dict()
    if aug.holds == (r == 1):
        return LawReport("augmented-correspondence", HOLDS, aug.samples, aug.seed, None, details)
    return LawReport("augmented-correspondence", VIOLATED, aug.samples, aug.seed, aug.witness, details, aug.clauses)


def verify_morphism(m, **kw) -> LawReport:
    report = check_ftc_morphism(m.f, m.g, m.src, m.dst, **kw) if isinstance(m, FtcMorphism) else check_zin_morphism(m, **kw)
    return report
