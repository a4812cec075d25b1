"""Derivations, integrations and FTC-pairs, with checkable forms of their laws."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .carriers import (
    Algebra,
    Carrier,
    HurwitzAlgebra,
    Polynomial,
    PolynomialRing,
    ScalarAlgebra,
    ShuffleAlgebra,
    TensorSum,
    shift_left,
    shift_right,
    zinbiel_product,
)
from .carriers.sub import KernelSubalgebra
from .laws import HOLDS, VIOLATED, Clause, LawReport, Variable, check_law, tuple_stream
from .rings import QQ, Ring


class LinearOperator:
    """A named k-linear map ``domain -> codomain``.

    ``fn`` must be a pure function of its (immutable) argument: results are
    memoised, since law checks apply the same operator to the same samples
    many times.
    """

    CACHE_SIZE = 20000

    def __init__(self, name: str, domain: Carrier, codomain: Carrier, fn: Callable):
        self.name = name
        self.domain = domain
        self.codomain = codomain
        self.fn = fn
        self._memo: dict = {}

    def __call__(self, x):
        try:
            return self._memo[x]
        except KeyError:
            pass
        except TypeError:  # unhashable input
            return self.fn(x)
        y = self.fn(x)
        if len(self._memo) >= self.CACHE_SIZE:
            self._memo.clear()
        self._memo[x] = y
        return y

    def compose(self, inner: "LinearOperator") -> "LinearOperator":
        """``self ∘ inner``."""
        return LinearOperator(f"{self.name}∘{inner.name}", inner.domain, self.codomain, lambda x: self.fn(inner.fn(x)))

    def __repr__(self):
        return f"<LinearOperator {self.name}: {self.domain.name} -> {self.codomain.name}>"


def identity_operator(carrier: Carrier, name: str = "id") -> LinearOperator:
    return LinearOperator(name, carrier, carrier, lambda x: x)


def zero_operator(domain: Carrier, codomain: Carrier, name: str = "0") -> LinearOperator:
    return LinearOperator(name, domain, codomain, lambda x: codomain.zero())


def check_linearity(op: LinearOperator, **kw) -> LawReport:
    X, Y = op.domain, op.codomain
    scalars = ScalarAlgebra(X.ring)
    clauses = [
        Clause("additive", ("x", "y"), lambda x, y: op(X.add(x, y)), lambda x, y: Y.add(op(x), op(y)), Y),
        Clause("homogeneous", ("c", "x"), lambda c, x: op(X.scale(c, x)), lambda c, x: Y.scale(c, op(x)), Y),
    ]
    variables = [Variable("x", X), Variable("y", X), Variable("c", scalars)]
    return check_law(f"linearity[{op.name}]", variables, clauses, **kw)


@dataclass(eq=False)
class FtcPair:
    """A derivation D: A -> M and an integration P: M -> A over an A-module M."""

    name: str
    algebra: Algebra
    module: Carrier
    action: Callable
    D: LinearOperator
    P: LinearOperator
    reports: dict = field(default_factory=dict, repr=False)

    @cached_property
    def E(self) -> LinearOperator:
        return constant_projector(self)

    @cached_property
    def kernel(self) -> KernelSubalgebra:
        return KernelSubalgebra(self.algebra, self.E, name=f"ker(D) in {self.algebra.name}")

    @property
    def ring(self) -> Ring:
        return self.algebra.ring


def constant_projector(pair: FtcPair) -> LinearOperator:
    A, P, D = pair.algebra, pair.P, pair.D
    return LinearOperator("E", A, A, lambda a: A.sub(a, P(D(a))))


# polynomial pair ------------------------------------------------------------


def _poly_map(p: Polynomial, fn) -> Polynomial:
    out = {}
    for d, c in p.coeffs.items():
        for d2, c2 in fn(d, c):
            out[d2] = out[d2] + c2 if d2 in out else c2
    return Polynomial._raw(out, p.ring)


def poly_derivation(ring: Ring = QQ, algebra: PolynomialRing | None = None) -> LinearOperator:
    A = algebra or PolynomialRing(ring)
    r = A.ring
    return LinearOperator("d/dx", A, A, lambda p: _poly_map(p, lambda d, c: [(d - 1, r.from_int(d) * c)] if d else []))


def poly_integration(ring: Ring = QQ, algebra: PolynomialRing | None = None) -> LinearOperator:
    """x^n -> x^(n+1)/(n+1); needs n+1 invertible in the ring, else NotInvertibleError on evaluation."""
    A = algebra or PolynomialRing(ring)
    r = A.ring
    return LinearOperator(
        "∫", A, A, lambda p: _poly_map(p, lambda d, c: [(d + 1, c * r.invert(r.from_int(d + 1)))])
    )


def module_product(algebra: Algebra) -> Callable:
    return algebra.mul


def poly_pair(ring: Ring = QQ) -> FtcPair:
    A = PolynomialRing(ring)
    return FtcPair("poly-ftc", A, A, A.mul, poly_derivation(algebra=A), poly_integration(algebra=A))


# Hurwitz pair ---------------------------------------------------------------


def hurwitz_shift_left(H: HurwitzAlgebra) -> LinearOperator:
    return LinearOperator("shift-left", H, H, shift_left)


def hurwitz_shift_right(H: HurwitzAlgebra) -> LinearOperator:
    return LinearOperator("shift-right", H, H, shift_right)


def hurwitz_pair(base: Algebra | None = None, name: str = "hurwitz-ftc", product: str = "hurwitz") -> FtcPair:
    H = HurwitzAlgebra(base, product)
    return FtcPair(name, H, H, H.mul, hurwitz_shift_left(H), hurwitz_shift_right(H))


# shuffle pair ---------------------------------------------------------------


def shuffle_action(s: TensorSum, w: TensorSum) -> TensorSum:
    """Sh(V) acting on Sh+(V): (c·1 + t)·w = c·w + w ◁ t."""
    return w * s.unit + zinbiel_product(w, s.reduced_part)


def shuffle_pair(basis_size: int = 3, ring: Ring = QQ) -> FtcPair:
    A = ShuffleAlgebra(basis_size, ring)
    M = ShuffleAlgebra(basis_size, ring, reduced=True)
    D = LinearOperator("proj+", A, M, lambda s: s.reduced_part)
    P = LinearOperator("incl", M, A, lambda w: w)
    return FtcPair("shuffle-ftc", A, M, shuffle_action, D, P)


# law checks -----------------------------------------------------------------


def check_leibniz(D: LinearOperator, action: Callable, **kw) -> LawReport:
    A, M = D.domain, D.codomain
    clause = Clause(
        "D(ab) = aD(b) + bD(a)",
        ("a", "b"),
        lambda a, b: D(A.mul(a, b)),
        lambda a, b: M.add(action(a, D(b)), action(b, D(a))),
        M,
    )
    return check_law("leibniz", [Variable("a", A), Variable("b", A)], [clause], **kw)


def check_rota_baxter(P: LinearOperator, action: Callable, **kw) -> LawReport:
    M, A = P.domain, P.codomain
    clause = Clause(
        "P(m)P(n) = P(P(m)n) + P(P(n)m)",
        ("m", "n"),
        lambda m, n: A.mul(P(m), P(n)),
        lambda m, n: A.add(P(action(P(m), n)), P(action(P(n), m))),
        A,
    )
    return check_law("rota-baxter", [Variable("m", M), Variable("n", M)], [clause], **kw)


def check_ftc1(pair: FtcPair, **kw) -> LawReport:
    D, P = pair.D, pair.P
    clause = Clause("D(P(m)) = m", ("m",), lambda m: D(P(m)), lambda m: m, pair.module)
    return check_law("ftc1", [Variable("m", pair.module)], [clause], **kw)


def _ftc2_clauses(pair: FtcPair) -> list[Clause]:
    A, M, E, D = pair.algebra, pair.module, pair.E, pair.D
    return [
        Clause("E(E(a)) = E(a)", ("a",), lambda a: E(E(a)), E, A),
        Clause("E(1) = 1", (), lambda: E(A.one()), A.one, A),
        Clause("E(ab) = E(a)E(b)", ("a", "b"), lambda a, b: E(A.mul(a, b)), lambda a, b: A.mul(E(a), E(b)), A),
        Clause("D(E(a)) = 0", ("a",), lambda a: D(E(a)), lambda a: M.zero(), M),
    ]


def _hybrid_clauses(pair: FtcPair) -> list[Clause]:
    A, D, P, act = pair.algebra, pair.D, pair.P, pair.action

    def PD(a):
        return P(D(a))

    return [
        Clause(
            "P(D(a))P(D(b)) + P(D(ab)) = aP(D(b)) + bP(D(a))",
            ("a", "b"),
            lambda a, b: A.add(A.mul(PD(a), PD(b)), PD(A.mul(a, b))),
            lambda a, b: A.add(A.mul(a, PD(b)), A.mul(b, PD(a))),
            A,
        ),
        Clause("D(P(D(a))) = D(a)", ("a",), lambda a: D(PD(a)), D, pair.module),
    ]


def _pair_variables(pair: FtcPair):
    return [Variable("a", pair.algebra), Variable("b", pair.algebra)]


def check_ftc2(pair: FtcPair, **kw) -> LawReport:
    """FTC2 through its E-criterion: E idempotent, unital, multiplicative and killed by D."""
    return check_law("ftc2", _pair_variables(pair), _ftc2_clauses(pair), **kw)


def check_hybrid_rb(pair: FtcPair, **kw) -> LawReport:
    return check_law("hybrid-rota-baxter", _pair_variables(pair), _hybrid_clauses(pair), **kw)


def check_ftc2_equivalence(
    pair: FtcPair, *, seed: int = 0, samples: int = 500, exhaustive=True, workers=None, reports=None
) -> LawReport:
    """Runs the E-criterion and the hybrid criterion on one tuple stream and compares verdicts.

    ``reports`` may carry the ftc2 and hybrid reports of a :func:`law_suite`
    run with the same seed and budget; they were computed on the same stream
    and are reused instead of recomputed.
    """
    known = {r.law: r for r in reports or ()}
    variables = _pair_variables(pair)
    if "ftc2" in known and "hybrid-rota-baxter" in known:
        e_crit, hybrid = known["ftc2"], known["hybrid-rota-baxter"]
        n = max(e_crit.samples, hybrid.samples)
    else:
        stream = tuple_stream(variables, seed, samples, exhaustive)
        e_crit = check_law("ftc2", variables, _ftc2_clauses(pair), seed=seed, stream=stream, workers=workers)
        hybrid = check_law("hybrid-rota-baxter", variables, _hybrid_clauses(pair), seed=seed, stream=stream, workers=workers)
        n = len(stream)
    details = {"ftc2": e_crit.status, "hybrid-rota-baxter": hybrid.status}
    if e_crit.status == hybrid.status:
        return LawReport("ftc2-equivalence", HOLDS, n, seed, None, details)
    bad = e_crit if e_crit.witness else hybrid
    return LawReport("ftc2-equivalence", VIOLATED, n, seed, bad.witness, details, bad.clauses)


def check_augmented(pair: FtcPair, **kw) -> LawReport:
    """E(a) = e(a)·1 for a scalar e(a); the right side is the projection of E(a) onto k·1."""
    A, E = pair.algebra, pair.E
    clause = Clause("E(a) = e(a)1", ("a",), E, lambda a: A.scalar_part(E(a)), A)
    report = check_law("augmented", [Variable("a", A)], [clause], **kw)
    report.details["augmentation"] = "e(a) = coefficient of 1 in E(a)" if report.holds else None
    return report


def augmentation(pair: FtcPair) -> Callable:
    """The map e: A -> k with E(a) = e(a)·1 (raises ValueError where E(a) is not scalar)."""

    def e(a):
        c = pair.algebra.as_scalar(pair.E(a))
        if c is None:
            raise ValueError(f"E({pair.algebra.format(a)}) is not a multiple of 1")
        return c

    return e


def check_ftc_morphism(f: LinearOperator, g: LinearOperator, src: FtcPair, dst: FtcPair, **kw) -> LawReport:
    A, C, N = src.algebra, dst.algebra, dst.module
    clauses = [
        Clause("f(1) = 1", (), lambda: f(A.one()), C.one, C),
        Clause("f(ab) = f(a)f(b)", ("a", "b"), lambda a, b: f(A.mul(a, b)), lambda a, b: C.mul(f(a), f(b)), C),
        Clause("g(am) = f(a)g(m)", ("a", "m"), lambda a, m: g(src.action(a, m)), lambda a, m: dst.action(f(a), g(m)), N),
        Clause("g(D(a)) = B(f(a))", ("a",), lambda a: g(src.D(a)), lambda a: dst.D(f(a)), N),
        Clause("f(P(m)) = Q(g(m))", ("m",), lambda m: f(src.P(m)), lambda m: dst.P(g(m)), C),
    ]
    variables = [Variable("a", A), Variable("b", A), Variable("m", src.module)]
    return check_law("ftc-morphism", variables, clauses, **kw)


def check_kernel_linearity(pair: FtcPair, **kw) -> LawReport:
    """P(c·m) = c·P(m) for E-fixed c."""
    A, P, act = pair.algebra, pair.P, pair.action
    clause = Clause("P(cm) = cP(m)", ("c", "m"), lambda c, m: P(act(c, m)), lambda c, m: A.mul(c, P(m)), A)
    return check_law("kernel-linearity", [Variable("c", pair.kernel), Variable("m", pair.module)], [clause], **kw)


def check_action(pair: FtcPair, **kw) -> LawReport:
    A, act = pair.algebra, pair.action
    clauses = [
        Clause("1m = m", ("m",), lambda m: act(A.one(), m), lambda m: m, pair.module),
        Clause("(ab)m = a(bm)", ("a", "b", "m"), lambda a, b, m: act(A.mul(a, b), m), lambda a, b, m: act(a, act(b, m)), pair.module),
    ]
    variables = [Variable("a", A), Variable("b", A), Variable("m", pair.module)]
    return check_law("module-action", variables, clauses, **kw)


LAW_NAMES = ("leibniz", "rota-baxter", "ftc1", "ftc2", "hybrid-rota-baxter")


def law_suite(pair: FtcPair, **kw) -> list[LawReport]:
    """The five laws of an FTC-pair, in a fixed order."""
    reports = [
        check_leibniz(pair.D, pair.action, **kw),
        check_rota_baxter(pair.P, pair.action, **kw),
        check_ftc1(pair, **kw),
        check_ftc2(pair, **kw),
        check_hybrid_rb(pair, **kw),
    ]
    pair.reports[kw.get("seed", 0)] = reports
    return reports
