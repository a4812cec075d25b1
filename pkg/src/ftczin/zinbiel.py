"""Zinbiel algebras over a commutative base algebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Callable

from .calculus import LinearOperator, check_rota_baxter
from .carriers import Algebra, Carrier, ScalarAlgebra, ShuffleAlgebra, TensorSum, zinbiel_product
from .carriers.tensor import _bilinear, require_reduced
from .laws import Clause, LawReport, Variable, check_law
from .rings import QQ, Ring


class InvalidIntegrationError(ValueError):
    def __init__(self, report: LawReport):
        self.report = report
        super().__init__(f"not an integration:\n{report}")


class InvalidZinbielError(ValueError):
    def __init__(self, reports: list[LawReport]):
        self.reports = reports
        failed = "\n".join(str(r) for r in reports if not r.holds)
        super().__init__(f"not a Zinbiel algebra:\n{failed}")


@dataclass(eq=False)
class ZinbielInstance:
    """``zin(x, y)`` is x ◁ y; ``action(a, x)`` is the base algebra acting on the carrier."""

    name: str
    base: Algebra
    carrier: Carrier
    action: Callable
    zin: Callable

    def star(self, x, y):
        return symmetrized_product(self, x, y)


@dataclass(eq=False)
class ZinMorphism:
    f: LinearOperator
    g: LinearOperator
    src: ZinbielInstance
    dst: ZinbielInstance

    def compose(self, inner: "ZinMorphism") -> "ZinMorphism":
        """``self ∘ inner``."""
        return ZinMorphism(self.f.compose(inner.f), self.g.compose(inner.g), inner.src, self.dst)


def symmetrized_product(z: ZinbielInstance, x, y):
    return z.carrier.add(z.zin(x, y), z.zin(y, x))


def scalar_action(carrier: Carrier) -> Callable:
    return lambda c, x: carrier.scale(c, x)


def zinbiel_from_integration(
    P: LinearOperator, action: Callable, name: str | None = None, verify: bool = True, **kw
) -> ZinbielInstance:
    """The k-Zinbiel algebra (M, ◁_P) with m ◁_P n = P(n)·m."""
    if verify:
        report = check_rota_baxter(P, action, **kw)
        if not report.holds:
            raise InvalidIntegrationError(report)
    M = P.domain
    return ZinbielInstance(
        name or f"zin[{P.name}]",
        ScalarAlgebra(M.ring),
        M,
        scalar_action(M),
        lambda m, n: action(P(n), m),
    )


def shuffle_zinbiel(basis_size: int = 3, ring: Ring = QQ) -> ZinbielInstance:
    if basis_size < 1:
        raise ValueError("basis size must be positive")
    Z = ShuffleAlgebra(basis_size, ring, reduced=True)
    return ZinbielInstance("shuffle-zinbiel", ScalarAlgebra(ring), Z, scalar_action(Z), zinbiel_product)


def _concatenation_words(u, v):
    # keeps only the interleaving that puts the whole tail before v
    return (((u[0],) + u[1:] + v, 1),)


def truncated_zinbiel_product(s: TensorSum, t: TensorSum) -> TensorSum:
    """u ◁ v with every shuffle summand but one dropped (a deliberately wrong operator)."""
    require_reduced(s)
    require_reduced(t)
    return _bilinear(s, t, _concatenation_words, unit_rule=False)


def mutated_shuffle_zinbiel(basis_size: int = 3, ring: Ring = QQ) -> ZinbielInstance:
    z = shuffle_zinbiel(basis_size, ring)
    z.name = "shuffle-zinbiel-dropped-summand"
    z.zin = truncated_zinbiel_product
    return z


# checks ---------------------------------------------------------------------


def _triple(z: ZinbielInstance):
    Z = z.carrier
    return [Variable("x", Z), Variable("y", Z), Variable("z", Z)]


def check_zinbiel_identity(z: ZinbielInstance, **kw) -> LawReport:
    Z, op = z.carrier, z.zin
    clause = Clause(
        "(x◁y)◁z = x◁(y◁z) + x◁(z◁y)",
        ("x", "y", "z"),
        lambda x, y, w: op(op(x, y), w),
        lambda x, y, w: Z.add(op(x, op(y, w)), op(x, op(w, y))),
        Z,
    )
    return check_law("zinbiel-identity", _triple(z), [clause], **kw)


def check_bilinearity(z: ZinbielInstance, **kw) -> LawReport:
    """c(x◁y) = (cx)◁y = x◁(cy) for c drawn from the base (its membership predicate)."""
    op, act = z.zin, z.action
    clauses = [
        Clause("c(x◁y) = (cx)◁y", ("c", "x", "y"), lambda c, x, y: act(c, op(x, y)), lambda c, x, y: op(act(c, x), y), z.carrier),
        Clause("c(x◁y) = x◁(cy)", ("c", "x", "y"), lambda c, x, y: act(c, op(x, y)), lambda c, x, y: op(x, act(c, y)), z.carrier),
        Clause("biadditive", ("x", "y", "w"), lambda x, y, w: op(z.carrier.add(x, w), y), lambda x, y, w: z.carrier.add(op(x, y), op(w, y)), z.carrier),
    ]
    variables = [Variable("c", z.base), Variable("x", z.carrier), Variable("y", z.carrier), Variable("w", z.carrier)]
    return check_law("bilinearity", variables, clauses, **kw)


def _memoised(fn: Callable) -> Callable:
    memo: dict = {}

    def call(x, y):
        try:
            return memo[x, y]
        except KeyError:
            r = memo[x, y] = fn(x, y)
            return r
        except TypeError:  # unhashable operand
            return fn(x, y)

    return call


def check_symmetrized(z: ZinbielInstance, **kw) -> LawReport:
    Z = z.carrier
    star = _memoised(lambda x, y: symmetrized_product(z, x, y))

    clauses = [
        Clause("x*y = y*x", ("x", "y"), star, lambda x, y: star(y, x), Z),
        Clause("(x*y)*z = x*(y*z)", ("x", "y", "z"), lambda x, y, w: star(star(x, y), w), lambda x, y, w: star(x, star(y, w)), Z),
    ]
    return check_law("symmetrized-product", _triple(z), clauses, **kw)


def check_zin_morphism(m: ZinMorphism, **kw) -> LawReport:
    f, g, src, dst = m.f, m.g, m.src, m.dst
    A, B, Z2 = src.base, dst.base, dst.carrier
    clauses = [
        Clause("f(1) = 1", (), lambda: f(A.one()), B.one, B),
        Clause("f(ab) = f(a)f(b)", ("a", "b"), lambda a, b: f(A.mul(a, b)), lambda a, b: B.mul(f(a), f(b)), B),
        Clause("g(x◁y) = g(x)◁g(y)", ("x", "y"), lambda x, y: g(src.zin(x, y)), lambda x, y: dst.zin(g(x), g(y)), Z2),
        Clause("g(ax) = f(a)g(x)", ("a", "x"), lambda a, x: g(src.action(a, x)), lambda a, x: dst.action(f(a), g(x)), Z2),
    ]
    variables = [Variable("a", A), Variable("b", A), Variable("x", src.carrier), Variable("y", src.carrier)]
    return check_law("zin-morphism", variables, clauses, **kw)


def zinbiel_suite(z: ZinbielInstance, **kw) -> list[LawReport]:
    # the three checks draw the same samples, so they share products
    z = replace(z, zin=_memoised(z.zin))
    return [check_zinbiel_identity(z, **kw), check_bilinearity(z, **kw), check_symmetrized(z, **kw)]


def word_triples(basis_size: int, max_total: int):
    """All triples of nonempty words with total length <= max_total."""
    for total in range(3, max_total + 1):
        for l1 in range(1, total - 1):
            for l2 in range(1, total - l1):
                for letters in itertools.product(range(basis_size), repeat=total):
                    yield letters[:l1], letters[l1 : l1 + l2], letters[l1 + l2 :]

