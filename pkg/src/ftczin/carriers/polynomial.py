"""Sparse univariate polynomials k[x]."""

from __future__ import annotations

import re

from ..rings import QQ, Ring
from .base import Algebra, DescriptorMismatchError
from .text import format_linear_combination, parse_linear_combination


class Polynomial:
    """Immutable sparse polynomial: a map degree -> nonzero coefficient."""

    __slots__ = ("ring", "_c", "_hash")

    def __init__(self, coeffs: dict[int, object] | None = None, ring: Ring = QQ):
        c = {}
        for deg, coef in (coeffs or {}).items():
            if deg < 0:
                raise ValueError(f"negative degree {deg}")
            coef = ring.coerce(coef)
            if coef != 0:
                c[deg] = coef
        self.ring = ring
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict, ring: Ring) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p._c = {d: v for d, v in c.items() if v != 0}
        p._hash = None
        return p

    @classmethod
    def monomial(cls, degree: int, coef=1, ring: Ring = QQ) -> "Polynomial":
        return cls({degree: coef}, ring)

    @property
    def coeffs(self) -> dict[int, object]:
        return dict(self._c)

    def coeff(self, degree: int):
        return self._c.get(degree, self.ring.zero())

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._c, default=-1)

    def items(self):
        return sorted(self._c.items(), reverse=True)

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise DescriptorMismatchError(f"cannot combine a polynomial with {other!r}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise DescriptorMismatchError(f"polynomials over {self.ring} and {other.ring}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial({0: self.ring.coerce(other)}, self.ring)

    def __add__(self, other):
        other = self._lift(other)
        c = dict(self._c)
        for d, v in other._c.items():
            c[d] = c[d] + v if d in c else v
        return Polynomial._raw(c, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({d: -v for d, v in self._c.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.coerce(other) if not self.ring.contains(other) else other
            return Polynomial._raw({d: c * v for d, v in self._c.items()}, self.ring)
        self._check(other)
        out: dict[int, object] = {}
        for d1, v1 in self._c.items():
            for d2, v2 in other._c.items():
                d = d1 + d2
                out[d] = out[d] + v1 * v2 if d in out else v1 * v2
        return Polynomial._raw(out, self.ring)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        result = Polynomial({0: 1}, self.ring)
        for _ in range(n):
            result = result * self
        return result

    def at_zero(self):
        return self.coeff(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._c == other._c and (self.ring is other.ring or self.ring == other.ring)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._c.items())))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __str__(self):
        return format_polynomial(self, "x")

    def __repr__(self):
        return f"Polynomial({self})"


def _mono(var: str, d: int) -> str | None:
    if d == 0:
        return None
    return var if d == 1 else f"{var}^{d}"


def format_polynomial(p: Polynomial, var: str = "x") -> str:
    return format_linear_combination(((v, _mono(var, d)) for d, v in p.items()), p.ring)


def parse_polynomial(text: str, ring: Ring = QQ, var: str = "x") -> Polynomial:
    terms = parse_linear_combination(text, rf"{var}(?:\^\d+)?", ring)
    c: dict[int, object] = {}
    for coef, mono in terms:
        if mono is None:
            d = 0
        else:
            m = re.fullmatch(rf"{var}(?:\^(\d+))?", mono)
            d = int(m.group(1)) if m.group(1) else 1
        c[d] = c[d] + coef if d in c else coef
    return Polynomial._raw(c, ring)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if not isinstance(q, Polynomial):
        raise DescriptorMismatchError("poly_mul expects two polynomials")
    return p * q


class PolynomialRing(Algebra):
    """The algebra k[x]."""

    max_sample_degree = 6
    max_sample_terms = 4
    exhaustive_degree = 3

    def __init__(self, ring: Ring = QQ, var: str = "x"):
        self.ring = ring
        self.var = var
        self.name = f"{ring.tag}[{var}]"

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and (self.ring, self.var) == (other.ring, other.var)

    def __hash__(self):
        return hash(("poly", self.ring, self.var))

    def x(self) -> Polynomial:
        return Polynomial({1: 1}, self.ring)

    def monomial(self, degree: int, coef=1) -> Polynomial:
        return Polynomial({degree: coef}, self.ring)

    def zero(self):
        return Polynomial({}, self.ring)

    def one(self):
        return Polynomial({0: 1}, self.ring)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scale(self, c, x):
        return x * c

    def mul(self, x, y):
        return x * y

    def as_scalar(self, x):
        if x.degree <= 0:
            return x.coeff(0)
        return None

    def contains(self, x):
        return isinstance(x, Polynomial) and x.ring == self.ring

    def format(self, x):
        return format_polynomial(x, self.var)

    def parse(self, text):
        return parse_polynomial(text, self.ring, self.var)

    def sample(self, rng):
        nterms = rng.randint(0, self.max_sample_terms)
        c = {}
        for _ in range(nterms):
            c[rng.randint(0, self.max_sample_degree)] = self.ring.random(rng)
        return Polynomial._raw(c, self.ring)

    def basis(self):
        return [self.monomial(d) for d in range(self.exhaustive_degree + 1)]

    def coordinates(self, x):
        return dict(x._c)

    def from_coordinates(self, coords):
        return Polynomial._raw(dict(coords), self.ring)

    def graded_basis(self, degree):
        return [self.monomial(degree)]

    def grade_of_key(self, key):
        return key
