"""Carrier descriptors.

A carrier is the descriptor of a k-module (and possibly a commutative
k-algebra): it knows how to add, scale, multiply, print, parse and sample
its elements.  Elements themselves are immutable values in canonical form,
so equality of elements is plain ``==``.
"""

from __future__ import annotations

from typing import Any, Hashable, Iterable

from ..rings import Ring


class DescriptorMismatchError(TypeError):
    pass


class Carrier:
    ring: Ring
    name: str = "carrier"

    # k-module structure

    def zero(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        return self.scale(self.ring.from_int(-1), x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scale(self, c, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def contains(self, x) -> bool:
        raise NotImplementedError

    def sum(self, xs: Iterable):
        total = self.zero()
        for x in xs:
            total = self.add(total, x)
        return total

    # text

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    # sampling and coordinates

    def sample(self, rng):
        raise NotImplementedError

    def basis(self) -> list:
        """Small basis elements used for exhaustive law checks."""
        raise NotImplementedError

    def coordinates(self, x) -> dict[Hashable, Any]:
        """Coordinates of ``x`` in the carrier's monomial basis (nonzero entries only)."""
        raise NotImplementedError

    # graded structure, for carriers that have one

    def graded_basis(self, degree: int) -> list:
        raise NotImplementedError(f"{self.name} is not graded")

    def grade_of_key(self, key) -> int:
        raise NotImplementedError(f"{self.name} is not graded")

    def from_coordinates(self, coords: dict) -> Any:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class Algebra(Carrier):
    """A commutative k-algebra (unital unless ``unital`` is False)."""

    unital = True

    def one(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def as_scalar(self, x):
        """Return c if ``x == c*1`` for a scalar c, else None."""
        raise NotImplementedError

    def from_scalar(self, c):
        return self.scale(c, self.one())

    def scalar_part(self, x):
        """Projection of ``x`` onto k·1 along the other monomials."""
        one = self.coordinates(self.one())
        if len(one) != 1:
            raise NotImplementedError(f"{self.name} has no single-monomial unit")
        (key, u), = one.items()
        c = self.coordinates(x).get(key, self.ring.zero())
        return self.scale(self.ring.div(c, u), self.one())


class ScalarAlgebra(Algebra):
    """The base ring k viewed as a k-algebra; elements are bare scalars."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.name = f"k[{ring.tag}]"

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scale(self, c, x):
        return c * x

    def mul(self, x, y):
        return x * y

    def as_scalar(self, x):
        return x

    def contains(self, x):
        return self.ring.contains(x)

    def format(self, x):
        return self.ring.format_coeff(x)

    def parse(self, text):
        return self.ring.parse(text)

    def sample(self, rng):
        return self.ring.random(rng)

    def basis(self):
        return [self.ring.one()]

    def coordinates(self, x):
        return {} if x == self.ring.zero() else {0: x}

    def from_coordinates(self, coords):
        return coords.get(0, self.ring.zero())

    def graded_basis(self, degree):
        return [self.ring.one()] if degree == 0 else []

    def grade_of_key(self, key):
        return 0

    def __eq__(self, other):
        return self is other or (isinstance(other, ScalarAlgebra) and other.ring == self.ring)

    def __hash__(self):
        return hash(("scalar", self.ring))


class _Zero:
    __slots__ = ()

    def __repr__(self):
        return "0"

    __str__ = __repr__


ZERO = _Zero()


class ZeroModule(Carrier):
    """The zero module {0}."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.name = "0"

    def zero(self):
        return ZERO

    def add(self, x, y):
        return ZERO

    def neg(self, x):
        return ZERO

    def scale(self, c, x):
        return ZERO

    def contains(self, x):
        return x is ZERO

    def format(self, x):
        return "0"

    def parse(self, text):
        if text.strip() != "0":
            from .text import ParseError

            raise ParseError("the zero module only contains 0", text, 0)
        return ZERO

    def sample(self, rng):
        return ZERO

    def basis(self):
        return []

    def coordinates(self, x):
        return {}

    def from_coordinates(self, coords):
        return ZERO

    def graded_basis(self, degree):
        return []
