"""Subcarriers cut out by a projector E.

Two different kernels appear in the theory and are kept apart here:

* :class:`KernelSubalgebra` is ker(D) of an FTC-pair, realised as the fixed
  points of E = id - P∘D (``kerD_fixedpoints``).
* :class:`AnnihilatedSubmodule` is ker(E) for the derivation construction,
  the elements that E sends to zero (``kerE_annihilated``).
"""

from __future__ import annotations

from .base import Algebra, Carrier
from .text import ParseError


def _unique_nonzero(carrier, xs):
    out = []
    for x in xs:
        if not carrier.is_zero(x) and x not in out:
            out.append(x)
    return out


def kerD_fixedpoints(E, x) -> bool:
    return E(x) == x


def kerE_annihilated(E, x, carrier) -> bool:
    return carrier.is_zero(E(x))


class KernelSubalgebra(Algebra):
    """The subalgebra {a : E(a) = a} of ``ambient``; operations are the ambient ones."""

    def __init__(self, ambient: Algebra, E, name: str | None = None):
        self.ambient = ambient
        self.E = E
        self.ring = ambient.ring
        self.name = name or f"ker(D) in {ambient.name}"

    def __eq__(self, other):
        return isinstance(other, KernelSubalgebra) and other.ambient == self.ambient and other.E is self.E

    def __hash__(self):
        return hash(("ker", self.ambient, id(self.E)))

    def zero(self):
        return self.ambient.zero()

    def one(self):
        return self.ambient.one()

    def add(self, x, y):
        return self.ambient.add(x, y)

    def neg(self, x):
        return self.ambient.neg(x)

    def sub(self, x, y):
        return self.ambient.sub(x, y)

    def scale(self, c, x):
        return self.ambient.scale(c, x)

    def mul(self, x, y):
        return self.ambient.mul(x, y)

    def as_scalar(self, x):
        return self.ambient.as_scalar(x)

    def contains(self, x):
        return self.ambient.contains(x) and kerD_fixedpoints(self.E, x)

    def format(self, x):
        return self.ambient.format(x)

    def parse(self, text):
        x = self.ambient.parse(text)
        if not self.contains(x):
            raise ParseError("element is not fixed by E", text, 0)
        return x

    def sample(self, rng):
        return self.E(self.ambient.sample(rng))

    def basis(self):
        return _unique_nonzero(self, (self.E(b) for b in self.ambient.basis()))

    def coordinates(self, x):
        return self.ambient.coordinates(x)

    def from_coordinates(self, coords):
        return self.ambient.from_coordinates(coords)


class AnnihilatedSubmodule(Carrier):
    """The submodule {x : E(x) = 0} of ``ambient``."""

    def __init__(self, ambient: Carrier, E, name: str | None = None):
        self.ambient = ambient
        self.E = E
        self.ring = ambient.ring
        self.name = name or f"ker(E) in {ambient.name}"

    def __eq__(self, other):
        return isinstance(other, AnnihilatedSubmodule) and other.ambient == self.ambient and other.E is self.E

    def __hash__(self):
        return hash(("ann", self.ambient, id(self.E)))

    def zero(self):
        return self.ambient.zero()

    def add(self, x, y):
        return self.ambient.add(x, y)

    def neg(self, x):
        return self.ambient.neg(x)

    def sub(self, x, y):
        return self.ambient.sub(x, y)

    def scale(self, c, x):
        return self.ambient.scale(c, x)

    def contains(self, x):
        return self.ambient.contains(x) and kerE_annihilated(self.E, x, self.ambient)

    def format(self, x):
        return self.ambient.format(x)

    def parse(self, text):
        x = self.ambient.parse(text)
        if not self.contains(x):
            raise ParseError("element is not annihilated by E", text, 0)
        return x

    def sample(self, rng):
        x = self.ambient.sample(rng)
        return self.ambient.sub(x, self.E(x))

    def basis(self):
        return _unique_nonzero(self, (self.ambient.sub(b, self.E(b)) for b in self.ambient.basis()))

    def coordinates(self, x):
        return self.ambient.coordinates(x)

    def from_coordinates(self, coords):
        return self.ambient.from_coordinates(coords)

    def graded_basis(self, degree):
        return _unique_nonzero(self, (self.ambient.sub(b, self.E(b)) for b in self.ambient.graded_basis(degree)))

    def grade_of_key(self, key):
        return self.ambient.grade_of_key(key)
