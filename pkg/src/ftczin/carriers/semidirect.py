"""The semidirect product A ⋊ Z of an algebra with a Zinbiel module.

``(a, x)(b, y) = (ab, a·y + b·x + x * y)`` where ``*`` is the symmetrized
product of the Zinbiel operator, and A ⋊ Z acts on Z by
``(a, x)·y = a·y + y ◁ x``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import Algebra, DescriptorMismatchError
from .text import ParseError, split_top_level


@dataclass(frozen=True)
class SemidirectElement:
    a: object
    z: object


def _symmetrized(zin, x, y):
    return zin.carrier.add(zin.zin(x, y), zin.zin(y, x))


def semidirect_mul(p: SemidirectElement, q: SemidirectElement, zin) -> SemidirectElement:
    """Product in A ⋊ Z for a Zinbiel instance ``zin`` (with base, carrier, action, zin)."""
    A, Z = zin.base, zin.carrier
    z = Z.add(Z.add(zin.action(p.a, q.z), zin.action(q.a, p.z)), _symmetrized(zin, p.z, q.z))
    return SemidirectElement(A.mul(p.a, q.a), z)


def semidirect_action(p: SemidirectElement, y, zin):
    Z = zin.carrier
    return Z.add(zin.action(p.a, y), zin.zin(y, p.z))


class SemidirectAlgebra(Algebra):
    def __init__(self, zin):
        self.zin = zin
        self.base = zin.base
        self.module = zin.carrier
        self.ring = self.base.ring
        if self.module.ring != self.ring:
            raise DescriptorMismatchError("semidirect parts over different rings")
        self.name = f"{self.base.name} ⋊ {self.module.name}"

    def __eq__(self, other):
        return isinstance(other, SemidirectAlgebra) and other.zin is self.zin

    def __hash__(self):
        return hash(("semidirect", id(self.zin)))

    def pair(self, a, z) -> SemidirectElement:
        return SemidirectElement(a, z)

    def _check(self, p):
        if not isinstance(p, SemidirectElement):
            raise DescriptorMismatchError(f"{p!r} is not a semidirect pair")

    def zero(self):
        return SemidirectElement(self.base.zero(), self.module.zero())

    def one(self):
        return SemidirectElement(self.base.one(), self.module.zero())

    def add(self, p, q):
        self._check(p)
        self._check(q)
        return SemidirectElement(self.base.add(p.a, q.a), self.module.add(p.z, q.z))

    def neg(self, p):
        return SemidirectElement(self.base.neg(p.a), self.module.neg(p.z))

    def scale(self, c, p):
        return SemidirectElement(self.base.scale(c, p.a), self.module.scale(c, p.z))

    def mul(self, p, q):
        self._check(p)
        self._check(q)
        return semidirect_mul(p, q, self.zin)

    def act(self, p, y):
        self._check(p)
        return semidirect_action(p, y, self.zin)

    def as_scalar(self, p):
        if not self.module.is_zero(p.z):
            return None
        return self.base.as_scalar(p.a)

    def contains(self, p):
        return isinstance(p, SemidirectElement) and self.base.contains(p.a) and self.module.contains(p.z)

    def format(self, p):
        return f"({self.base.format(p.a)} | {self.module.format(p.z)})"

    def parse(self, text):
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ParseError("semidirect pair must be written (a | z)", text, 0)
        parts = split_top_level(s[1:-1], "|")
        if len(parts) != 2:
            raise ParseError("semidirect pair needs exactly one '|'", text, 0)
        p = SemidirectElement(self.base.parse(parts[0]), self.module.parse(parts[1]))
        if not self.contains(p):
            raise ParseError("pair is outside the semidirect carrier", text, 0)
        return p

    def sample(self, rng):
        return SemidirectElement(self.base.sample(rng), self.module.sample(rng))

    def basis(self):
        zero_a, zero_z = self.base.zero(), self.module.zero()
        return [SemidirectElement(b, zero_z) for b in self.base.basis()] + [
            SemidirectElement(zero_a, z) for z in self.module.basis()
        ]

    def coordinates(self, p):
        out = {("a", k): c for k, c in self.base.coordinates(p.a).items()}
        out.update({("z", k): c for k, c in self.module.coordinates(p.z).items()})
        return out

    def from_coordinates(self, coords):
        a = {k: c for (side, k), c in coords.items() if side == "a"}
        z = {k: c for (side, k), c in coords.items() if side == "z"}
        return SemidirectElement(self.base.from_coordinates(a), self.module.from_coordinates(z))
