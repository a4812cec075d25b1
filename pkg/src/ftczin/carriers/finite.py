"""Commutative algebras presented on a finite monomial basis with structure constants."""

from __future__ import annotations

import re

from ..rings import QQ, Ring
from .base import Algebra
from .text import ParseError, format_linear_combination, parse_linear_combination


class BasisOverflowError(ArithmeticError):
    """A letter product is not covered by the structure-constant table."""

    def __init__(self, i: int, j: int, algebra: "FiniteAlgebra"):
        self.pair = (i, j)
        super().__init__(
            f"product of basis elements {algebra.names[i]} and {algebra.names[j]} "
            f"is outside the structure table of {algebra.name}"
        )


class FiniteAlgebra(Algebra):
    """Elements are tuples of ``dim`` coefficients.

    ``table[(i, j)]`` maps the product e_i * e_j to a dict {k: coefficient}.
    A missing pair means the product escapes the presented basis.
    """

    sample_density = 0.5

    def __init__(self, ring: Ring, dim: int, table: dict, unit: dict, names=None, name=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.ring = ring
        self.dim = dim
        self.table = {}
        for (i, j), prod in table.items():
            self.table[(i, j)] = {k: ring.coerce(v) for k, v in prod.items() if v != 0}
        self.unit = {k: ring.coerce(v) for k, v in unit.items() if v != 0}
        self.names = list(names) if names else [f"e{i}" for i in range(dim)]
        self.name = name or f"FiniteAlgebra(dim={dim})"

    @classmethod
    def truncated_polynomial(cls, d: int = 4, ring: Ring = QQ, var: str = "y") -> "FiniteAlgebra":
        """k[y]/(y^d) on the basis 1, y, ..., y^(d-1)."""
        table = {}
        for i in range(d):
            for j in range(d):
                table[(i, j)] = {i + j: 1} if i + j < d else {}
        names = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, d)]
        return cls(ring, d, table, {0: 1}, names, name=f"{ring.tag}[{var}]/({var}^{d})")

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAlgebra)
            and (self.ring, self.dim, self.names) == (other.ring, other.dim, other.names)
            and self.table == other.table
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash(("finite", self.ring, self.dim, tuple(self.names)))

    def letter_product(self, i: int, j: int) -> dict:
        try:
            return self.table[(i, j)]
        except KeyError:
            raise BasisOverflowError(i, j, self) from None

    def element(self, coords: dict) -> tuple:
        zero = self.ring.zero()
        return tuple(self.ring.coerce(coords.get(k, zero)) for k in range(self.dim))

    def basis_element(self, i: int) -> tuple:
        return self.element({i: 1})

    def zero(self):
        return (self.ring.zero(),) * self.dim

    def one(self):
        return self.element(self.unit)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(c * a for a in x)

    def mul(self, x, y):
        out = list(self.zero())
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                ab = a * b
                for k, c in self.letter_product(i, j).items():
                    out[k] = out[k] + ab * c
        return tuple(out)

    def as_scalar(self, x):
        # x = c * unit for some c?
        if all(a == 0 for a in x):
            return self.ring.zero()
        k0 = min(self.unit)
        c = self.ring.div(x[k0], self.unit[k0]) if self.ring.is_invertible(self.unit[k0]) else None
        if c is None:
            return None
        return c if self.scale(c, self.one()) == x else None

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == self.dim and all(self.ring.contains(a) for a in x)

    def _terms(self, x):
        for k in reversed(range(self.dim)):
            if x[k] != 0:
                yield x[k], (None if self.names[k] == "1" else self.names[k])

    def format(self, x):
        return format_linear_combination(self._terms(x), self.ring)

    def parse(self, text):
        names = sorted((n for n in self.names if n != "1"), key=len, reverse=True)
        pattern = "|".join(re.escape(n) for n in names) or r"(?!)"
        coords: dict[int, object] = {}
        for coef, mono in parse_linear_combination(text, rf"(?:{pattern})", self.ring):
            if mono is None:
                if "1" not in self.names:
                    raise ParseError("bare scalar in an algebra without a '1' basis name", text, 0)
                k = self.names.index("1")
            else:
                k = self.names.index(mono)
            coords[k] = coords.get(k, self.ring.zero()) + coef
        return self.element(coords)

    def sample(self, rng):
        return tuple(
            self.ring.random(rng) if rng.random() < self.sample_density else self.ring.zero()
            for _ in range(self.dim)
        )

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def coordinates(self, x):
        return {k: a for k, a in enumerate(x) if a != 0}

    def from_coordinates(self, coords):
        return self.element(coords)
