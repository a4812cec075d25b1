"""Finite-support Hurwitz series H(A): sequences N -> A under the Hurwitz product.

The product is ``(fg)(n) = sum_k C(n, k) f(k) g(n - k)``.  With this product
the left shift is a derivation and the right shift an integration over any
coefficient ring, so no division is ever needed.
"""

from __future__ import annotations

from ..rings import QQ, binomial
from .base import Algebra, DescriptorMismatchError, ScalarAlgebra
from .text import ParseError, split_top_level


class HurwitzSeries:
    __slots__ = ("base", "entries")

    def __init__(self, entries, base: Algebra):
        entries = tuple(entries)
        n = len(entries)
        if n and entries[-1] == base.zero():
            zero = base.zero()
            while n and entries[n - 1] == zero:
                n -= 1
            entries = entries[:n]
        self.base = base
        self.entries = entries

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, n: int):
        if 0 <= n < len(self.entries):
            return self.entries[n]
        return self.base.zero()

    def _check(self, other):
        if not isinstance(other, HurwitzSeries) or (other.base is not self.base and other.base != self.base):
            raise DescriptorMismatchError("Hurwitz series over different base algebras")

    def __add__(self, other):
        self._check(other)
        n = max(len(self), len(other))
        return HurwitzSeries((self.base.add(self[i], other[i]) for i in range(n)), self.base)

    def __neg__(self):
        return HurwitzSeries((self.base.neg(a) for a in self.entries), self.base)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HurwitzSeries):
            return hurwitz_mul(self, other)
        c = self.base.ring.coerce(other)
        return HurwitzSeries((self.base.scale(c, a) for a in self.entries), self.base)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, HurwitzSeries):
            return self.entries == other.entries and (self.base is other.base or self.base == other.base)
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "(" + ", ".join(self.base.format(a) for a in self.entries) + ")"

    def __repr__(self):
        return f"HurwitzSeries{self}"


def hurwitz_mul(f: HurwitzSeries, g: HurwitzSeries) -> HurwitzSeries:
    f._check(g)
    if not f.entries or not g.entries:
        return HurwitzSeries((), f.base)
    base = f.base
    ring = base.ring
    fe, ge = f.entries, g.entries
    zero = base.zero()
    out = []
    if isinstance(base, ScalarAlgebra):
        # every scalar type multiplies by a plain int and is falsy at zero
        fnz = [k for k, a in enumerate(fe) if a]
        for n in range(len(fe) + len(ge) - 1):
            total = zero
            for k in fnz:
                if k > n:
                    break
                j = n - k
                if j < len(ge) and ge[j]:
                    total = total + fe[k] * ge[j] * binomial(n, k)
            out.append(total)
        return HurwitzSeries(out, base)
    fnz = [k for k, a in enumerate(fe) if a != zero]
    for n in range(len(fe) + len(ge) - 1):
        total = zero
        for k in fnz:
            if k > n:
                break
            j = n - k
            if j >= len(ge):
                continue
            term = base.mul(fe[k], ge[j])
            c = binomial(n, k)
            if c != 1:
                term = base.scale(ring.from_int(c), term)
            total = base.add(total, term)
        out.append(total)
    return HurwitzSeries(out, base)


def cauchy_mul(f: HurwitzSeries, g: HurwitzSeries) -> HurwitzSeries:
    """Plain convolution without binomial weights (ordinary power-series product)."""
    f._check(g)
    base = f.base
    out = []
    for n in range(max(len(f) + len(g) - 1, 0)):
        total = base.zero()
        for k in range(max(0, n - len(g) + 1), min(n, len(f) - 1) + 1):
            total = base.add(total, base.mul(f.entries[k], g.entries[n - k]))
        out.append(total)
    return HurwitzSeries(out, base)


def shift_left(f: HurwitzSeries) -> HurwitzSeries:
    return HurwitzSeries(f.entries[1:], f.base)


def shift_right(f: HurwitzSeries) -> HurwitzSeries:
    if not f.entries:
        return f
    return HurwitzSeries((f.base.zero(),) + f.entries, f.base)


class HurwitzAlgebra(Algebra):
    """H(A) over a base algebra A (a :class:`ScalarAlgebra` or a finite algebra)."""

    max_support = 5
    exhaustive_length = 3

    def __init__(self, base: Algebra | None = None, product: str = "hurwitz"):
        self.base = base if base is not None else ScalarAlgebra(QQ)
        self.ring = self.base.ring
        self.product = product
        self._mul = hurwitz_mul if product == "hurwitz" else cauchy_mul
        self.name = f"H({self.base.name})" if product == "hurwitz" else f"Cauchy({self.base.name})"

    def __eq__(self, other):
        return isinstance(other, HurwitzAlgebra) and (self.base, self.product) == (other.base, other.product)

    def __hash__(self):
        return hash(("hurwitz", self.base, self.product))

    def series(self, *entries) -> HurwitzSeries:
        return HurwitzSeries((self._coerce_entry(a) for a in entries), self.base)

    def _coerce_entry(self, a):
        if isinstance(self.base, ScalarAlgebra):
            return self.ring.coerce(a)
        return a

    def unit_vector(self, n: int, a=None) -> HurwitzSeries:
        a = self.base.one() if a is None else a
        return HurwitzSeries([self.base.zero()] * n + [a], self.base)

    def zero(self):
        return HurwitzSeries((), self.base)

    def one(self):
        return HurwitzSeries((self.base.one(),), self.base)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scale(self, c, x):
        return HurwitzSeries((self.base.scale(c, a) for a in x.entries), self.base)

    def mul(self, x, y):
        return self._mul(x, y)

    def as_scalar(self, x):
        if len(x) > 1:
            return None
        return self.base.as_scalar(x[0])

    def contains(self, x):
        return isinstance(x, HurwitzSeries) and x.base == self.base and all(
            self.base.contains(a) for a in x.entries
        )

    def format(self, x):
        return "(" + ", ".join(self.base.format(a) for a in x.entries) + ")"

    def parse(self, text):
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ParseError("Hurwitz series must be written (a0, a1, ...)", text, 0)
        inner = s[1:-1]
        if not inner.strip():
            return self.zero()
        return HurwitzSeries((self.base.parse(part) for part in split_top_level(inner, ",")), self.base)

    def sample(self, rng):
        n = rng.randint(0, self.max_support)
        return HurwitzSeries((self.base.sample(rng) for _ in range(n)), self.base)

    def basis(self):
        return [self.unit_vector(n, b) for n in range(self.exhaustive_length) for b in self.base.basis()]

    def coordinates(self, x):
        out = {}
        for n, a in enumerate(x.entries):
            for k, c in self.base.coordinates(a).items():
                out[(n, k)] = c
        return out

    def from_coordinates(self, coords):
        if not coords:
            return self.zero()
        length = max(n for n, _ in coords) + 1
        per = [dict() for _ in range(length)]
        for (n, k), c in coords.items():
            per[n][k] = c
        return HurwitzSeries((self.base.from_coordinates(d) for d in per), self.base)

    def graded_basis(self, degree):
        return [self.unit_vector(degree, b) for b in self.base.basis()]

    def grade_of_key(self, key):
        return key[0]
