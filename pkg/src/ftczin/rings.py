"""Exact coefficient rings: rationals, integers and integers modulo m.

Rationals are ``gmpy2.mpq`` (exact and canonical, and hash-compatible with
:class:`fractions.Fraction`), integers are plain ``int`` and
residues are :class:`ModularScalar`.  Every ring is described by a
:class:`Ring` object which owns parsing, printing, coercion and inversion.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

_MPQ = type(mpq(0))


class ScalarError(ArithmeticError):
    pass


class ZeroDenominatorError(ScalarError, ZeroDivisionError):
    pass


class RingMismatchError(ScalarError, TypeError):
    pass


class NotInvertibleError(ScalarError):
    """Raised when an element has no multiplicative inverse in its ring."""

    def __init__(self, element, ring=None, message=None):
        self.element = element
        self.ring = ring
        if message is None:
            where = f" in {ring}" if ring is not None else ""
            message = f"{format_scalar(element)} is not invertible{where}"
        super().__init__(message)


class DivisionByZeroError(NotInvertibleError, ZeroDivisionError):
    pass


class ModularScalar:
    """An integer residue modulo ``modulus`` (modulus >= 2, not necessarily prime)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", value % modulus)

    def __setattr__(self, name, value):
        raise AttributeError("ModularScalar is immutable")

    def _other(self, other) -> int:
        if isinstance(other, ModularScalar):
            if other.modulus != self.modulus:
                raise RingMismatchError(
                    f"cannot combine residues mod {self.modulus} and mod {other.modulus}"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise RingMismatchError(f"cannot combine residue mod {self.modulus} with {other!r}")

    def __add__(self, other):
        return ModularScalar(self.value + self._other(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ModularScalar(self.value - self._other(other), self.modulus)

    def __rsub__(self, other):
        return ModularScalar(self._other(other) - self.value, self.modulus)

    def __mul__(self, other):
        return ModularScalar(self.value * self._other(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModularScalar(-self.value, self.modulus)

    def __eq__(self, other):
        if isinstance(other, ModularScalar):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"ModularScalar({self.value}, {self.modulus})"

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


Scalar = Union[_MPQ, int, ModularScalar]


def rational_normalize(num: int, den: int):
    if den == 0:
        raise ZeroDenominatorError(f"zero denominator in {num}/{den}")
    return mpq(num, den)


_INT = re.compile(r"\s*([+-]?\d+)\s*\Z")
_FRAC = re.compile(r"\s*([+-]?\d+)\s*/\s*(\d+)\s*\Z")
_MOD = re.compile(r"\s*([+-]?\d+)\s+mod\s+(\d+)\s*\Z")


class Ring:
    """Descriptor of a coefficient ring.  Rings compare equal by ``tag``."""

    tag: str = ""

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def coerce(self, x):
        """Bring an int (or an element already in this ring) into canonical form."""
        if self.contains(x):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return self.from_int(x)
        raise RingMismatchError(f"{x!r} is not an element of {self}")

    def invert(self, x):
        raise NotImplementedError

    def is_invertible(self, x) -> bool:
        try:
            self.invert(x)
        except NotInvertibleError:
            return False
        return True

    def div(self, x, y):
        return x * self.invert(y)

    def format(self, x) -> str:
        """Canonical scalar text (``p/q``, ``n`` or ``n mod m``)."""
        return str(x)

    def format_coeff(self, x) -> str:
        """Coefficient text used inside carrier elements (no ``mod`` suffix)."""
        return str(x)

    def is_negative(self, x) -> bool:
        return x < 0

    def parse(self, text: str):
        raise NotImplementedError

    def random(self, rng):
        raise NotImplementedError

    def __eq__(self, other):
        return self is other or (isinstance(other, Ring) and self.tag == other.tag)

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag


_Q0, _Q1 = mpq(0), mpq(1)


class Rationals(Ring):
    tag = "rationals"

    def zero(self):
        return _Q0

    def one(self):
        return _Q1

    def from_int(self, n):
        return mpq(n)

    def contains(self, x):
        return type(x) is _MPQ

    def coerce(self, x):
        if type(x) is _MPQ:
            return x
        if isinstance(x, ModularScalar):
            raise RingMismatchError(f"{x} is not a rational")
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, int) and not isinstance(x, bool):
            return mpq(x)
        raise RingMismatchError(f"{x!r} is not a rational")

    def invert(self, x):
        if x == 0:
            raise DivisionByZeroError(x, self, "division by zero")
        return 1 / self.coerce(x)

    def parse(self, text):
        m = _FRAC.match(text)
        if m:
            return rational_normalize(int(m.group(1)), int(m.group(2)))
        m = _INT.match(text)
        if m:
            return mpq(int(m.group(1)))
        raise ValueError(f"not a rational: {text!r}")

    def random(self, rng):
        if rng.random() < 0.2:
            return mpq(rng.randint(-4, 4), rng.randint(1, 3))
        return mpq(rng.randint(-3, 3))


class Integers(Ring):
    tag = "integers"

    def from_int(self, n):
        return int(n)

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool)

    def invert(self, x):
        if x == 0:
            raise DivisionByZeroError(x, self, "division by zero")
        if x in (1, -1):
            return x
        raise NotInvertibleError(x, self)

    def parse(self, text):
        m = _INT.match(text)
        if m:
            return int(m.group(1))
        raise ValueError(f"not an integer: {text!r}")

    def random(self, rng):
        return rng.randint(-3, 3)


class Modular(Ring):
    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        self.modulus = modulus
        self.tag = f"mod {modulus}"

    def from_int(self, n):
        return ModularScalar(n, self.modulus)

    def contains(self, x):
        return isinstance(x, ModularScalar) and x.modulus == self.modulus

    def coerce(self, x):
        if isinstance(x, ModularScalar) and x.modulus != self.modulus:
            raise RingMismatchError(f"{x} is not a residue mod {self.modulus}")
        return super().coerce(x)

    def invert(self, x):
        x = self.coerce(x)
        if x.value == 0:
            raise DivisionByZeroError(x, self, f"division by zero mod {self.modulus}")
        g, inv, _ = _egcd(x.value, self.modulus)
        if g != 1:
            raise NotInvertibleError(x, self)
        return ModularScalar(inv, self.modulus)

    def format_coeff(self, x):
        return str(x.value)

    def is_negative(self, x):
        return False

    def parse(self, text):
        m = _MOD.match(text)
        if m:
            if int(m.group(2)) != self.modulus:
                raise RingMismatchError(f"{text.strip()!r} is not a residue mod {self.modulus}")
            return ModularScalar(int(m.group(1)), self.modulus)
        m = _INT.match(text)
        if m:
            return ModularScalar(int(m.group(1)), self.modulus)
        raise ValueError(f"not a residue: {text!r}")

    def random(self, rng):
        return ModularScalar(rng.randrange(self.modulus), self.modulus)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


QQ = Rationals()
ZZ = Integers()


def Zmod(m: int) -> Modular:
    return Modular(m)


def ring_from_tag(tag: str) -> Ring:
    tag = tag.strip()
    if tag in ("rationals", "QQ", "Q"):
        return QQ
    if tag in ("integers", "ZZ", "Z"):
        return ZZ
    m = re.fullmatch(r"(?:modular\(|mod\s*|Z/)(\d+)\)?(?:Z)?", tag)
    if m:
        return Modular(int(m.group(1)))
    raise ValueError(f"unknown ring: {tag!r}")


def ring_of(x) -> Ring:
    if isinstance(x, ModularScalar):
        return Modular(x.modulus)
    if isinstance(x, (_MPQ, Fraction)):
        return QQ
    if isinstance(x, int) and not isinstance(x, bool):
        return ZZ
    raise RingMismatchError(f"{x!r} is not a scalar")


def scalar_combine(op: str, a, b):
    ra, rb = ring_of(a), ring_of(b)
    if ra != rb:
        raise RingMismatchError(f"cannot combine {ra} and {rb}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def scalar_invert(a):
    return ring_of(a).invert(a)


def format_scalar(x) -> str:
    return str(x)


def parse_scalar(text: str, ring: Ring | None = None):
    """Parse canonical scalar text; without ``ring`` the ring is inferred from the syntax."""
    if ring is not None:
        return ring.parse(text)
    m = _MOD.match(text)
    if m:
        return ModularScalar(int(m.group(1)), int(m.group(2)))
    m = _FRAC.match(text)
    if m:
        return rational_normalize(int(m.group(1)), int(m.group(2)))
    m = _INT.match(text)
    if m:
        return int(m.group(1))
    raise ValueError(f"not a scalar: {text!r}")


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)
