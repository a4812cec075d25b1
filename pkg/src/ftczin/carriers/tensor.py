"""Formal sums of tensor words: the shuffle algebra Sh(V), the reduced
shuffle algebra Sh+(V) and the free Rota-Baxter algebra RB(A).

A word is a tuple of basis indices.  Word-level products are computed on
integer multiplicities (ring independent) and cached; coefficients are
applied afterwards.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from functools import lru_cache

from ..rings import QQ, Ring
from .base import Algebra, DescriptorMismatchError
from .finite import FiniteAlgebra
from .text import ParseError, format_linear_combination, parse_linear_combination

Word = tuple


class UnitTermError(ValueError):
    """An element with a nonzero unit coefficient was passed where Sh+(V) is required."""


def word_key(w: Word):
    return (len(w), w)


def format_word(w: Word) -> str:
    return "[" + ",".join(str(i) for i in w) + "]"


class TensorSum:
    """Immutable element of Sh(V): ``unit*1 + sum coef*word``."""

    __slots__ = ("ring", "basis_size", "terms", "unit", "_hash")

    def __init__(self, terms: dict | None = None, unit=0, basis_size: int = 3, ring: Ring = QQ):
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if not w:
                unit = unit + c
                continue
            if any(not 0 <= i < basis_size for i in w):
                raise ValueError(f"word {format_word(w)} is outside a basis of size {basis_size}")
            c = ring.coerce(c)
            if c != 0:
                clean[w] = clean[w] + c if w in clean else c
        self.ring = ring
        self.basis_size = basis_size
        self.terms = {w: c for w, c in clean.items() if c != 0}
        self.unit = ring.coerce(unit)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, unit, basis_size: int, ring: Ring) -> "TensorSum":
        t = cls.__new__(cls)
        t.ring = ring
        t.basis_size = basis_size
        t.terms = {w: c for w, c in terms.items() if c != 0}
        t.unit = unit
        t._hash = None
        return t

    @classmethod
    def word(cls, *letters: int, coef=1, basis_size: int = 3, ring: Ring = QQ) -> "TensorSum":
        return cls({tuple(letters): coef}, 0, basis_size, ring)

    def _check(self, other):
        if not isinstance(other, TensorSum):
            raise DescriptorMismatchError(f"cannot combine a tensor sum with {other!r}")
        if other.basis_size != self.basis_size:
            raise DescriptorMismatchError(
                f"tensor sums over bases of size {self.basis_size} and {other.basis_size}"
            )
        if other.ring is not self.ring and other.ring != self.ring:
            raise DescriptorMismatchError(f"tensor sums over {self.ring} and {other.ring}")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return TensorSum._raw(terms, self.unit + other.unit, self.basis_size, self.ring)

    def __neg__(self):
        return TensorSum._raw({w: -c for w, c in self.terms.items()}, -self.unit, self.basis_size, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, TensorSum):
            raise TypeError("use shuffle_product or an algebra carrier to multiply tensor sums")
        c = self.ring.coerce(c)
        return TensorSum._raw({w: c * v for w, v in self.terms.items()}, c * self.unit, self.basis_size, self.ring)

    __rmul__ = __mul__

    @property
    def reduced_part(self) -> "TensorSum":
        return TensorSum._raw(self.terms, self.ring.zero(), self.basis_size, self.ring)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: word_key(wc[0]))

    def __eq__(self, other):
        if isinstance(other, TensorSum):
            return (
                self.basis_size == other.basis_size
                and self.unit == other.unit
                and self.terms == other.terms
                and (self.ring is other.ring or self.ring == other.ring)
            )
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.unit, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms) or self.unit != 0

    def __str__(self):
        return format_tensor(self)

    def __repr__(self):
        return f"TensorSum({self})"


def format_tensor(t: TensorSum) -> str:
    items = [(c, format_word(w)) for w, c in t.sorted_terms()]
    if t.unit != 0:
        items.append((t.unit, "1"))
    return format_linear_combination(items, t.ring)


_WORD_RE = r"\[\s*\d+(?:\s*,\s*\d+)*\s*\]"


def parse_tensor(text: str, basis_size: int = 3, ring: Ring = QQ) -> TensorSum:
    terms: dict = {}
    unit = ring.zero()
    for coef, mono in parse_linear_combination(text, rf"(?:{_WORD_RE}|1)", ring):
        if mono is None or mono == "1":
            unit = unit + coef
            continue
        w = tuple(int(i) for i in re.findall(r"\d+", mono))
        if any(i >= basis_size for i in w):
            raise ParseError(f"letter outside basis of size {basis_size} in {mono}", text, text.find(mono))
        terms[w] = terms[w] + coef if w in terms else coef
    return TensorSum._raw(terms, unit, basis_size, ring)


# word-level products -------------------------------------------------------


@lru_cache(maxsize=None)
def shuffle_words(u: Word, v: Word) -> tuple:
    """Shuffle of two words by the head recursion; returns ((word, multiplicity), ...)."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Counter = Counter()
    for w, n in shuffle_words(u[1:], v):
        out[(u[0],) + w] += n
    for w, n in shuffle_words(u, v[1:]):
        out[(v[0],) + w] += n
    return tuple(out.items())


def shuffle_words_enumerated(u: Word, v: Word) -> Counter:
    """Shuffle of two words by enumerating all C(m+n, m) order-preserving interleavings."""
    m, n = len(u), len(v)
    out: Counter = Counter()
    for positions in itertools.combinations(range(m + n), m):
        chosen = set(positions)
        it_u, it_v = iter(u), iter(v)
        out[tuple(next(it_u) if i in chosen else next(it_v) for i in range(m + n))] += 1
    return out


@lru_cache(maxsize=None)
def zinbiel_words(u: Word, v: Word) -> tuple:
    """u < v = u0 (x) ((u1 ... un) shuffle v) for nonempty words."""
    head = u[0]
    return tuple(((head,) + w, n) for w, n in shuffle_words(u[1:], v))


def _bilinear(s: TensorSum, t: TensorSum, word_op, unit_rule=True) -> TensorSum:
    s._check(t)
    ring = s.ring
    out: dict = {}
    unit = ring.zero()
    s_items = list(s.terms.items())
    t_items = list(t.terms.items())
    if unit_rule:
        if s.unit != 0:
            for w, c in t_items:
                out[w] = out.get(w, ring.zero()) + s.unit * c
        if t.unit != 0:
            for w, c in s_items:
                out[w] = out.get(w, ring.zero()) + t.unit * c
        unit = s.unit * t.unit
    for u, cu in s_items:
        for v, cv in t_items:
            cuv = cu * cv
            for w, n in word_op(u, v):
                term = cuv * n if n != 1 else cuv
                out[w] = out[w] + term if w in out else term
    return TensorSum._raw(out, unit, s.basis_size, ring)


def shuffle_product(u: TensorSum, v: TensorSum) -> TensorSum:
    return _bilinear(u, v, shuffle_words)


def shuffle_product_oracle(u: Word, v: Word, basis_size: int = 3, ring: Ring = QQ) -> TensorSum:
    """Shuffle of two words computed by direct enumeration of interleavings."""
    for w in (u, v):
        if any(not 0 <= i < basis_size for i in w):
            raise DescriptorMismatchError(f"word {format_word(w)} is outside a basis of size {basis_size}")
    counts = shuffle_words_enumerated(tuple(u), tuple(v))
    unit = counts.pop((), 0)
    return TensorSum(dict(counts), unit, basis_size, ring)


def require_reduced(t: TensorSum) -> None:
    if t.unit != 0:
        raise UnitTermError(f"{t} has a nonzero unit term; expected an element of Sh+(V)")


def zinbiel_product(s: TensorSum, t: TensorSum) -> TensorSum:
    """Bilinear extension of the word formula; defined on Sh+(V) only."""
    require_reduced(s)
    require_reduced(t)
    return _bilinear(s, t, zinbiel_words, unit_rule=False)


def mixable_shuffle_product(s: TensorSum, t: TensorSum, letters: FiniteAlgebra) -> TensorSum:
    """a0 (x) ... (x) an  mixed with  b0 (x) ... (x) bm  =  a0b0 (x) (tails shuffled)."""
    require_reduced(s)
    require_reduced(t)
    if s.basis_size != letters.dim or t.basis_size != letters.dim:
        raise DescriptorMismatchError("tensor basis does not match the letter algebra")

    cache = letters.__dict__.setdefault("_mixable_cache", {})

    def word_op(u, v):
        key = (u, v)
        if key in cache:
            return cache[key]
        prod = letters.letter_product(u[0], v[0])
        out = []
        for tail, n in shuffle_words(u[1:], v[1:]):
            for k, c in prod.items():
                out.append(((k,) + tail, c * n))
        cache[key] = out
        return out

    return _bilinear(s, t, word_op, unit_rule=False)


# carriers -------------------------------------------------------------------


class ShuffleAlgebra(Algebra):
    """Sh(V) (``reduced=False``) or the non-unital Sh+(V) (``reduced=True``) under the shuffle product."""

    max_sample_words = 2
    max_sample_length = 3
    exhaustive_length = 2

    def __init__(self, basis_size: int = 3, ring: Ring = QQ, reduced: bool = False):
        if basis_size < 1:
            raise ValueError("basis size must be positive")
        self.ring = ring
        self.basis_size = basis_size
        self.reduced = reduced
        self.unital = not reduced
        self.name = f"Sh{'+' if reduced else ''}(k^{basis_size})"

    def __eq__(self, other):
        return type(other) is type(self) and (self.ring, self.basis_size, self.reduced) == (
            other.ring,
            other.basis_size,
            other.reduced,
        )

    def __hash__(self):
        return hash(("tensor", type(self).__name__, self.ring, self.basis_size, self.reduced))

    def word(self, *letters, coef=1) -> TensorSum:
        return TensorSum({tuple(letters): coef}, 0, self.basis_size, self.ring)

    def words(self, length: int):
        return [tuple(w) for w in itertools.product(range(self.basis_size), repeat=length)]

    def zero(self):
        return TensorSum._raw({}, self.ring.zero(), self.basis_size, self.ring)

    def one(self):
        if self.reduced:
            raise TypeError("Sh+(V) has no unit")
        return TensorSum._raw({}, self.ring.one(), self.basis_size, self.ring)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def scale(self, c, x):
        return x * c

    def mul(self, x, y):
        return shuffle_product(x, y)

    def as_scalar(self, x):
        return x.unit if not x.terms else None

    def contains(self, x):
        return (
            isinstance(x, TensorSum)
            and x.basis_size == self.basis_size
            and x.ring == self.ring
            and (not self.reduced or x.unit == 0)
        )

    def format(self, x):
        return format_tensor(x)

    def parse(self, text):
        t = parse_tensor(text, self.basis_size, self.ring)
        if self.reduced and t.unit != 0:
            raise ParseError("unit term in an element of Sh+(V)", text, 0)
        return t

    def sample(self, rng):
        terms = {}
        for _ in range(rng.randint(0, self.max_sample_words)):
            length = rng.randint(1, self.max_sample_length)
            w = tuple(rng.randrange(self.basis_size) for _ in range(length))
            terms[w] = self.ring.random(rng)
        unit = self.ring.zero()
        if not self.reduced and rng.random() < 0.5:
            unit = self.ring.random(rng)
        return TensorSum._raw(terms, unit, self.basis_size, self.ring)

    def basis(self):
        out = [] if self.reduced else [self.one()]
        for length in range(1, self.exhaustive_length + 1):
            out.extend(self.word(*w) for w in self.words(length))
        return out

    def coordinates(self, x):
        out = dict(x.terms)
        if x.unit != 0:
            out[()] = x.unit
        return out

    def from_coordinates(self, coords):
        coords = dict(coords)
        unit = coords.pop((), self.ring.zero())
        return TensorSum._raw(coords, unit, self.basis_size, self.ring)

    def graded_basis(self, degree):
        if degree == 0:
            return [] if self.reduced else [self.one()]
        return [self.word(*w) for w in self.words(degree)]

    def grade_of_key(self, key):
        return len(key)


class FreeRotaBaxterAlgebra(ShuffleAlgebra):
    """RB(A): Sh+(A) on the basis of a finite algebra A, multiplied by the augmented mixable shuffle."""

    def __init__(self, letters: FiniteAlgebra):
        super().__init__(letters.dim, letters.ring, reduced=True)
        self.letters = letters
        self.unital = True
        self.name = f"RB({letters.name})"

    def __eq__(self, other):
        return isinstance(other, FreeRotaBaxterAlgebra) and other.letters == self.letters

    def __hash__(self):
        return hash(("rb", self.letters))

    def one(self):
        return TensorSum._raw({(k,): c for k, c in self.letters.unit.items()}, self.ring.zero(), self.basis_size, self.ring)

    def mul(self, x, y):
        return mixable_shuffle_product(x, y, self.letters)

    def as_scalar(self, x):
        if not x.terms:
            return self.ring.zero()
        one = self.one()
        w0, c0 = next(iter(one.terms.items()))
        if w0 not in x.terms or not self.ring.is_invertible(c0):
            return None
        c = self.ring.div(x.terms[w0], c0)
        return c if one * c == x else None
