"""Shared grammar for canonical element text: signed sums of ``coef*monomial`` terms."""

from __future__ import annotations

import re
from typing import Callable, Iterable

from ..rings import Ring


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


_COEF = r"\d+(?:\s*/\s*\d+)?"
_WS = re.compile(r"\s*")


def parse_linear_combination(text: str, monomial: str, ring: Ring) -> list[tuple[object, str | None]]:
    """Split ``text`` into (coefficient, monomial-text) pairs.

    ``monomial`` is a regex for one basis monomial.  A bare coefficient term
    yields ``None`` as its monomial.
    """
    with_mono = re.compile(rf"({_COEF})\s*\*\s*({monomial})")
    mono_only = re.compile(rf"({monomial})")
    coef_only = re.compile(rf"({_COEF})")
    terms = []
    pos = _WS.match(text, 0).end()
    if pos == len(text):
        raise ParseError("empty expression", text, pos)
    sign = 1
    if text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos = _WS.match(text, pos + 1).end()
    while True:
        furthest = pos
        for pattern in (with_mono, mono_only, coef_only):
            m = pattern.match(text, pos)
            if m and _term_ends(text, m.end()):
                break
            if m:
                furthest = max(furthest, _WS.match(text, m.end()).end())
        else:
            if furthest > pos:
                raise ParseError(f"unexpected {text[furthest]!r} after a term", text, furthest)
            raise ParseError("expected a term", text, pos)
        if pattern is with_mono:
            coef, mono = _coef(ring, m.group(1), text, pos), m.group(2)
        elif pattern is mono_only:
            coef, mono = ring.one(), m.group(1)
        else:
            coef, mono = _coef(ring, m.group(1), text, pos), None
        terms.append((coef if sign > 0 else -coef, mono))
        pos = _WS.match(text, m.end()).end()
        if pos == len(text):
            return terms
        if text[pos] not in "+-":
            raise ParseError("expected '+' or '-'", text, pos)
        sign = -1 if text[pos] == "-" else 1
        pos = _WS.match(text, pos + 1).end()


def _term_ends(text: str, end: int) -> bool:
    rest = text[end:].lstrip()
    return not rest or rest[0] in "+-"


def _coef(ring: Ring, token: str, text: str, pos: int):
    try:
        return ring.parse(token)
    except (ValueError, ArithmeticError) as exc:
        raise ParseError(f"bad coefficient {token!r} ({exc})", text, pos) from None


def format_linear_combination(terms: Iterable[tuple[object, str | None]], ring: Ring) -> str:
    """Inverse of :func:`parse_linear_combination` for canonical output.

    ``terms`` must already be in canonical order with nonzero coefficients.
    """
    parts: list[str] = []
    for coef, mono in terms:
        negative = ring.is_negative(coef)
        mag = -coef if negative else coef
        if mono is None:
            body = ring.format_coeff(mag)
        elif mag == ring.one():
            body = mono
        else:
            body = f"{ring.format_coeff(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) if parts else "0"


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside of brackets and parentheses."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return out


Formatter = Callable[[object], str]
