"""JSON helpers: exact rationals travel as strings, never as floats."""
from __future__ import annotations

import json
from fractions import Fraction


def format_rational(x) -> str:
    """``Fraction(1, 2) -> "1/2"``; integers render without a denominator."""
    return str(Fraction(x))


def parse_rational(s) -> Fraction:
    if isinstance(s, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(s)


def dumps(payload) -> str:
    """Deterministic one-line JSON."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
