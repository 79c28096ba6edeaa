"""Exact rational parsing/formatting for the JSON wire formats.

All payoffs and probabilities in this package are `fractions.Fraction`
values.  On the wire they appear as "num/den" strings ("3/2", "-2/1");
bare integers ("2") are accepted on input for convenience.
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(text: str | int) -> Fraction:
    """Parse "num/den" or a bare integer string into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction | int) -> str:
    """Render a rational as "num/den" (canonical lowest terms, den > 0)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
