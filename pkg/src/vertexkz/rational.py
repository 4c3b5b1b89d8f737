"""Exact rational scalars and their canonical serialized form.

Every number in this package is a `fractions.Fraction`, which keeps the
canonical reduced representation (positive denominator, coprime numerator)
after every arithmetic operation.  The helpers here pin down the wire format
used by the CLI and the JSON reports: ``"p/q"`` with the sign on the
numerator, plain ``"p"`` when the denominator is one.  Floats are refused:
a binary float that merely looks right is still a wrong value in a
zero-tolerance pipeline.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce an int, a Fraction or a "p/q" string to an exact rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rat(text: str) -> Fraction:
    """Parse a "p/q" or plain-integer literal into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rat(value: Fraction) -> str:
    """Render a Fraction as "p/q", or just "p" when the denominator is one."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
