"""Scalar helpers for the two arithmetic modes.

Exact mode works in arbitrary-precision rationals (``fractions.Fraction``);
float mode works in IEEE doubles.  A container is "exact" when every scalar
in it is a Fraction (or int), and the two modes never mix silently: parsing
decides the mode once, and all downstream arithmetic preserves it.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

FLOAT_TOL = 1e-12

Scalar = Fraction | float


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def parse_scalar(v) -> Scalar:
    """Parse a JSON-ish scalar: "p/q" strings and ints are exact, floats are not."""
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, bool):
        raise TypeError(f"not a scalar: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(v)
    if isinstance(v, float):
        return v
    raise TypeError(f"not a scalar: {v!r}")


def format_scalar(x: Scalar) -> str:
    """Render a scalar the way parse_scalar reads it back; exact stays exact."""
    if is_exact(x):
        return str(Fraction(x))
    return repr(float(x))


def close(a, b, tol: float = FLOAT_TOL) -> bool:
    """Equality in the weaker of the two operands' modes."""
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(float(a) - float(b)) <= tol
