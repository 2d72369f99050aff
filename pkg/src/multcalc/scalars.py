"""Scalar conversion between exact rationals (gmpy2.mpq) and floats."""
from __future__ import annotations

import math
import numbers
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from .errors import DomainError

ZERO = mpq(0)
ONE = mpq(1)

_MPQ_TYPE = type(mpq(0))


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, _MPQ_TYPE, str)) and not isinstance(x, bool)


def to_exact(x) -> mpq:
    """Convert ``x`` to an exact rational.

    Floats are converted by their exact binary value, strings accept
    ``"p/q"`` and decimal notation.
    """
    if isinstance(x, _MPQ_TYPE):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return mpq(Fraction(x.strip()).numerator, Fraction(x.strip()).denominator)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {x!r}") from exc
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise DomainError("non-finite scalar")
        return mpq(float(x))
    if isinstance(x, (numbers.Integral, np.integer)):
        return mpq(int(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def to_float(x) -> float:
    if isinstance(x, str):
        x = to_exact(x)
    v = float(x)
    if not math.isfinite(v):
        raise DomainError("non-finite scalar")
    return v


def convert(x, exact: bool):
    return to_exact(x) if exact else to_float(x)


def format_scalar(x):
    """JSON-friendly rendering: ints stay ints, other rationals become "p/q"."""
    if isinstance(x, _MPQ_TYPE):
        if x.denominator == 1:
            return int(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return float(x)
