"""Exact rational scalar used throughout (gmpy2's mpq, ~10x faster than Fraction)."""
from fractions import Fraction
from numbers import Integral

from gmpy2 import mpq

QQ = mpq


def to_qq(v):
    """Convert an int, Fraction, str or mpq to an exact rational; floats are refused."""
    if isinstance(v, type(QQ())):
        return v
    if isinstance(v, (Integral, Fraction, str)):
        return QQ(v)
    if isinstance(v, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return QQ(v)


def to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator)) if hasattr(v, "numerator") else Fraction(v)
