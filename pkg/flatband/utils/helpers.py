"""
Helper functions for serializing scalars, footprints and numbers.
"""

from fractions import Fraction

from ..algebra.scalars import GaussianRational, is_exact, to_numeric
from ..core.errors import ParseError


def format_fraction(value: Fraction) -> str:
    """'a/b' with the denominator always written out"""
    return f"{value.numerator}/{value.denominator}"


def scalar_to_json(value):
    """Exact scalars as rational strings, floating ones as [re, im]"""
    if is_exact(value):
        return {"num": format_fraction(value.re), "inum": format_fraction(value.im)}
    value = to_numeric(value)
    return [value.real, value.imag]


def scalar_from_json(data, field=""):
    """Inverse of scalar_to_json"""
    if isinstance(data, dict):
        try:
            return GaussianRational(Fraction(data["num"]), Fraction(data.get("inum", "0")))
        except (KeyError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad exact scalar {data!r}: {e}", field=field)
    if isinstance(data, list) and len(data) == 2 and all(isinstance(x, (int, float)) for x in data):
        return complex(float(data[0]), float(data[1]))
    raise ParseError(f"scalar must be [re, im] or {{\"num\", \"inum\"}}, got {data!r}", field=field)


def format_float(value: float) -> str:
    """17 significant digits, enough to round-trip a double"""
    return format(value, '.17g')


def footprint_to_json(footprint):
    """Footprint pairs ((vertex, multiplicity), ...) as [[v, mult], ...]"""
    return [[vertex, mult] for vertex, mult in footprint]


def shift_to_json(shift):
    return [int(x) for x in shift]
