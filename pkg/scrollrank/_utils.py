from collections.abc import Iterable
from fractions import Fraction
from numbers import Integral, Rational


def listify(obj):
    """
    Makes sure that the obj is a list
    """
    if isinstance(obj, list):
        return obj
    elif isinstance(obj, Iterable) and not isinstance(obj, str):
        return list(obj)
    else:
        return [obj]


def as_profile(profile):
    """
    Turns a degree profile (an int, a sequence of ints or a
    comma separated string like "1,2,3") into a tuple of ints

    :param profile: int, str or sequence of int
    """
    if isinstance(profile, str):
        profile = parse_int_list(profile)
    degrees = tuple(int(a) for a in listify(profile))
    if not degrees:
        raise ValueError("A degree profile needs at least one degree")
    if any(a < 0 for a in degrees):
        raise ValueError(f"Degrees must be nonnegative, got: {degrees}")
    return degrees


def parse_int_list(text):
    """
    Parses "1,2,3" into [1, 2, 3]
    """
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"Could not parse a list of integers from: {text!r}")


def parse_range(text):
    """
    Parses an inclusive integer range: "2..8", "2-8" or a single "4"

    :param text: str
    """
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"Could not parse an integer range from: {text!r}")
    if hi < lo:
        raise ValueError(f"Empty range: {text!r}")
    return range(lo, hi + 1)


def to_fraction(value):
    """
    Converts ints, Fractions and "p/q" strings to Fraction.
    Floats are rejected: all scalars are exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not valid scalars")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"Not a rational number: {value!r}")
    if hasattr(value, "__index__"):  # numpy integers
        return Fraction(int(value))
    raise TypeError(
        f"Expected an exact rational scalar, not {type(value).__name__}"
    )


def format_fraction(value):
    """
    Serializes a rational as a decimal-free "p/q" string
    """
    value = to_fraction(value)
    return f"{value.numerator}/{value.denominator}"


def as_vector(values):
    """
    Turns a sequence of scalars into a tuple of Fractions
    """
    return tuple(to_fraction(v) for v in listify(values))
