"""
Multi-indices and the coordinates of homogeneous polynomials.

A homogeneous polynomial f of degree s in m variables is stored through
its symmetric tensor coordinates f_alpha, one per multi-index alpha with
|alpha| = s. The polynomial itself reads

    f(u) = sum_alpha multinomial(alpha) * f_alpha * u^alpha

so the power v^s has coordinates v^alpha, and catalecticant entries are
literal coordinate lookups.

Multi-indices of a given degree are always enumerated in lexicographically
decreasing order of the exponent tuple, e.g. for s=2, m=2:
(2, 0), (1, 1), (0, 2). This order fixes every matrix layout and the
dense JSON encoding.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from scrollrank._utils import as_vector, format_fraction, to_fraction


class MultiIndex(tuple):
    """
    Exponent tuple alpha in N^m, with |alpha| its degree.
    """

    def __new__(cls, exponents):
        exponents = tuple(exponents)
        if not exponents:
            raise ValueError("A multi-index needs at least one entry")
        for e in exponents:
            if isinstance(e, bool) or not hasattr(e, "__index__"):
                raise TypeError(f"Exponents must be integers, got: {e!r}")
            if e < 0:
                raise ValueError(f"Exponents must be >= 0, got: {exponents}")
        return super().__new__(cls, (int(e) for e in exponents))

    @property
    def degree(self):
        return sum(self)

    @property
    def m(self):
        return len(self)

    def __repr__(self):
        return f"MultiIndex{tuple(self)}"


def _check_arity(m):
    if m < 1:
        raise ValueError(f"Number of variables m must be >= 1, got {m}")


@lru_cache(maxsize=None)
def multi_index_set(s, m):
    """
    All multi-indices of degree s in m variables, in lexicographically
    decreasing order. Its length is binom(m+s-1, s).

    :param s: int, degree >= 0
    :param m: int, number of variables >= 1
    """
    _check_arity(m)
    if s < 0:
        raise ValueError(f"Degree must be >= 0, got {s}")

    def _enumerate(s, m):
        if m == 1:
            yield (s,)
            return
        for first in range(s, -1, -1):
            for rest in _enumerate(s - first, m - 1):
                yield (first,) + rest

    return tuple(MultiIndex(alpha) for alpha in _enumerate(s, m))


def sym_dim(s, m):
    """
    dim S^s V = binom(m+s-1, s)
    """
    return comb(m + s - 1, s)


def multinomial(alpha):
    """
    (a_1 + ... + a_m)! / (a_1! ... a_m!)
    """
    alpha = MultiIndex(alpha)
    return factorial(alpha.degree) // prod(factorial(a) for a in alpha)


def space_dim(profile, m, n=1):
    """
    Dimension of S^a V (x) W, i.e. n * sum_k binom(m+a_k-1, a_k)

    :param profile: sequence of degrees a_1 <= ... <= a_d
    :param m: int, dim V
    :param n: int, dim W
    """
    profile = tuple(profile)
    if not profile:
        raise ValueError("Empty degree profile")
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be >= 1, got m={m}, n={n}")
    if any(a < 0 for a in profile):
        raise ValueError(f"Degrees must be >= 0, got {profile}")
    return n * sum(sym_dim(a, m) for a in profile)


def monomial(v, alpha):
    """
    v^alpha = v_1^alpha_1 * ... * v_m^alpha_m
    """
    return prod((x**a for x, a in zip(v, alpha)), start=1)


@dataclass(frozen=True)
class SymPoly:
    """
    Homogeneous polynomial of a given degree in m variables,
    stored as a sparse map of tensor coordinates. Missing
    keys are zero; zero values are never stored.
    """

    m: int
    degree: int
    coords: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_arity(self.m)
        if self.degree < 0:
            raise ValueError(f"Degree must be >= 0, got {self.degree}")

        clean = {}
        for alpha, value in self.coords.items():
            alpha = MultiIndex(alpha)
            if alpha.m != self.m or alpha.degree != self.degree:
                raise ValueError(
                    f"Multi-index {tuple(alpha)} does not have degree {self.degree} in {self.m} variables"
                )
            value = to_fraction(value)
            if value:
                clean[alpha] = value
        object.__setattr__(self, "coords", clean)

    def __getitem__(self, alpha):
        return self.coords.get(tuple(alpha), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._check_compatible(other)
        coords = dict(self.coords)
        for alpha, value in other.coords.items():
            coords[alpha] = coords.get(alpha, 0) + value
        return SymPoly(self.m, self.degree, coords)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def _check_compatible(self, other):
        if (self.m, self.degree) != (other.m, other.degree):
            raise ValueError(
                f"Cannot combine polynomials of degree {self.degree} in {self.m} variables "
                + f"and of degree {other.degree} in {other.m} variables"
            )

    def scale(self, scalar):
        scalar = to_fraction(scalar)
        return SymPoly(
            self.m,
            self.degree,
            {alpha: scalar * v for alpha, v in self.coords.items()},
        )

    def is_zero(self):
        return not self.coords

    @property
    def size(self):
        """
        Number of coordinates, binom(m+s-1, s)
        """
        return sym_dim(self.degree, self.m)

    def dense(self):
        """
        All coordinates in polyspace order
        """
        return [self[alpha] for alpha in multi_index_set(self.degree, self.m)]

    @classmethod
    def zero(cls, m, degree):
        return cls(m, degree, {})

    @classmethod
    def from_dense(cls, values, m, degree):
        """
        Builds a SymPoly from coordinates listed in polyspace order
        """
        basis = multi_index_set(degree, m)
        values = list(values)
        if len(values) != len(basis):
            raise ValueError(
                f"Expected {len(basis)} coordinates for degree {degree} in {m} variables, got {len(values)}"
            )
        return cls(m, degree, dict(zip(basis, values)))

    def to_dict(self):
        """
        JSON-ready representation, coordinates in polyspace order
        """
        return {
            "m": self.m,
            "degree": self.degree,
            "coords": [
                {"alpha": list(alpha), "value": format_fraction(self[alpha])}
                for alpha in multi_index_set(self.degree, self.m)
                if alpha in self.coords
            ],
        }

    @classmethod
    def from_dict(cls, data):
        try:
            coords = {
                MultiIndex(c["alpha"]): to_fraction(c["value"])
                for c in data.get("coords", [])
            }
            return cls(int(data["m"]), int(data["degree"]), coords)
        except KeyError as err:
            raise ValueError(f"Polynomial JSON is missing the key {err}")


def power_coords(v, a):
    """
    Tensor coordinates of the power v^a: coords[alpha] = v^alpha

    :param v: sequence of m rationals
    :param a: int, degree >= 0
    """
    v = as_vector(v)
    return SymPoly(
        len(v),
        a,
        {alpha: monomial(v, alpha) for alpha in multi_index_set(a, len(v))},
    )


def poly_eval(p, u):
    """
    Value at u of the polynomial whose tensor coordinates are p,
    sum_alpha multinomial(alpha) * p_alpha * u^alpha

    :param p: SymPoly
    :param u: sequence of m rationals
    """
    u = as_vector(u)
    if len(u) != p.m:
        raise ValueError(
            f"Point has {len(u)} coordinates but the polynomial has {p.m} variables"
        )
    return sum(
        (
            multinomial(alpha) * value * monomial(u, alpha)
            for alpha, value in p.coords.items()
        ),
        start=Fraction(0),
    )
