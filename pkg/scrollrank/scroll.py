"""
Parametrizations of the Veronese scroll X_a and of its Segre product
with W, plus the exact Jacobian used by the secant dimension probes.

    psi(v, c)       = (c_1 v^a_1, ..., c_d v^a_d)
    psi_m(w, v, c)  = block (i, k) = w_i c_k v^a_k
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from loguru import logger

from scrollrank import settings
from scrollrank._utils import as_profile, as_vector
from scrollrank.catalecticant import ProfilePoint
from scrollrank.polyspace import SymPoly, monomial, multi_index_set


def _native(x):
    """
    Integral Fractions become python ints, keeping integer matrices fast
    """
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class ScrollParams:
    """
    Parameters (w, v, c) of a point of the scroll with a given profile
    """

    w: tuple
    v: tuple
    c: tuple
    profile: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", as_vector(self.w))
        object.__setattr__(self, "v", as_vector(self.v))
        object.__setattr__(self, "c", as_vector(self.c))
        profile = as_profile(self.profile)
        object.__setattr__(self, "profile", profile)

        if list(profile) != sorted(profile):
            raise ValueError(f"Degree profile must be nondecreasing: {profile}")
        if not self.w or not self.v:
            raise ValueError("w and v need at least one entry each")
        if len(self.c) != len(profile):
            raise ValueError(
                f"Got {len(self.c)} coefficients for a profile of length {len(profile)}"
            )

    @property
    def m(self):
        return len(self.v)

    @property
    def n(self):
        return len(self.w)

    @property
    def d(self):
        return len(self.profile)

    @property
    def n_params(self):
        """
        Columns of the Jacobian: the w block is dropped for n = 1
        """
        return (self.n if self.n > 1 else 0) + self.m + self.d


def psi_m(w, v, c, profile):
    """
    Point of the Segre product of the scroll with W

    :param w: sequence of n rationals
    :param v: sequence of m rationals
    :param c: sequence of d rationals
    :param profile: degrees a_1 <= ... <= a_d
    """
    params = ScrollParams(w, v, c, profile)
    powers = [
        {
            alpha: monomial(params.v, alpha)
            for alpha in multi_index_set(a, params.m)
        }
        for a in params.profile
    ]
    blocks = [
        [
            SymPoly(
                params.m,
                a,
                {alpha: wi * ck * x for alpha, x in power.items()},
            )
            for a, ck, power in zip(params.profile, params.c, powers)
        ]
        for wi in params.w
    ]
    return ProfilePoint(params.profile, params.m, params.n, blocks)


def psi(v, c, profile):
    """
    Point (c_1 v^a_1, ..., c_d v^a_d) of the Veronese scroll
    """
    return psi_m((1,), v, c, profile)


def jacobian_at(params):
    """
    Exact Jacobian of psi_m at params. Rows follow ProfilePoint.vector
    (blocks (i, k) row-major, polyspace order inside a block); columns
    are w (only when n > 1), then v, then c.

    :param params: ScrollParams
    :returns: numpy object array of shape (ambient dim, n_params)
    """
    w = [_native(x) for x in params.w]
    v = [_native(x) for x in params.v]
    c = [_native(x) for x in params.c]
    m, n, d = params.m, params.n, params.d
    w_cols = n if n > 1 else 0

    # per degree: the monomials v^alpha and their v-gradients
    monomials, gradients = [], []
    for a in params.profile:
        basis = multi_index_set(a, m)
        monomials.append([monomial(v, alpha) for alpha in basis])
        gradients.append(
            [
                [
                    alpha[j]
                    * monomial(
                        v, [e - (1 if i == j else 0) for i, e in enumerate(alpha)]
                    )
                    if alpha[j]
                    else 0
                    for j in range(m)
                ]
                for alpha in basis
            ]
        )

    n_rows = sum(n * len(x) for x in monomials)
    J = np.zeros((n_rows, w_cols + m + d), dtype=object)
    row = 0
    for i in range(n):
        for k in range(d):
            for mono, grad in zip(monomials[k], gradients[k]):
                if w_cols:
                    J[row, i] = c[k] * mono
                for j in range(m):
                    J[row, w_cols + j] = w[i] * c[k] * grad[j]
                J[row, w_cols + m + k] = w[i] * mono
                row += 1
    return J


def psi_homogenized(v, c, d):
    """
    Point (c^d, c^(d-1) v, ..., v^d) of the subvariety of the scroll with
    profile (0, 1, ..., d) that is the image of the degree d Veronese
    embedding of V + C, (v, c) -> (v, c)^d

    :param v: sequence of m rationals
    :param c: rational
    :param d: int, top degree
    """
    v = as_vector(v)
    c = Fraction(c)
    return psi_m((1,), v, [c ** (d - k) for k in range(d + 1)], range(d + 1))


def jacobian_homogenized(v, c, d):
    """
    Exact Jacobian of psi_homogenized: columns v (m), then c (1)
    """
    v = [_native(x) for x in as_vector(v)]
    c = _native(c)
    m = len(v)

    rows = []
    for k in range(d + 1):
        e = d - k
        scale = c**e
        for beta in multi_index_set(k, m):
            grad = [
                scale
                * beta[j]
                * monomial(
                    v, [b - (1 if i == j else 0) for i, b in enumerate(beta)]
                )
                if beta[j]
                else 0
                for j in range(m)
            ]
            dc = e * c ** (e - 1) * monomial(v, beta) if e else 0
            rows.append(grad + [dc])
    return np.array(rows, dtype=object)


def sample_vector(size, rng, bound=None):
    """
    Nonzero integer vector with entries uniform in [-bound, bound]
    """
    bound = settings.DEFAULT_BOUND if bound is None else bound
    if bound < 1:
        raise ValueError(f"Sampling bound must be >= 1, got {bound}")
    while True:
        x = rng.integers(-bound, bound + 1, size=size)
        if np.any(x):
            return tuple(int(e) for e in x)


def sample_params(profile, m, n, rng, bound=None):
    """
    General point of the scroll: integer entries uniform in
    [-bound, bound], resampled until w, v and c are all nonzero

    :param profile: degree profile
    :param m: int, dim V
    :param n: int, dim W
    :param rng: numpy Generator
    :param bound: int >= 1, defaults to settings.DEFAULT_BOUND
    """
    profile = as_profile(profile)
    logger.debug(f"Sampling scroll params: profile={profile}, m={m}, n={n}")
    w = sample_vector(n, rng, bound)
    v = sample_vector(m, rng, bound)
    c = sample_vector(len(profile), rng, bound)
    return ScrollParams(w, v, c, profile)
