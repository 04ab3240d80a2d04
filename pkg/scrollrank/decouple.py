"""
Decoupled representations f(u) = W g(V^T u) of polynomial maps, with
univariate internal polynomials g_l(t) = sum_k c_(k,l) t^k, k = 1..d.

Such a map is a Waring-like decomposition of the homogeneous parts of f:
the degree k part of output i is sum_l w_(i,l) c_(k,l) (v_l^T u)^k.
"""

from dataclasses import dataclass
from fractions import Fraction
from io import StringIO

import numpy as np
import pyinspect as pi
from loguru import logger
from myterial import amber, orange, salmon
from rich.console import Console

from scrollrank import settings
from scrollrank._linalg import solve_min_norm
from scrollrank._utils import as_vector, format_fraction, to_fraction
from scrollrank.catalecticant import ProfilePoint, minors_2x2
from scrollrank.polyspace import (
    MultiIndex,
    SymPoly,
    multinomial,
    power_coords,
)
from scrollrank.scroll import sample_vector


def _fraction_matrix(M, name):
    A = np.array(M, dtype=object)
    if A.ndim != 2:
        raise ValueError(f"{name} must be a 2D matrix, got shape {A.shape}")
    out = np.empty(A.shape, dtype=object)
    for idx, x in np.ndenumerate(A):
        out[idx] = to_fraction(x)
    return out


def _matrix_to_rows(M):
    return [[format_fraction(x) for x in row] for row in M]


class DecoupledModel:
    """
    Parameters of f(u) = W g(V^T u).

    :param V: m x r matrix, columns are the directions v_l
    :param W: n x r matrix, columns are the mixing vectors w_l
    :param C: d x r matrix, entry (k-1, l) is the coefficient of t^k in g_l
    """

    def __init__(self, V, W, C):
        self.V = _fraction_matrix(V, "V")
        self.W = _fraction_matrix(W, "W")
        self.C = _fraction_matrix(C, "C")

        counts = {self.V.shape[1], self.W.shape[1], self.C.shape[1]}
        if len(counts) != 1:
            raise ValueError(
                f"V, W and C must have the same number of columns, got "
                + f"{self.V.shape[1]}, {self.W.shape[1]}, {self.C.shape[1]}"
            )
        if self.m < 1 or self.n < 1 or self.d < 1:
            raise ValueError(
                f"Need m, n, d >= 1, got m={self.m}, n={self.n}, d={self.d}"
            )

    @property
    def m(self):
        return self.V.shape[0]

    @property
    def n(self):
        return self.W.shape[0]

    @property
    def d(self):
        return self.C.shape[0]

    @property
    def r(self):
        return self.V.shape[1]

    @property
    def directions(self):
        """
        (v_l, w_l) pairs, one per branch
        """
        return [
            (tuple(self.V[:, l]), tuple(self.W[:, l])) for l in range(self.r)
        ]

    def __eq__(self, other):
        if not isinstance(other, DecoupledModel):
            return NotImplemented
        return all(
            a.shape == b.shape and bool(np.all(a == b))
            for a, b in zip(
                (self.V, self.W, self.C), (other.V, other.W, other.C)
            )
        )

    def __repr__(self):
        return (
            f"DecoupledModel(m={self.m}, n={self.n}, d={self.d}, r={self.r})"
        )

    def to_dict(self):
        return {
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "V": _matrix_to_rows(self.V),
            "W": _matrix_to_rows(self.W),
            "C": _matrix_to_rows(self.C),
        }

    @classmethod
    def from_dict(cls, data):
        try:
            m, n, d, r = (int(data[k]) for k in ("m", "n", "d", "r"))
            V = np.array(data["V"], dtype=object).reshape(m, r)
            W = np.array(data["W"], dtype=object).reshape(n, r)
            C = np.array(data["C"], dtype=object).reshape(d, r)
        except KeyError as err:
            raise ValueError(f"Model JSON is missing the key {err}")
        return cls(V, W, C)


def three_branch_model():
    """
    f(x, y) = 6 x y^2 + 4 x y written as g_1(x+y) + g_2(x-y) + g_3(x),
    with g_1 = t^3 + t^2, g_2 = t^3 - t^2, g_3 = -2 t^3
    """
    return DecoupledModel(
        V=[[1, 1, 1], [1, -1, 0]],
        W=[[1, 1, 1]],
        C=[[0, 0, 0], [1, -1, 0], [1, 1, -2]],
    )


def evaluate(model, u):
    """
    Value W g(V^T u) of the decoupled map at u

    :param model: DecoupledModel
    :param u: sequence of m rationals
    """
    u = as_vector(u)
    if len(u) != model.m:
        raise ValueError(
            f"Point has {len(u)} coordinates but the model has m = {model.m}"
        )
    t = model.V.T.dot(np.array(u, dtype=object)) if model.r else []
    g = [
        sum(
            (model.C[k, l] * t[l] ** (k + 1) for k in range(model.d)),
            start=Fraction(0),
        )
        for l in range(model.r)
    ]
    return tuple(
        sum(
            (model.W[i, l] * g[l] for l in range(model.r)),
            start=Fraction(0),
        )
        for i in range(model.n)
    )


def embed(model):
    """
    Homogeneous parts of the decoupled map as a point with profile
    (1, ..., d): block (i, k) = sum_l w_(i,l) c_(k,l) v_l^k
    """
    blocks = [
        [SymPoly.zero(model.m, k) for k in range(1, model.d + 1)]
        for _ in range(model.n)
    ]
    for l in range(model.r):
        v = model.V[:, l]
        for k in range(model.d):
            power = power_coords(v, k + 1)
            for i in range(model.n):
                coeff = model.W[i, l] * model.C[k, l]
                if coeff:
                    blocks[i][k] = blocks[i][k] + power.scale(coeff)
    return ProfilePoint(
        tuple(range(1, model.d + 1)), model.m, model.n, blocks
    )


def _proportional(u, v):
    return all(x == 0 for x in minors_2x2([u, v]))


def synth(m, n, d, r, seed=None, bound=None, max_attempts=1000):
    """
    Random decoupled model with integer entries in [-bound, bound]:
    pairwise non-proportional directions, nonzero mixing vectors and
    nonzero top-degree coefficients

    :param seed: int, seed of the generator (settings.DEFAULT_SEED)
    :param bound: int >= 1 (settings.DEFAULT_BOUND)
    """
    seed = settings.DEFAULT_SEED if seed is None else seed
    bound = settings.DEFAULT_BOUND if bound is None else bound
    if min(m, n, d, r) < 1:
        raise ValueError(
            f"Need m, n, d, r >= 1, got m={m}, n={n}, d={d}, r={r}"
        )
    if bound < 1:
        raise ValueError(f"Sampling bound must be >= 1, got {bound}")
    logger.debug(
        f"Synthesizing model: m={m}, n={n}, d={d}, r={r}, seed={seed}, bound={bound}"
    )
    rng = np.random.default_rng(seed)

    directions = []
    attempts = 0
    while len(directions) < r:
        attempts += 1
        if attempts > max_attempts:
            raise ValueError(
                f"Could not draw {r} pairwise non-proportional directions in "
                + f"{m} variables with entries bounded by {bound}"
            )
        v = sample_vector(m, rng, bound)
        if all(not _proportional(v, u) for u in directions):
            directions.append(v)

    V = np.array(directions, dtype=object).T.reshape(m, r)
    W = np.array(
        [sample_vector(n, rng, bound) for _ in range(r)], dtype=object
    ).T.reshape(n, r)
    C = np.array(
        rng.integers(-bound, bound + 1, size=(d, r)), dtype=object
    )
    for l in range(r):
        while C[d - 1, l] == 0:
            C[d - 1, l] = rng.integers(-bound, bound + 1)
    C = np.vectorize(int, otypes=[object])(C)
    return DecoupledModel(V, W, C)


# --------------------------------------------------------------------------- #
#                              recovery                                       #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class RecoveryReport:
    """
    Coefficients recovered degree by degree. Rows of C are None where the
    degree system is inconsistent.
    """

    profile: tuple
    C: tuple
    unique_per_degree: tuple
    consistent_per_degree: tuple
    rank_per_degree: tuple

    @property
    def unique(self):
        return all(self.unique_per_degree)

    @property
    def consistent(self):
        return all(self.consistent_per_degree)

    def to_dict(self):
        return {
            "profile": list(self.profile),
            "C": [
                None if row is None else [format_fraction(x) for x in row]
                for row in self.C
            ],
            "unique_per_degree": list(self.unique_per_degree),
            "consistent_per_degree": list(self.consistent_per_degree),
            "rank_per_degree": list(self.rank_per_degree),
        }

    def __str__(self):
        buf = StringIO()
        _console = Console(file=buf, force_jupyter=False)
        _console.print(self)

        return buf.getvalue()

    def __rich_console__(self, *args):
        rep = pi.Report(
            title="[b]scrollrank.RecoveryReport: ",
            color=salmon,
            accent=orange,
        )
        for a, row, unique, consistent in zip(
            self.profile,
            self.C,
            self.unique_per_degree,
            self.consistent_per_degree,
        ):
            if not consistent:
                rep.add(f"[{orange}]degree {a}:[/{orange}][{salmon}] inconsistent")
                continue
            status = "unique" if unique else "not unique"
            values = ", ".join(str(x) for x in row)
            rep.add(
                f"[{orange}]degree {a}:[/{orange}][{amber}] ({values}) {status}"
            )

        yield "\n"
        yield rep


def _directions(directions, m, n):
    out = []
    for pair in directions:
        v, w = pair
        v = as_vector(v)
        w = as_vector(w)
        if len(v) != m or len(w) != n:
            raise ValueError(
                f"Direction pair of sizes ({len(v)}, {len(w)}) does not match m={m}, n={n}"
            )
        if not any(v) or not any(w):
            raise ValueError("Directions must be nonzero")
        out.append((v, w))
    return out


def recover_coefficients(point, directions):
    """
    Solves, for each degree a_k of the point, the linear system
    pi_k(point) = sum_l c_(k,l) v_l^a_k (x) w_l in the unknowns c_(k,l).
    Underdetermined systems return their minimum-norm solution.

    :param point: ProfilePoint
    :param directions: sequence of (v_l, w_l) pairs
    :returns: RecoveryReport
    """
    directions = _directions(directions, point.m, point.n)
    r = len(directions)
    logger.debug(
        f"Recovering coefficients: profile={point.profile}, m={point.m}, n={point.n}, r={r}"
    )

    rows, unique, consistent, ranks = [], [], [], []
    for k, a in enumerate(point.profile):
        columns = []
        for v, w in directions:
            power = power_coords(v, a).dense()
            columns.append([wi * x for wi in w for x in power])
        b = point.degree_vector(k)
        if r:
            x, rank, ok = solve_min_norm(np.array(columns, dtype=object).T, b)
        else:
            x, rank, ok = [], 0, not any(b)
        rows.append(tuple(x) if ok else None)
        consistent.append(ok)
        unique.append(ok and rank == r)
        ranks.append(rank)

    return RecoveryReport(
        point.profile,
        tuple(rows),
        tuple(unique),
        tuple(consistent),
        tuple(ranks),
    )


# --------------------------------------------------------------------------- #
#                          dense polynomial maps                              #
# --------------------------------------------------------------------------- #


def parse_dense(coeffs, m, n, d):
    """
    Point with profile (1, ..., d) from monomial coefficients: the tensor
    coordinate of alpha is its coefficient divided by multinomial(alpha)

    :param coeffs: dict {(output, alpha): coefficient}, outputs 0-based
    """
    blocks = [[{} for _ in range(d)] for _ in range(n)]
    for (i, alpha), value in coeffs.items():
        alpha = MultiIndex(alpha)
        if not 0 <= i < n:
            raise ValueError(f"Output index {i} out of range for n = {n}")
        if alpha.m != m:
            raise ValueError(
                f"Monomial {tuple(alpha)} does not have {m} variables"
            )
        if alpha.degree == 0:
            raise ValueError("Constant terms are not allowed: f(0) must be 0")
        if alpha.degree > d:
            raise ValueError(
                f"Monomial {tuple(alpha)} has degree {alpha.degree} > {d}"
            )
        coord = to_fraction(value) / multinomial(alpha)
        block = blocks[i][alpha.degree - 1]
        block[alpha] = block.get(alpha, 0) + coord

    return ProfilePoint(
        tuple(range(1, d + 1)),
        m,
        n,
        [
            [SymPoly(m, k + 1, block) for k, block in enumerate(row)]
            for row in blocks
        ],
    )


def to_dense(point):
    """
    Monomial coefficients of a point, inverse of parse_dense

    :returns: dict {(output, alpha): coefficient}
    """
    return {
        (i, tuple(alpha)): value * multinomial(alpha)
        for i, row in enumerate(point.blocks)
        for block in row
        for alpha, value in block.coords.items()
    }


def dense_to_dict(point):
    """
    Dense-polynomial JSON of a point with profile (1, ..., d)
    """
    if point.profile != tuple(range(1, point.d + 1)):
        raise ValueError(
            f"Dense JSON needs the profile (1, ..., d), got {point.profile}"
        )
    return {
        "m": point.m,
        "n": point.n,
        "d": point.d,
        "terms": [
            {"output": i, "alpha": list(alpha), "coeff": format_fraction(c)}
            for (i, alpha), c in to_dense(point).items()
        ],
    }


def dense_from_dict(data):
    try:
        m, n, d = int(data["m"]), int(data["n"]), int(data["d"])
        coeffs = {}
        for term in data["terms"]:
            key = (int(term["output"]), tuple(term["alpha"]))
            coeffs[key] = coeffs.get(key, 0) + to_fraction(term["coeff"])
    except KeyError as err:
        raise ValueError(f"Dense polynomial JSON is missing the key {err}")
    return parse_dense(coeffs, m, n, d)


def point_from_dict(data):
    """
    Reads either a ProfilePoint JSON or a dense-polynomial JSON
    """
    if "terms" in data:
        return dense_from_dict(data)
    return ProfilePoint.from_dict(data)
