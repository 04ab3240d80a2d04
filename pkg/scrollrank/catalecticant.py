"""
First catalecticant matrices and the determinantal description of
Veronese scrolls.

A point f = (f_1, ..., f_d) of S^a V lies on the Veronese scroll X_a
(i.e. f = (c_1 v^a_1, ..., c_d v^a_d)) if and only if the stacked matrix
[C_f1 | ... | C_fd] has rank at most one, i.e. all its 2x2 minors vanish.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from loguru import logger

from scrollrank._linalg import bareiss_pivots
from scrollrank._utils import as_profile
from scrollrank.polyspace import SymPoly, multi_index_set, space_dim


@dataclass(frozen=True)
class ProfilePoint:
    """
    Element of S^a V (x) W: an n x d grid of homogeneous polynomials,
    block (i, k) having degree a_k, all in m variables.
    """

    profile: tuple
    m: int
    n: int
    blocks: tuple

    def __post_init__(self):
        profile = as_profile(self.profile)
        object.__setattr__(self, "profile", profile)
        if self.m < 1 or self.n < 1:
            raise ValueError(
                f"m and n must be >= 1, got m={self.m}, n={self.n}"
            )

        blocks = tuple(tuple(row) for row in self.blocks)
        if len(blocks) != self.n or any(len(r) != len(profile) for r in blocks):
            raise ValueError(
                f"Expected an {self.n} x {len(profile)} grid of blocks"
            )
        for row in blocks:
            for a, block in zip(profile, row):
                if not isinstance(block, SymPoly):
                    raise TypeError(
                        f"Blocks must be SymPoly, not {type(block).__name__}"
                    )
                if block.m != self.m or block.degree != a:
                    raise ValueError(
                        f"Block of degree {block.degree} in {block.m} variables "
                        + f"does not match degree {a} in {self.m} variables"
                    )
        object.__setattr__(self, "blocks", blocks)

    @property
    def d(self):
        return len(self.profile)

    @property
    def ambient_dim(self):
        return space_dim(self.profile, self.m, self.n)

    def block(self, i, k):
        return self.blocks[i][k]

    def __add__(self, other):
        if not isinstance(other, ProfilePoint):
            return NotImplemented
        if (self.profile, self.m, self.n) != (other.profile, other.m, other.n):
            raise ValueError("Cannot add points of different spaces")
        return ProfilePoint(
            self.profile,
            self.m,
            self.n,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.blocks, other.blocks)
            ],
        )

    def scale(self, scalar):
        return ProfilePoint(
            self.profile,
            self.m,
            self.n,
            [[b.scale(scalar) for b in row] for row in self.blocks],
        )

    def is_zero(self):
        return all(b.is_zero() for row in self.blocks for b in row)

    def vector(self):
        """
        All coordinates: blocks (i, k) in row-major order,
        coordinates within a block in polyspace order
        """
        return [x for row in self.blocks for b in row for x in b.dense()]

    def degree_vector(self, k):
        """
        Coordinates of the projection onto S^a_k V (x) W,
        output-major then polyspace order
        """
        return [x for row in self.blocks for x in row[k].dense()]

    @classmethod
    def zero(cls, profile, m, n=1):
        profile = as_profile(profile)
        return cls(
            profile,
            m,
            n,
            [[SymPoly.zero(m, a) for a in profile] for _ in range(n)],
        )

    def to_dict(self):
        return {
            "profile": list(self.profile),
            "m": self.m,
            "n": self.n,
            "blocks": [[b.to_dict() for b in row] for row in self.blocks],
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                as_profile(data["profile"]),
                int(data["m"]),
                int(data.get("n", 1)),
                [
                    [SymPoly.from_dict(b) for b in row]
                    for row in data["blocks"]
                ],
            )
        except KeyError as err:
            raise ValueError(f"Point JSON is missing the key {err}")


@dataclass(frozen=True)
class CatalecticantMatrix:
    """
    m x binom(m+s-2, s-1) matrix with entry (i, beta) = f_{beta + e_i}
    """

    entries: np.ndarray
    rows: tuple
    columns: tuple

    @property
    def shape(self):
        return self.entries.shape

    def rank(self):
        return len(bareiss_pivots(self.entries))

    def to_csv(self):
        """
        CSV rendering for debugging, one header row of column multi-indices
        """
        header = ["i"] + ["(" + " ".join(map(str, b)) + ")" for b in self.columns]
        lines = [",".join(header)]
        for i, row in zip(self.rows, self.entries):
            lines.append(",".join([str(i)] + [str(x) for x in row]))
        return "\n".join(lines)


def catalecticant(p):
    """
    First catalecticant matrix of a homogeneous polynomial of degree s >= 1.
    Rows are the variables, columns the degree s-1 multi-indices.

    :param p: SymPoly
    """
    s, m = p.degree, p.m
    if s < 1:
        raise ValueError("The catalecticant of a constant is not defined")

    columns = multi_index_set(s - 1, m)
    entries = np.empty((m, len(columns)), dtype=object)
    for i in range(m):
        for j, beta in enumerate(columns):
            alpha = tuple(b + (1 if k == i else 0) for k, b in enumerate(beta))
            entries[i, j] = p[alpha]
    return CatalecticantMatrix(entries, tuple(range(1, m + 1)), columns)


def _check_membership_input(f):
    if not isinstance(f, ProfilePoint):
        raise TypeError(f"Expected a ProfilePoint, not {type(f).__name__}")
    if f.n != 1:
        raise ValueError(
            f"The stacked catalecticant is defined for n = 1, got n = {f.n}"
        )
    if any(a == 0 for a in f.profile):
        raise ValueError(
            f"Degree profile {f.profile} contains 0: catalecticants need degrees >= 1"
        )


def stacked_catalecticant_matrix(f):
    """
    [C_f1 | ... | C_fd] as a CatalecticantMatrix, columns labelled by the
    multi-indices of their block

    :param f: ProfilePoint with n = 1 and all degrees >= 1
    """
    _check_membership_input(f)
    blocks = [catalecticant(block) for block in f.blocks[0]]
    return CatalecticantMatrix(
        np.hstack([C.entries for C in blocks]),
        blocks[0].rows,
        tuple(beta for C in blocks for beta in C.columns),
    )


def stacked_catalecticant(f):
    """
    Horizontal concatenation [C_f1 | ... | C_fd], m rows

    :param f: ProfilePoint with n = 1 and all degrees >= 1
    """
    return stacked_catalecticant_matrix(f).entries


def scroll_membership(f):
    """
    True iff f lies on the Veronese scroll, i.e. iff the stacked
    catalecticant has rank <= 1 (computed exactly over Q)

    :param f: ProfilePoint with n = 1 and all degrees >= 1
    """
    S = stacked_catalecticant(f)
    rank = len(bareiss_pivots(S))
    logger.debug(f"Stacked catalecticant {S.shape} has rank {rank}")
    return rank <= 1


def minors_2x2(S):
    """
    All 2x2 minors of S: ordered row pairs, then ordered column pairs

    :param S: 2D matrix with at least two rows
    """
    S = np.asarray(S, dtype=object)
    if S.ndim != 2 or S.shape[0] < 2:
        raise ValueError("2x2 minors need a matrix with at least 2 rows")
    return [
        Fraction(S[i, k] * S[j, l] - S[i, l] * S[j, k])
        for i, j in combinations(range(S.shape[0]), 2)
        for k, l in combinations(range(S.shape[1]), 2)
    ]
