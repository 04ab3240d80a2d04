"""
Rank and linear solve kernels over Q, F_p and floating point.

Every elimination here pivots column by column, so the number of pivots
found among the first k columns is the rank of the first k columns. This
gives the ranks of all column prefixes of a matrix from one elimination,
which is what a sweep over secant orders needs.
"""

from fractions import Fraction
from math import lcm

import numpy as np

MERSENNE_61 = (1 << 61) - 1

_M61 = np.uint64(MERSENNE_61)
_MASK32 = np.uint64(0xFFFFFFFF)
_MASK29 = np.uint64((1 << 29) - 1)
_U3 = np.uint64(3)
_U29 = np.uint64(29)
_U32 = np.uint64(32)
_U61 = np.uint64(61)


def as_object_matrix(M):
    """
    Copy of M as a 2D numpy object array (entries kept exact)
    """
    A = np.array(M, dtype=object)
    if A.ndim != 2:
        raise ValueError(f"Expected a 2D matrix, got shape {A.shape}")
    return A


def integer_rows(M):
    """
    Scales every row of a rational matrix by the lcm of its denominators.
    The result is an integer object array with the same row space.
    """
    A = as_object_matrix(M)
    out = np.empty(A.shape, dtype=object)
    for i, row in enumerate(A):
        fracs = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        out[i, :] = [f.numerator * (scale // f.denominator) for f in fracs]
    return out


# --------------------------------------------------------------------------- #
#                                  exact (Q)                                  #
# --------------------------------------------------------------------------- #


def bareiss_pivots(M):
    """
    Fraction-free (Bareiss) elimination of a rational matrix.
    Returns the list of pivot columns.
    """
    A = integer_rows(M)
    rows, cols = A.shape
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if A[i, c] != 0]
        if not nz:
            continue
        if nz[0] != r:
            A[[r, nz[0]], :] = A[[nz[0], r], :]
        piv = A[r, c]
        if r + 1 < rows:
            # exact division: entries stay minors of the original matrix
            A[r + 1 :, c + 1 :] = (
                piv * A[r + 1 :, c + 1 :]
                - np.outer(A[r + 1 :, c], A[r, c + 1 :])
            ) // prev
            A[r + 1 :, c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rref(M):
    """
    Reduced row echelon form over Q.

    :returns: (R, pivots) with R an object array of Fractions
    """
    A = np.array(
        [[Fraction(x) for x in row] for row in as_object_matrix(M)],
        dtype=object,
    ).reshape(np.shape(M))
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if A[i, c] != 0]
        if not nz:
            continue
        if nz[0] != r:
            A[[r, nz[0]], :] = A[[nz[0], r], :]
        A[r, :] = A[r, :] / A[r, c]
        for i in range(rows):
            if i != r and A[i, c] != 0:
                A[i, :] = A[i, :] - A[i, c] * A[r, :]
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(M):
    """
    Basis of the right kernel of M over Q, as a list of Fraction vectors
    """
    R, pivots = rref(M)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for row, p in enumerate(pivots):
            x[p] = -R[row, f]
        basis.append(x)
    return basis


def solve_min_norm(A, b):
    """
    Exact minimum-norm solution of A x = b over Q.

    The particular solution read off the reduced echelon form is projected
    orthogonally onto the row space of A (the complement of its kernel).

    :returns: (x, rank, consistent); x is None when inconsistent
    """
    A = as_object_matrix(A)
    rows, cols = A.shape
    b = [Fraction(x) for x in b]
    if len(b) != rows:
        raise ValueError(
            f"Right-hand side has {len(b)} entries for a matrix with {rows} rows"
        )

    augmented = np.empty((rows, cols + 1), dtype=object)
    augmented[:, :cols] = A
    augmented[:, cols] = b
    R, pivots = rref(augmented)
    if cols in pivots:
        return None, len(pivots) - 1, False

    x = [Fraction(0)] * cols
    for row, p in enumerate(pivots):
        x[p] = R[row, cols]

    kernel = nullspace(A)
    if kernel:
        # x - N (N^T N)^-1 N^T x
        N = np.array(kernel, dtype=object).T
        gram = N.T.dot(N)
        coeffs = solve_square(gram, N.T.dot(np.array(x, dtype=object)))
        x = list(np.array(x, dtype=object) - N.dot(coeffs))
    return [Fraction(v) for v in x], len(pivots), True


def solve_square(A, b):
    """
    Solves a nonsingular square system exactly over Q
    """
    A = as_object_matrix(A)
    n = A.shape[0]
    augmented = np.empty((n, n + 1), dtype=object)
    augmented[:, :n] = A
    augmented[:, n] = list(b)
    R, pivots = rref(augmented)
    if pivots != list(range(n)):
        raise ArithmeticError("Singular system in exact solve")
    return R[:, n]


# --------------------------------------------------------------------------- #
#                                 prime field                                 #
# --------------------------------------------------------------------------- #


def _mulmod_m61(a, b):
    """
    a * b mod 2^61 - 1 for uint64 arrays with entries < 2^61.
    Splits into 32 bit halves so no partial product overflows.
    """
    a_hi, a_lo = a >> _U32, a & _MASK32
    b_hi, b_lo = b >> _U32, b & _MASK32
    hh = a_hi * b_hi  # < 2^58, weight 2^64 = 8 mod p
    mid = a_hi * b_lo + a_lo * b_hi  # < 2^62, weight 2^32
    ll = a_lo * b_lo  # < 2^64
    x = (
        (hh << _U3)
        + (mid >> _U29)
        + ((mid & _MASK29) << _U32)
        + (ll & _M61)
        + (ll >> _U61)
    )
    x = (x & _M61) + (x >> _U61)
    return np.where(x >= _M61, x - _M61, x)


class _ModP:
    """
    Vectorized arithmetic in F_p on numpy arrays. Uses uint64 storage
    for p = 2^61 - 1 and for p < 2^32, python ints otherwise.
    """

    def __init__(self, p):
        if p < 2:
            raise ValueError(f"Not a prime: {p}")
        self.p = p
        if p == MERSENNE_61:
            self.dtype = np.uint64
            self.mul = _mulmod_m61
        elif p < (1 << 32):
            self.dtype = np.uint64
            P = np.uint64(p)
            self.mul = lambda a, b: (a * b) % P
        else:
            self.dtype = object
            self.mul = lambda a, b: (a * b) % p

    def reduce(self, value):
        if isinstance(value, int):
            return value % self.p
        value = Fraction(value)
        den = value.denominator % self.p
        if den == 0:
            raise ArithmeticError(
                f"Prime {self.p} divides a denominator, re-randomize"
            )
        return value.numerator * pow(den, -1, self.p) % self.p

    def matrix(self, M):
        A = as_object_matrix(M)
        out = np.empty(A.shape, dtype=self.dtype)
        for i, row in enumerate(A):
            out[i, :] = [self.reduce(x) for x in row]
        return out

    def sub(self, a, b):
        if self.dtype is object:
            return (a - b) % self.p
        P = np.uint64(self.p)
        return (a + (P - b)) % P


def modp_pivots(M, p):
    """
    Gaussian elimination of M reduced mod p; returns the pivot columns.
    The rank mod p never exceeds the rank over Q.
    """
    F = _ModP(p)
    A = F.matrix(M)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv], :] = A[[piv, r], :]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = F.mul(A[r, c:], F.dtype(inv) if F.dtype is not object else inv)
        below = r + 1 + np.flatnonzero(A[r + 1 :, c] != 0)
        if below.size:
            factors = A[below, c][:, None]
            A[np.ix_(below, np.arange(c, cols))] = F.sub(
                A[below, c:], F.mul(factors, A[r, c:][None, :])
            )
        pivots.append(c)
        r += 1
    return pivots


# --------------------------------------------------------------------------- #
#                                floating point                               #
# --------------------------------------------------------------------------- #


def float_rank(M, tolerance):
    """
    Number of singular values above tolerance * largest singular value
    """
    A = np.array(as_object_matrix(M), dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tolerance * s[0]))
