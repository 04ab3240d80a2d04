"""
Secant variety dimensions of Veronese scrolls through Terracini's lemma.

The tangent space to the r-th secant variety at a general sum of r points
is the span of the r tangent spaces, i.e. the column space of the
horizontally concatenated Jacobians. Its rank, measured at random integer
points, gives the dimension of the secant variety.
"""

from bisect import bisect_left
from dataclasses import dataclass, field
from io import StringIO
from math import ceil

import numpy as np
import pyinspect as pi
from loguru import logger
from myterial import amber, orange, salmon
from rich.console import Console
from rich.progress import track

from scrollrank import settings
from scrollrank._linalg import bareiss_pivots, float_rank, modp_pivots
from scrollrank._utils import as_profile
from scrollrank.bounds import AHExceptionPolicy, r1
from scrollrank.polyspace import space_dim
from scrollrank.scroll import (
    jacobian_at,
    jacobian_homogenized,
    sample_params,
    sample_vector,
)

BACKENDS = ("exact-rational", "prime-field", "float-svd")


@dataclass(frozen=True)
class RankBackend:
    """
    How ranks are computed: exactly over Q, modulo a large prime
    or from singular values
    """

    kind: str
    prime: int = None
    tolerance: float = None

    def __post_init__(self):
        if self.kind not in BACKENDS:
            raise ValueError(
                f"Unknown rank backend {self.kind!r}, use one of {BACKENDS}"
            )
        if (self.prime is not None) != (self.kind == "prime-field"):
            raise ValueError(
                "A prime is required by, and only by, the prime-field backend"
            )
        if (self.tolerance is not None) != (self.kind == "float-svd"):
            raise ValueError(
                "A tolerance is required by, and only by, the float-svd backend"
            )
        if self.prime is not None and self.prime < 2:
            raise ValueError(f"Invalid prime: {self.prime}")
        if self.tolerance is not None and not 0 < self.tolerance < 1:
            raise ValueError(f"Tolerance must be in (0, 1), got {self.tolerance}")

    @classmethod
    def from_name(cls, kind=None, prime=None, tolerance=None):
        """
        Builds a backend filling in the defaults from settings
        and ignoring parameters the backend does not use
        """
        kind = kind or settings.DEFAULT_BACKEND
        if kind == "prime-field":
            return cls(kind, prime=prime or settings.DEFAULT_PRIME)
        if kind == "float-svd":
            return cls(kind, tolerance=tolerance or settings.DEFAULT_TOLERANCE)
        return cls(kind)

    def __str__(self):
        return self.kind


def _as_backend(backend):
    if isinstance(backend, RankBackend):
        return backend
    return RankBackend.from_name(backend)


def rank_of(M, backend=None):
    """
    Rank of a rational matrix.

    :param M: 2D matrix of ints or Fractions
    :param backend: RankBackend or backend name
    """
    backend = _as_backend(backend)
    M = np.array(M, dtype=object)
    if M.ndim != 2:
        raise ValueError(f"Expected a 2D matrix, got shape {M.shape}")
    if 0 in M.shape:
        return 0

    if backend.kind == "exact-rational":
        return len(bareiss_pivots(M))
    elif backend.kind == "prime-field":
        return len(modp_pivots(M, backend.prime))
    else:
        return float_rank(M, backend.tolerance)


def _prefix_ranks(M, boundaries, backend, audit=False):
    """
    Ranks of the column prefixes M[:, :b] for every b in boundaries
    """
    if backend.kind == "float-svd":
        return [float_rank(M[:, :b], backend.tolerance) for b in boundaries]

    if backend.kind == "exact-rational":
        if M.shape[0] > settings.EXACT_AUDIT_MAX_ROWS:
            logger.warning(
                f"Exact elimination of a {M.shape} matrix, this may take a while"
            )
        pivots = bareiss_pivots(M)
    else:
        pivots = modp_pivots(M, backend.prime)
        if audit and M.shape[0] <= settings.EXACT_AUDIT_MAX_ROWS:
            exact = bareiss_pivots(M)
            if exact != pivots:
                logger.warning(
                    f"Prime field rank {len(pivots)} differs from exact rank {len(exact)}"
                )
                pivots = exact
    return [bisect_left(pivots, b) for b in boundaries]


def _check_homogenized(profile, n):
    d = profile[-1]
    if profile != tuple(range(d + 1)) or n != 1:
        raise ValueError(
            "Homogenized probes need the profile (0, 1, ..., d) and n = 1, "
            + f"got profile {profile} and n = {n}"
        )
    return d


def variety_dim(profile, m, n=1, homogenized=False):
    """
    Closed-form dimension of the affine cone being probed: m+n+d-2 for the
    scroll (times W), m+1 for the homogenized Veronese subvariety
    """
    profile = as_profile(profile)
    if homogenized:
        _check_homogenized(profile, n)
        return m + 1
    return m + n + len(profile) - 2


def secant_dims(
    profile,
    m,
    n=1,
    r_max=1,
    trials=None,
    seed=None,
    backend=None,
    homogenized=False,
    audit=False,
    bound=None,
):
    """
    Measured dimension of the r-th secant variety for every r <= r_max,
    from one elimination per trial. The maximum over trials is kept.

    :param profile: degree profile
    :param m: int, dim V
    :param n: int, dim W
    :param r_max: int >= 1
    :param trials: int, repetitions (settings.DEFAULT_TRIALS)
    :param seed: int, seed of the point sampler (settings.DEFAULT_SEED)
    :param backend: RankBackend or backend name
    :param homogenized: probe the Veronese subvariety of the
        (0, 1, ..., d) scroll instead of the whole scroll
    :param audit: recheck prime field ranks exactly on small matrices
    :param bound: int, sampling bound (settings.DEFAULT_BOUND)
    :returns: list, entry r-1 is the dimension of the r-th secant
    """
    profile = as_profile(profile)
    trials = settings.DEFAULT_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    backend = _as_backend(backend)
    if r_max < 1:
        raise ValueError(f"Secant order must be >= 1, got {r_max}")
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}")
    logger.debug(
        f"Secant dims: profile={profile}, m={m}, n={n}, r_max={r_max}, "
        + f"trials={trials}, seed={seed}, backend={backend}, homogenized={homogenized}"
    )

    rng = np.random.default_rng(seed)
    dims = [0] * r_max
    for _ in range(trials):
        if homogenized:
            d = _check_homogenized(profile, n)
            blocks = [
                jacobian_homogenized(
                    sample_vector(m, rng, bound),
                    sample_vector(1, rng, bound)[0],
                    d,
                )
                for _ in range(r_max)
            ]
        else:
            blocks = [
                jacobian_at(sample_params(profile, m, n, rng, bound))
                for _ in range(r_max)
            ]
        per_point = blocks[0].shape[1]
        ranks = _prefix_ranks(
            np.hstack(blocks),
            [per_point * r for r in range(1, r_max + 1)],
            backend,
            audit=audit,
        )
        dims = [max(a, b) for a, b in zip(dims, ranks)]
    return dims


@dataclass(frozen=True)
class SecantProbe:
    """
    Result of a Terracini dimension probe of the r-th secant variety
    """

    profile: tuple
    m: int
    n: int
    r: int
    measured_dim: int
    expected_dim: int
    defect: int
    trials: int
    seed: int
    backend: str
    homogenized: bool = False
    warnings: tuple = field(default_factory=tuple)

    @property
    def defective(self):
        return self.defect > 0

    def to_dict(self):
        return {
            "profile": list(self.profile),
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "measured_dim": self.measured_dim,
            "expected_dim": self.expected_dim,
            "defect": self.defect,
            "trials": self.trials,
            "seed": self.seed,
            "backend": self.backend,
            "homogenized": self.homogenized,
            "warnings": list(self.warnings),
        }

    def __str__(self):
        buf = StringIO()
        _console = Console(file=buf, force_jupyter=False)
        _console.print(self)

        return buf.getvalue()

    def __rich_console__(self, *args):
        rep = pi.Report(
            title="[b]scrollrank.SecantProbe: ",
            color=salmon,
            accent=orange,
        )

        rep.add(
            f"[b {orange}]profile:[/b {orange}][{amber}] {self.profile}  m={self.m}  n={self.n}"
        )
        rep.add(f"[b {orange}]secant order:[/b {orange}][{amber}] {self.r}")
        rep.line()
        rep.add(f"[{orange}]measured dim:[/{orange}][{amber}] {self.measured_dim}")
        rep.add(f"[{orange}]expected dim:[/{orange}][{amber}] {self.expected_dim}")
        rep.add(f"[{orange}]defect:[/{orange}][{amber}] {self.defect}")
        rep.add(
            f"[{orange}]backend:[/{orange}][{amber}] {self.backend} ({self.trials} trials, seed {self.seed})"
        )
        for warning in self.warnings:
            rep.add(f"[{salmon}]warning: {warning}")

        yield "\n"
        yield rep


def secant_probes(
    profile,
    m,
    n=1,
    r_max=1,
    trials=None,
    seed=None,
    backend=None,
    homogenized=False,
    audit=False,
    bound=None,
):
    """
    SecantProbe records for every r <= r_max, see secant_dims
    """
    profile = as_profile(profile)
    trials = settings.DEFAULT_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    backend = _as_backend(backend)
    dims = secant_dims(
        profile, m, n, r_max, trials, seed, backend, homogenized, audit, bound
    )

    ambient = space_dim(profile, m, n)
    dim_x = variety_dim(profile, m, n, homogenized)
    warnings = ()
    if dims[0] != dim_x:
        warning = (
            f"Measured dimension {dims[0]} of the variety differs from "
            + f"the closed form {dim_x}, using the measured value"
        )
        logger.warning(warning)
        warnings = (warning,)
        dim_x = dims[0]

    probes = []
    for r, measured in enumerate(dims, start=1):
        expected = min(r * dim_x, ambient)
        probes.append(
            SecantProbe(
                profile=profile,
                m=m,
                n=n,
                r=r,
                measured_dim=measured,
                expected_dim=expected,
                defect=expected - measured,
                trials=trials,
                seed=seed,
                backend=str(backend),
                homogenized=homogenized,
                warnings=warnings,
            )
        )
    return probes


def secant_dim_probe(
    profile,
    m,
    n=1,
    r=1,
    trials=None,
    seed=None,
    backend=None,
    homogenized=False,
    audit=False,
    bound=None,
):
    """
    Dimension of the r-th secant variety of the scroll (times W),
    measured at random points.

    :returns: SecantProbe
    """
    return secant_probes(
        profile, m, n, r, trials, seed, backend, homogenized, audit, bound
    )[-1]


def max_nondefective_rank(
    profile, m, n=1, backend=None, cap=None, trials=None, seed=None, bound=None
):
    """
    Largest r <= cap such that every secant variety of order <= r has the
    expected dimension. 0 when already the variety itself is defective.

    :param cap: int >= 1, defaults to m * n
    """
    cap = m * n if cap is None else cap
    if cap < 1:
        raise ValueError(f"Cap must be >= 1, got {cap}")
    logger.debug(
        f"Max non defective rank: profile={profile}, m={m}, n={n}, cap={cap}"
    )

    probes = secant_probes(
        profile, m, n, cap, trials, seed, backend, bound=bound
    )
    best = 0
    for probe in probes:
        if probe.defective:
            break
        best = probe.r
    return best


def generic_rank_probe(
    profile,
    m,
    n=1,
    backend=None,
    trials=None,
    seed=None,
    homogenized=False,
    bound=None,
):
    """
    Smallest r for which the r-th secant variety fills the ambient space
    """
    profile = as_profile(profile)
    ambient = space_dim(profile, m, n)
    dim_x = variety_dim(profile, m, n, homogenized)
    R = min(ceil(ambient / max(dim_x, 1)) + 1, ambient)
    logger.debug(
        f"Generic rank probe: profile={profile}, m={m}, n={n}, ambient={ambient}"
    )

    while True:
        dims = secant_dims(
            profile, m, n, R, trials, seed, backend, homogenized, bound=bound
        )
        if dims[-1] == ambient:
            return dims.index(ambient) + 1
        if R == ambient:
            raise RuntimeError(
                f"Secant varieties of profile {profile} (m={m}, n={n}) "
                + f"stop at dimension {dims[-1]} < {ambient}"
            )
        R = min(2 * R, ambient)


# --------------------------------------------------------------------------- #
#                        Alexander-Hirschowitz audit                          #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class AHCell:
    m: int
    d: int
    probe_rank: int
    expected_rank: int

    @property
    def defective(self):
        return self.probe_rank > self.expected_rank


@dataclass(frozen=True)
class AHAudit:
    """
    Generic ranks of Veronese varieties measured by the probe,
    compared with ceil(r1) and with a printed exception list
    """

    cells: tuple
    printed: frozenset

    @property
    def defective_pairs(self):
        return frozenset((c.m, c.d) for c in self.cells if c.defective)

    @property
    def audited_pairs(self):
        return frozenset((c.m, c.d) for c in self.cells)

    @property
    def unlisted(self):
        """
        Defective pairs missing from the printed list
        """
        return self.defective_pairs - self.printed

    @property
    def spurious(self):
        """
        Printed pairs within the audited grid that the probe finds regular
        """
        return (self.printed & self.audited_pairs) - self.defective_pairs

    def to_dict(self):
        return {
            "cells": [
                {
                    "m": c.m,
                    "d": c.d,
                    "probe_generic_rank": c.probe_rank,
                    "ceil_r1": c.expected_rank,
                    "defective": c.defective,
                }
                for c in self.cells
            ],
            "printed_exceptions": sorted(map(list, self.printed)),
            "probe_exceptions": sorted(map(list, self.defective_pairs)),
            "unlisted": sorted(map(list, self.unlisted)),
            "spurious": sorted(map(list, self.spurious)),
        }

    def __str__(self):
        buf = StringIO()
        _console = Console(file=buf, force_jupyter=False)
        _console.print(self)

        return buf.getvalue()

    def __rich_console__(self, *args):
        rep = pi.Report(
            title="[b]scrollrank.AHAudit: ",
            color=salmon,
            accent=orange,
        )
        for c in self.cells:
            flag = f" [{salmon}]defective" if c.defective else ""
            rep.add(
                f"[{orange}](m={c.m}, d={c.d}):[/{orange}][{amber}] generic rank {c.probe_rank}, ceil(r1) {c.expected_rank}{flag}"
            )
        rep.line()
        rep.add(f"[b {orange}]unlisted:[/b {orange}][{amber}] {sorted(self.unlisted)}")
        rep.add(f"[b {orange}]spurious:[/b {orange}][{amber}] {sorted(self.spurious)}")

        yield "\n"
        yield rep


def audit_ah(
    m_values,
    d_values,
    backend=None,
    trials=None,
    seed=None,
    printed=None,
    bound=None,
):
    """
    Measures the generic rank of the degree d Veronese variety in m
    variables for every (m, d) of the grid, flagging the pairs where it
    exceeds ceil(r1(m, d)).

    :param m_values: iterable of number of variables, each >= 2
    :param d_values: iterable of degrees, each >= 3
    :param printed: exception pairs to compare against, defaults to the
        list shipped with AHExceptionPolicy.printed()
    """
    printed = (
        AHExceptionPolicy.printed().exception_pairs
        if printed is None
        else frozenset(tuple(p) for p in printed)
    )
    grid = [(m, d) for m in m_values for d in d_values]
    for m, d in grid:
        if m < 2 or d < 3:
            raise ValueError(f"AH audit needs m >= 2 and d >= 3, got ({m}, {d})")

    cells = []
    for m, d in track(
        grid,
        description="Auditing AH exceptions",
        console=Console(stderr=True),
        transient=True,
    ):
        cells.append(
            AHCell(
                m,
                d,
                generic_rank_probe(
                    (d,), m, 1, backend, trials, seed, bound=bound
                ),
                ceil(r1(m, d)),
            )
        )
    audit = AHAudit(tuple(cells), frozenset(printed))
    if audit.unlisted or audit.spurious:
        logger.debug(
            f"AH audit: unlisted {sorted(audit.unlisted)}, spurious {sorted(audit.spurious)}"
        )
    return audit
