"""
Closed-form bounds on identifiability, generic rank and maximal rank
of Waring-like decompositions and Veronese scrolls.

Every function returns exact integers or Fractions, ceilings are taken
only where the bounds themselves take them.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from io import StringIO
from math import ceil, comb, isqrt

import pyinspect as pi
from loguru import logger
from myterial import amber, orange, salmon
from rich.console import Console

from scrollrank._utils import as_profile, format_fraction
from scrollrank.polyspace import sym_dim

# (m, d) pairs as printed next to the Alexander-Hirschowitz theorem
PRINTED_AH_EXCEPTIONS = frozenset({(3, 3), (4, 3), (4, 5), (4, 6)})

# (m, d) pairs where generic identifiability of Waring decompositions
# fails one step below r1
R2_EXCEPTIONS = frozenset({(4, 4), (3, 6), (6, 3)})


def _check_md(m, d, min_d=3):
    if m < 2:
        raise ValueError(f"Need m >= 2, got m = {m}")
    if d < min_d:
        raise ValueError(f"Need d >= {min_d}, got d = {d}")


# --------------------------------------------------------------------------- #
#                               generic ranks                                 #
# --------------------------------------------------------------------------- #


def r1(m, d):
    """
    binom(m+d-1, d) / m: dimension count for the generic Waring rank
    of degree d forms in m variables
    """
    if m < 1 or d < 1:
        raise ValueError(f"Need m, d >= 1, got m = {m}, d = {d}")
    return Fraction(comb(m + d - 1, d), m)


@dataclass(frozen=True)
class AHExceptionPolicy:
    """
    Pairs (m, d) where the generic Waring rank exceeds ceil(r1(m, d)) by one
    """

    exception_pairs: frozenset = PRINTED_AH_EXCEPTIONS
    source: str = "printed"

    def __post_init__(self):
        pairs = frozenset(tuple(int(x) for x in p) for p in self.exception_pairs)
        for m, d in pairs:
            if m < 2 or d < 3:
                raise ValueError(
                    f"Exception pairs need m >= 2 and d >= 3, got ({m}, {d})"
                )
        if self.source not in ("printed", "probe-audited"):
            raise ValueError(f"Unknown exception list source: {self.source!r}")
        object.__setattr__(self, "exception_pairs", pairs)

    @classmethod
    def printed(cls):
        return cls(PRINTED_AH_EXCEPTIONS, "printed")

    @classmethod
    def probe_audited(cls, audit):
        """
        Policy built from the defective pairs found by a Terracini audit

        :param audit: terracini.AHAudit
        """
        return cls(audit.defective_pairs, "probe-audited")

    def __contains__(self, pair):
        return tuple(pair) in self.exception_pairs


def ah_generic_rank(m, d, policy=None):
    """
    Generic Waring rank of degree d forms in m variables:
    ceil(r1(m, d)), plus one on the policy's exceptions

    :param policy: AHExceptionPolicy, defaults to the printed list
    """
    if d <= 2:
        raise ValueError(
            f"The generic rank formula needs d >= 3, got d = {d} (quadrics)"
        )
    policy = policy or AHExceptionPolicy.printed()
    return ceil(r1(m, d)) + (1 if (m, d) in policy else 0)


def r2(m, d):
    _check_md(m, d)
    return r1(m, d) - (1 if (m, d) in R2_EXCEPTIONS else 0)


def r3(m, d):
    _check_md(m, d)
    if d == 3:
        return r1(m, d) - Fraction(m - 2, 3)
    return r1(m, d)


def r4(m, n, d):
    """
    binom(m+d-1, d) / (m+n-1), the Segre product bound
    """
    _check_md(m, d)
    if n < 1:
        raise ValueError(f"Need n >= 1, got n = {n}")
    return Fraction(comb(m + d - 1, d), m + n - 1)


def r5(m, n, d):
    """
    Identifiability threshold for S^d V (x) W: r2 for n = 1,
    min(r4, r3) otherwise
    """
    if n == 1:
        return r2(m, d)
    return min(r4(m, n, d), r3(m, d))


# --------------------------------------------------------------------------- #
#                             identifiability                                 #
# --------------------------------------------------------------------------- #


def identifiability_bound(profile, m, n=1):
    """
    Largest r for which the Waring-like decomposition with the given
    profile is guaranteed r-identifiable:
    min(ceil(r5(m, n, a_d)) - 1, dim S^a_1 V) * n

    :param profile: nondecreasing degree profile with a_d >= 3
    """
    profile = as_profile(profile)
    a_1, a_d = profile[0], profile[-1]
    if a_d < 3:
        raise ValueError(f"Identifiability bound needs a_d >= 3, got {profile}")
    _check_md(m, a_d)
    return min(ceil(r5(m, n, a_d)) - 1, sym_dim(a_1, m)) * n


def mn_identifiable(m, n, d):
    """
    For the profile (1, ..., d): mn-identifiable as soon as m < r5(m, n, d)
    """
    return m < r5(m, n, d)


def dis_bound(m, n):
    """
    Largest r with 2 r (r-1) <= (m-1) m (n-1) n
    """
    if m < 1 or n < 1:
        raise ValueError(f"Need m, n >= 1, got m = {m}, n = {n}")
    rhs = (m - 1) * m * (n - 1) * n
    # r^2 - r - rhs/2 <= 0  =>  r <= (1 + sqrt(1 + 2 rhs)) / 2
    r = (1 + isqrt(1 + 2 * rhs)) // 2
    while 2 * r * (r - 1) > rhs:
        r -= 1
    while 2 * (r + 1) * r <= rhs:
        r += 1
    return r


@dataclass(frozen=True)
class DefectFormula:
    defect: int
    valid: bool
    dim: int = None


def defect_formula(profile, m, n=1, r=1):
    """
    Predicted defect sum_j max(r - n dim S^a_j V, 0) of the r-th secant of
    the scroll, and whether the hypotheses under which it is proved hold:
    m >= 2, a_1 >= 1, a_(d-1) < a_d, a_d >= 3 and r <= (ceil(r5) - 1) n
    """
    profile = as_profile(profile)
    defect = sum(max(r - n * sym_dim(a, m), 0) for a in profile)

    a_d = profile[-1]
    valid = (
        m >= 2
        and profile[0] >= 1
        and a_d >= 3
        and (len(profile) == 1 or profile[-2] < a_d)
    )
    if valid:
        valid = r <= (ceil(r5(m, n, a_d)) - 1) * n
    return DefectFormula(defect, valid)


def secant_dim_formula(profile, m, n=1, r=1):
    """
    Dimension of the r-th secant variety of the scroll (times W) where the
    defect formula is proved: r (m+n+d-2) minus the predicted defect
    """
    profile = as_profile(profile)
    formula = defect_formula(profile, m, n, r)
    dim = r * (m + n + len(profile) - 2) - formula.defect
    return DefectFormula(formula.defect, formula.valid, dim)


# --------------------------------------------------------------------------- #
#                        generic and maximal rank                             #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class RgenBounds:
    lower: int
    upper: int
    exact: int = None


def rgen_d1d_bounds(m, d):
    """
    Bounds on the generic rank of the scroll with profile (d-1, d),
    exact when m > (d-1)^2

    :param m: int > 5
    :param d: int >= 4
    """
    if d < 4 or m <= 5:
        raise ValueError(f"Need d >= 4 and m > 5, got m = {m}, d = {d}")
    low_dim, top_dim = comb(m + d - 2, d - 1), comb(m + d - 1, d)
    lower = ceil(Fraction(low_dim + top_dim, m + 1))
    upper = ceil(Fraction(low_dim + (m - 1) * ceil(Fraction(top_dim, m)), m))
    exact = lower if m > (d - 1) ** 2 else None
    return RgenBounds(lower, upper, exact)


def rgen_full_profile(m, d):
    """
    Bounds on the generic rank of the scroll with profile (1, ..., d) and
    n = 1. Once r1(m, d) < dim S^(d-1) V and dim S^(d-2) V < r1(m, d),
    the lower degrees saturate before the generic rank is reached and it
    equals the generic rank of the (d-1, d) scroll.

    :param m: int > max(5, (d-2)(d-1))
    :param d: int >= 4
    """
    if d < 4 or m <= max(5, (d - 2) * (d - 1)):
        raise ValueError(
            f"Need d >= 4 and m > max(5, (d-2)(d-1)), got m = {m}, d = {d}"
        )
    return rgen_d1d_bounds(m, d)


@dataclass(frozen=True)
class RmaxBounds:
    bbs: int
    naive: int
    ours: int = None
    ours_simplified: Fraction = None


def rmax_bounds(m, d):
    """
    Upper bounds on the maximal rank of degree d polynomials in m variables
    (profile (1, ..., d)). `ours` is twice the generic rank of the (d-1, d)
    scroll and needs d >= 4 and m > (d-1)^2.
    """
    if m < 2 or d < 1:
        raise ValueError(f"Need m >= 2 and d >= 1, got m = {m}, d = {d}")
    bbs = comb(m + d - 2, d - 1)
    naive = comb(m + d - 1, d)
    if d >= 4 and m > (d - 1) ** 2:
        ours = 2 * rgen_d1d_bounds(m, d).lower
        simplified = (
            Fraction(2, d) * bbs * (1 + Fraction(2 * (d - 1), m + 1))
        )
        return RmaxBounds(bbs, naive, ours, simplified)
    return RmaxBounds(bbs, naive)


@dataclass(frozen=True)
class PartialIdentifiability:
    applies: bool
    max_r: int


def partial_identifiability_range(m, n, d, s):
    """
    Terms of degree >= s are identifiable up to rank binom(m+s-1, s) n,
    provided binom(m+s-1, s) < r5(m, n, d)

    :param s: int, 1 < s < d
    """
    if not 1 < s < d:
        raise ValueError(f"Need 1 < s < d, got s = {s}, d = {d}")
    size = sym_dim(s, m)
    return PartialIdentifiability(size < r5(m, n, d), size * n)


def lemma_inequalities(m, d):
    """
    The two inequalities comparing r1(m, d) with the dimensions of
    S^(d-1) V and S^(d-2) V. Each entry is None when its hypothesis
    (m >= 2, resp. m > (d-2)(d-1)) fails.
    """
    _check_md(m, d)
    upper = r1(m, d) < sym_dim(d - 1, m)
    lower = (
        sym_dim(d - 2, m) < r1(m, d) if m > (d - 2) * (d - 1) else None
    )
    return {"r1_below_dim_d-1": upper, "dim_d-2_below_r1": lower}


# --------------------------------------------------------------------------- #
#                                  report                                     #
# --------------------------------------------------------------------------- #


def _fmt(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return format_fraction(value)
    return value


def _fmt_rgen(bounds):
    if bounds is None:
        return None
    return {"lower": bounds.lower, "upper": bounds.upper, "exact": bounds.exact}


@dataclass(frozen=True)
class BoundsReport:
    """
    All closed-form quantities for (m, n, d), with the profile (1, ..., d).
    Entries whose hypotheses fail are None, with the reason in `reasons`.
    """

    m: int
    n: int
    d: int
    r1: Fraction
    mn_cap: int
    dis_bound: int
    ah_generic_rank: int = None
    r2: Fraction = None
    r3: Fraction = None
    r4: Fraction = None
    r5: Fraction = None
    ident_bound: int = None
    mn_identifiable: bool = None
    rgen_d1d: RgenBounds = None
    rgen_full: RgenBounds = None
    rmax: RmaxBounds = None
    policy: str = "printed"
    reasons: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "r1": _fmt(self.r1),
            "ah_generic_rank": self.ah_generic_rank,
            "ah_policy": self.policy,
            "r2": _fmt(self.r2),
            "r3": _fmt(self.r3),
            "r4": _fmt(self.r4),
            "r5": _fmt(self.r5),
            "ident_bound": self.ident_bound,
            "mn_cap": self.mn_cap,
            "mn_identifiable": self.mn_identifiable,
            "dis_bound": self.dis_bound,
            "rgen_d1d": _fmt_rgen(self.rgen_d1d),
            "rgen_full": _fmt_rgen(self.rgen_full),
            "rmax": None,
            "reasons": dict(self.reasons),
        }
        if self.rmax is not None:
            out["rmax"] = {
                "ours": self.rmax.ours,
                "ours_simplified": _fmt(self.rmax.ours_simplified),
                "bbs": self.rmax.bbs,
                "naive": self.rmax.naive,
            }
        return out

    def __str__(self):
        buf = StringIO()
        _console = Console(file=buf, force_jupyter=False)
        _console.print(self)

        return buf.getvalue()

    def __rich_console__(self, *args):
        rep = pi.Report(
            title="[b]scrollrank.BoundsReport: ",
            color=salmon,
            accent=orange,
        )
        rep.add(
            f"[b {orange}]m, n, d:[/b {orange}][{amber}] {self.m}, {self.n}, {self.d}"
        )
        rep.line()
        for key, value in self.to_dict().items():
            if key in ("m", "n", "d", "reasons"):
                continue
            rep.add(f"[{orange}]{key}:[/{orange}][{amber}] {value}")
        for key, reason in self.reasons.items():
            rep.add(f"[{salmon}]{key} not available: {reason}")

        yield "\n"
        yield rep


def bounds_report(m, n, d, policy=None):
    """
    Collects every bound for (m, n, d) into a BoundsReport

    :param policy: AHExceptionPolicy used for the generic Waring rank
    """
    logger.debug(f"Bounds report: m={m}, n={n}, d={d}")
    if m < 2 or n < 1 or d < 1:
        raise ValueError(f"Need m >= 2, n >= 1, d >= 1, got {m}, {n}, {d}")
    policy = policy or AHExceptionPolicy.printed()

    values, reasons = {}, {}
    if d < 3:
        for key in (
            "ah_generic_rank",
            "r2",
            "r3",
            "r4",
            "r5",
            "ident_bound",
            "mn_identifiable",
        ):
            reasons[key] = "d < 3"
    else:
        values = dict(
            ah_generic_rank=ah_generic_rank(m, d, policy),
            r2=r2(m, d),
            r3=r3(m, d),
            r4=r4(m, n, d),
            r5=r5(m, n, d),
            ident_bound=identifiability_bound(range(1, d + 1), m, n),
            mn_identifiable=mn_identifiable(m, n, d),
        )

    if d >= 4 and m > 5:
        values["rgen_d1d"] = rgen_d1d_bounds(m, d)
    else:
        reasons["rgen_d1d"] = "needs d >= 4 and m > 5"
    if n != 1:
        reasons["rgen_full"] = "needs n = 1"
    elif d >= 4 and m > max(5, (d - 2) * (d - 1)):
        values["rgen_full"] = rgen_full_profile(m, d)
    else:
        reasons["rgen_full"] = "needs d >= 4 and m > max(5, (d-2)(d-1))"
    values["rmax"] = rmax_bounds(m, d)

    return BoundsReport(
        m=m,
        n=n,
        d=d,
        r1=r1(m, d),
        mn_cap=m * n,
        dis_bound=dis_bound(m, n),
        policy=policy.source,
        reasons=reasons,
        **values,
    )
