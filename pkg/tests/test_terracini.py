from math import ceil

import numpy as np
import pytest

from scrollrank.bounds import (
    AHExceptionPolicy,
    ah_generic_rank,
    defect_formula,
    r5,
    rgen_d1d_bounds,
    rgen_full_profile,
    secant_dim_formula,
)
from scrollrank.terracini import (
    RankBackend,
    SecantProbe,
    audit_ah,
    generic_rank_probe,
    max_nondefective_rank,
    rank_of,
    secant_dim_probe,
    secant_dims,
    secant_probes,
)


def test_rank_backend():
    assert RankBackend.from_name().kind == "prime-field"
    assert RankBackend.from_name("prime-field").prime == 2**61 - 1
    assert RankBackend.from_name("float-svd").tolerance == 1e-9
    assert RankBackend.from_name("exact-rational", prime=7).prime is None

    with pytest.raises(ValueError):
        RankBackend("prime-field")
    with pytest.raises(ValueError):
        RankBackend("exact-rational", prime=7)
    with pytest.raises(ValueError):
        RankBackend("float-svd")
    with pytest.raises(ValueError):
        RankBackend("cholesky")


@pytest.mark.parametrize(
    "backend",
    [
        RankBackend("exact-rational"),
        RankBackend("prime-field", prime=2**61 - 1),
        RankBackend("prime-field", prime=65521),
        RankBackend("prime-field", prime=2**89 - 1),
        RankBackend("float-svd", tolerance=1e-9),
    ],
)
def test_rank_of(backend):
    assert rank_of(np.eye(5, dtype=int), backend) == 5
    assert rank_of([[1, 2], [2, 4]], backend) == 1
    assert rank_of(np.zeros((0, 3)), backend) == 0
    assert rank_of(np.zeros((3, 4), dtype=int), backend) == 0


def test_rank_backends_agree():
    rng = np.random.default_rng(0)
    for k in range(1, 21):
        A = rng.integers(-5, 6, size=(20, k)) @ rng.integers(-5, 6, size=(k, 30))
        M = A.astype(object)
        exact = rank_of(M, "exact-rational")
        assert exact <= k
        assert rank_of(M, "prime-field") == exact


@pytest.mark.parametrize(
    "profile, m, r, measured, defect",
    [((3,), 3, 2, 6, 0), ((4,), 3, 5, 14, 1), ((1, 2, 3), 2, 1, 4, 0)],
)
def test_secant_dim_probe(profile, m, r, measured, defect):
    probe = secant_dim_probe(profile, m, 1, r)
    assert isinstance(probe, SecantProbe)
    assert probe.measured_dim == measured
    assert probe.defect == defect
    assert probe.measured_dim <= probe.expected_dim
    assert probe.expected_dim == probe.measured_dim + probe.defect
    assert not probe.warnings


def test_secant_dims_of_ternary_cubics():
    assert secant_dims((3,), 3, 1, 4) == [3, 6, 9, 10]


def test_secant_dims_backends_agree():
    args = ((1, 2, 3), 2, 2, 4)
    prime = secant_dims(*args, backend="prime-field", audit=True, bound=5)
    assert prime == secant_dims(*args, backend="exact-rational", bound=5)
    assert prime == secant_dims(*args, backend="float-svd", bound=5)


def test_secant_dims_errors():
    with pytest.raises(ValueError):
        secant_dims((3,), 3, 1, 0)
    with pytest.raises(ValueError):
        secant_dims((3,), 3, 1, 2, trials=0)
    with pytest.raises(ValueError):
        secant_dims((1, 3), 3, 1, 2, homogenized=True)


@pytest.mark.parametrize(
    "profile, m, n", [((1, 2, 3), 3, 2), ((2, 3), 2, 1), ((4,), 3, 1)]
)
def test_secant_dims_monotone(profile, m, n):
    dims = secant_dims(profile, m, n, 8)
    step = m + n + len(profile) - 2
    assert dims[0] == step
    for a, b in zip(dims, dims[1:]):
        assert a <= b <= a + step


def test_probe_defect_formula_example():
    probe = secant_dim_probe((1, 3), 5, 1, 6)
    formula = defect_formula((1, 3), 5, 1, 6)
    assert formula.valid and formula.defect == 1
    assert probe.measured_dim == 35
    assert probe.defect == 1
    assert secant_dim_formula((1, 3), 5, 1, 6).dim == 35


@pytest.mark.parametrize("seed", range(5))
def test_probe_stable_across_seeds(seed):
    assert secant_dim_probe((4,), 3, 1, 5, seed=seed).measured_dim == 14
    assert secant_dim_probe((1, 3), 5, 1, 6, seed=seed).measured_dim == 35


def test_probe_warns_when_closed_form_fails():
    # constants only: the variety is a line, not of dimension m+n+d-2
    probe = secant_dim_probe((0,), 2, 1, 1)
    assert probe.measured_dim == 1
    assert probe.expected_dim == 1
    assert probe.defect == 0
    assert probe.warnings


def test_secant_probe_output():
    probe = secant_probes((3,), 2, 1, 3)[-1]
    data = probe.to_dict()
    assert data["measured_dim"] == 4
    assert data["expected_dim"] == 4
    assert data["backend"] == "prime-field"
    assert "SecantProbe" in str(probe)


def test_max_nondefective_rank():
    assert max_nondefective_rank((1, 2, 3), 2, 1) in (1, 2)
    assert max_nondefective_rank((1, 2, 3), 3, 2) <= 6
    assert max_nondefective_rank((4,), 3, 1, cap=8) == 4
    assert max_nondefective_rank((0,), 2, 1) >= 1

    with pytest.raises(ValueError):
        max_nondefective_rank((3,), 2, 1, cap=0)


@pytest.mark.parametrize("d", [3, 4])
@pytest.mark.parametrize("m", [2, 3])
def test_homogenization(d, m):
    profile = tuple(range(d + 1))
    homogenized = secant_dims(profile, m, 1, 6, homogenized=True)
    assert homogenized == secant_dims((d,), m + 1, 1, 6)


def test_homogenized_generic_rank():
    assert generic_rank_probe((3,), 2) == 2
    assert generic_rank_probe((0, 1, 2, 3), 2, homogenized=True) == 4
    assert generic_rank_probe((3,), 3) == 4


def _valid_orders(profile, m, n):
    bound = (ceil(r5(m, n, profile[-1])) - 1) * n
    return [
        r for r in range(1, bound + 1) if defect_formula(profile, m, n, r).valid
    ]


@pytest.mark.parametrize("m, n", [(3, 1), (2, 2), (3, 2)])
def test_probe_matches_defect_formula(m, n):
    profile = (1, 2, 3)
    orders = _valid_orders(profile, m, n)
    if not orders:
        pytest.skip("no secant order satisfies the hypotheses")
    probes = secant_probes(profile, m, n, max(orders))
    for r in orders:
        formula = secant_dim_formula(profile, m, n, r)
        assert probes[r - 1].measured_dim == formula.dim


@pytest.mark.slow
@pytest.mark.parametrize("d", [3, 4])
@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("n", range(1, 5))
def test_probe_matches_defect_formula_grid(d, m, n):
    profile = tuple(range(1, d + 1))
    orders = _valid_orders(profile, m, n)
    if not orders:
        pytest.skip("no secant order satisfies the hypotheses")
    probes = secant_probes(profile, m, n, max(orders))
    for r in orders:
        expected = r * (m + n + d - 2) - defect_formula(profile, m, n, r).defect
        assert probes[r - 1].measured_dim == expected


@pytest.mark.slow
def test_generic_rank_of_quartic_cubic_scroll():
    # dim S^3 V + dim S^4 V = 220 + 715 for m = 10
    dims = secant_dims((3, 4), 10, 1, 85)
    assert dims[83] == 84 * 11 == 924
    assert dims[84] == 935
    assert dims.index(935) + 1 == rgen_d1d_bounds(10, 4).exact == 85


@pytest.mark.slow
def test_full_profile_generic_rank_matches_top_degrees():
    m, d = 7, 4
    full = generic_rank_probe(tuple(range(1, d + 1)), m)
    top = generic_rank_probe((d - 1, d), m)
    assert full == top
    bounds = rgen_full_profile(m, d)
    assert bounds.lower <= full <= bounds.upper


def test_audit_ah():
    audit = audit_ah((2, 3), (3, 4))
    assert (3, 4) in audit.defective_pairs
    assert (2, 3) not in audit.defective_pairs
    assert (3, 4) in audit.unlisted
    assert (3, 3) in audit.spurious

    data = audit.to_dict()
    assert [3, 4] in data["probe_exceptions"]
    assert len(data["cells"]) == 4
    assert "AHAudit" in str(audit)

    policy = AHExceptionPolicy.probe_audited(audit)
    assert policy.source == "probe-audited"
    assert ah_generic_rank(3, 4, policy) == 6
    assert ah_generic_rank(3, 3, policy) == 4

    with pytest.raises(ValueError):
        audit_ah((1,), (3,))


@pytest.mark.slow
def test_audit_ah_grid():
    audits = [audit_ah(range(2, 6), range(3, 6), seed=seed) for seed in (0, 1)]
    assert audits[0].defective_pairs == audits[1].defective_pairs
    assert audits[0].defective_pairs == {(3, 4), (4, 4), (5, 4), (5, 3)}
