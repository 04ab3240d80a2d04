from fractions import Fraction

import numpy as np
import pytest

from scrollrank.catalecticant import (
    ProfilePoint,
    catalecticant,
    minors_2x2,
    scroll_membership,
    stacked_catalecticant,
    stacked_catalecticant_matrix,
)
from scrollrank.polyspace import SymPoly, power_coords
from scrollrank.scroll import psi, sample_params


def _perturbed(point):
    """
    Adds 1 to the first coordinate of the top degree block
    """
    top = point.block(0, point.d - 1)
    alpha = (top.degree,) + (0,) * (point.m - 1)
    bumped = top + SymPoly(point.m, top.degree, {alpha: 1})
    blocks = [list(point.blocks[0][:-1]) + [bumped]]
    return ProfilePoint(point.profile, point.m, 1, blocks)


def test_catalecticant_examples():
    C = catalecticant(power_coords((1, 1), 2))
    assert C.entries.tolist() == [[1, 1], [1, 1]]
    assert [tuple(b) for b in C.columns] == [(1, 0), (0, 1)]
    assert C.rows == (1, 2)

    C = catalecticant(power_coords((1, 0), 3))
    assert C.entries.tolist() == [[1, 0, 0], [0, 0, 0]]
    assert C.shape == (2, 3)

    rank_two = power_coords((1, 2), 3) + power_coords((3, -1), 3)
    assert catalecticant(rank_two).rank() == 2

    with pytest.raises(ValueError):
        catalecticant(SymPoly(2, 0, {(0, 0): 1}))


def test_catalecticant_csv():
    text = catalecticant(power_coords((1, 1), 2)).to_csv()
    assert text.splitlines() == ["i,(1 0),(0 1)", "1,1,1", "2,1,1"]


@pytest.mark.parametrize("v", [(1, 2, 3), (0, 5, -1), (7, 0, 0)])
@pytest.mark.parametrize("scale", [1, -3, Fraction(2, 5)])
def test_catalecticant_of_power(v, scale):
    C = catalecticant(power_coords(v, 3).scale(scale))
    assert C.rank() == 1
    # every column is a multiple of v
    assert all(x == 0 for x in minors_2x2(np.vstack([C.entries.T, [v]]).T))


def test_profile_point():
    p = psi((1, 1), (1, 1), (1, 2))
    assert p.d == 2
    assert p.ambient_dim == 5
    assert p.vector() == [1, 1, 1, 1, 1]
    assert (p + p).vector() == p.scale(2).vector()
    assert p.degree_vector(1) == [1, 1, 1]
    assert ProfilePoint.zero((1, 2), 2).is_zero()
    assert ProfilePoint.from_dict(p.to_dict()) == p

    with pytest.raises(ValueError):
        ProfilePoint((1, 2), 2, 1, [[SymPoly.zero(2, 1)]])
    with pytest.raises(ValueError):
        ProfilePoint((1, 2), 2, 1, [[SymPoly.zero(2, 1), SymPoly.zero(3, 2)]])
    with pytest.raises(TypeError):
        ProfilePoint((1,), 2, 1, [[[1, 0]]])
    with pytest.raises(ValueError):
        ProfilePoint.from_dict({"m": 2, "blocks": []})


def test_stacked_catalecticant():
    f = ProfilePoint(
        (1, 2), 2, 1, [[power_coords((1, 0), 1), power_coords((0, 1), 2)]]
    )
    S = stacked_catalecticant(f)
    assert S.shape == (2, 3)
    assert S.tolist() == [[1, 0, 0], [0, 0, 1]]

    M = stacked_catalecticant_matrix(f)
    assert M.columns == ((0, 0), (1, 0), (0, 1))
    assert M.to_csv().splitlines() == ["i,(0 0),(1 0),(0 1)", "1,1,0,0", "2,0,0,1"]
    assert not scroll_membership(f)

    assert not np.any(stacked_catalecticant(ProfilePoint.zero((1, 2, 3), 2)))
    assert scroll_membership(ProfilePoint.zero((1, 2, 3), 2))


def test_stacked_catalecticant_errors():
    with pytest.raises(ValueError):
        stacked_catalecticant(ProfilePoint.zero((0, 1, 2), 2))
    with pytest.raises(ValueError):
        scroll_membership(ProfilePoint.zero((1, 2), 2, n=2))
    with pytest.raises(TypeError):
        scroll_membership(power_coords((1, 1), 2))


@pytest.mark.parametrize("profile, m", [((1, 2, 3), 2), ((2, 3), 3), ((1, 1, 4), 3)])
def test_membership_of_scroll_points(profile, m):
    rng = np.random.default_rng(0)
    for _ in range(40):
        params = sample_params(profile, m, 1, rng)
        if not any(params.v[1:]):
            continue  # v parallel to e_1, the perturbation stays on the scroll
        f = psi(params.v, params.c, profile)
        assert scroll_membership(f)
        assert all(x == 0 for x in minors_2x2(stacked_catalecticant(f)))

        g = _perturbed(f)
        member = scroll_membership(g)
        assert member == all(x == 0 for x in minors_2x2(stacked_catalecticant(g)))
        assert not member


@pytest.mark.slow
@pytest.mark.parametrize("profile, m", [((1, 2, 3), 2), ((2, 3), 3), ((1, 1, 4), 3)])
def test_membership_of_many_scroll_points(profile, m):
    rng = np.random.default_rng(2)
    accepted = rejected = 0
    while accepted < 200 or rejected < 200:
        params = sample_params(profile, m, 1, rng)
        if not any(params.v[1:]):
            continue
        f = psi(params.v, params.c, profile)
        assert scroll_membership(f)
        accepted += 1

        assert not scroll_membership(_perturbed(f))
        rejected += 1
    assert accepted == rejected == 200


def test_membership_agrees_with_minors_on_random_points():
    rng = np.random.default_rng(1)
    for _ in range(50):
        blocks = [
            SymPoly.from_dense(rng.integers(-2, 3, size=size).tolist(), 2, a)
            for a, size in ((1, 2), (2, 3))
        ]
        f = ProfilePoint((1, 2), 2, 1, [blocks])
        S = stacked_catalecticant(f)
        assert scroll_membership(f) == all(x == 0 for x in minors_2x2(S))


def test_minors_2x2():
    assert minors_2x2([[1, 1], [1, 1]]) == [0]
    assert minors_2x2([[1, 0], [0, 1]]) == [1]
    assert minors_2x2([[1, 2, 3], [4, 5, 6]]) == [-3, -6, -3]
    assert len(minors_2x2(np.ones((3, 4), dtype=int))) == 3 * 6

    with pytest.raises(ValueError):
        minors_2x2([[1, 2, 3]])
