from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrollrank.polyspace import (
    MultiIndex,
    SymPoly,
    multi_index_set,
    multinomial,
    poly_eval,
    power_coords,
    space_dim,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def vectors(m):
    return st.lists(rationals, min_size=m, max_size=m)


def test_multi_index():
    alpha = MultiIndex((2, 1, 0))
    assert alpha.degree == 3
    assert alpha.m == 3
    assert alpha == (2, 1, 0)

    with pytest.raises(ValueError):
        MultiIndex((1, -1))
    with pytest.raises(ValueError):
        MultiIndex(())
    with pytest.raises(TypeError):
        MultiIndex((1.0, 2))


@pytest.mark.parametrize(
    "s, m, expected",
    [
        (2, 2, [(2, 0), (1, 1), (0, 2)]),
        (0, 3, [(0, 0, 0)]),
        (1, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    ],
)
def test_multi_index_set(s, m, expected):
    assert [tuple(a) for a in multi_index_set(s, m)] == expected


@pytest.mark.parametrize("s", range(9))
@pytest.mark.parametrize("m", range(1, 7))
def test_multi_index_set_size_and_order(s, m):
    indices = multi_index_set(s, m)
    assert len(indices) == comb(m + s - 1, s)
    assert all(a.degree == s and a.m == m for a in indices)
    # strictly decreasing, hence a strict total order without repeats
    assert all(a > b for a, b in zip(indices, indices[1:]))


@pytest.mark.parametrize(
    "alpha, expected", [((1, 1), 2), ((3, 0), 1), ((2, 1, 1), 12)]
)
def test_multinomial(alpha, expected):
    assert multinomial(alpha) == expected


@pytest.mark.parametrize(
    "profile, m, n, expected",
    [((1, 2, 3), 2, 1, 9), ((3, 4), 10, 1, 935), ((1, 2, 3), 2, 2, 18)],
)
def test_space_dim(profile, m, n, expected):
    assert space_dim(profile, m, n) == expected


def test_space_dim_errors():
    with pytest.raises(ValueError):
        space_dim((), 2)
    with pytest.raises(ValueError):
        space_dim((1, 2), 0)


@pytest.mark.parametrize(
    "v, a, expected",
    [
        ((1, 1), 2, {(2, 0): 1, (1, 1): 1, (0, 2): 1}),
        ((2, 0), 2, {(2, 0): 4}),
        ((1, -1), 3, {(3, 0): 1, (2, 1): -1, (1, 2): 1, (0, 3): -1}),
    ],
)
def test_power_coords(v, a, expected):
    p = power_coords(v, a)
    assert p.degree == a
    assert p.coords == {MultiIndex(k): Fraction(x) for k, x in expected.items()}
    assert p[(0, 2)] == expected.get((0, 2), 0)


def test_poly_eval():
    assert poly_eval(power_coords((1, 1), 2), (1, 2)) == 9
    assert poly_eval(SymPoly.zero(2, 3), (5, 7)) == 0

    # 6 x y^2 has coordinate f_(1,2) = 2
    p = SymPoly(2, 3, {(1, 2): 2})
    assert poly_eval(p, (1, 2)) == 24

    with pytest.raises(ValueError):
        poly_eval(p, (1, 2, 3))


@given(vectors(3), vectors(3), st.integers(0, 4))
def test_power_eval_is_power_of_inner_product(v, u, a):
    inner = sum(x * y for x, y in zip(v, u))
    assert poly_eval(power_coords(v, a), u) == inner**a


@given(vectors(2), vectors(2), vectors(2), st.integers(1, 3))
def test_poly_eval_linear(v, w, u, a):
    p, q = power_coords(v, a), power_coords(w, a).scale(3)
    assert poly_eval(p + q, u) == poly_eval(p, u) + poly_eval(q, u)
    assert poly_eval(p - q, u) == poly_eval(p, u) - poly_eval(q, u)


def test_sympoly_validation():
    with pytest.raises(ValueError):
        SymPoly(2, 2, {(1, 0): 1})  # wrong degree
    with pytest.raises(ValueError):
        SymPoly(2, 1, {(1, 0, 0): 1})  # wrong arity
    with pytest.raises(TypeError):
        SymPoly(2, 1, {(1, 0): 0.5})  # floats are not exact

    p = SymPoly(2, 1, {(1, 0): 0, (0, 1): "3/2"})
    assert p.coords == {(0, 1): Fraction(3, 2)}
    assert p.size == 2
    assert not p.is_zero()
    assert (p - p).is_zero()

    with pytest.raises(ValueError):
        p + SymPoly.zero(2, 2)


def test_sympoly_dense():
    p = power_coords((1, 2), 2)
    assert p.dense() == [1, 2, 4]
    assert SymPoly.from_dense(p.dense(), 2, 2) == p
    with pytest.raises(ValueError):
        SymPoly.from_dense([1, 2], 2, 2)


@given(vectors(3), st.integers(0, 3))
def test_sympoly_json(v, a):
    p = power_coords(v, a).scale(Fraction(-2, 7))
    data = p.to_dict()
    assert all("/" in c["value"] for c in data["coords"])
    assert SymPoly.from_dict(data) == p


def test_sympoly_from_dict_errors():
    with pytest.raises(ValueError):
        SymPoly.from_dict({"degree": 2, "coords": []})
