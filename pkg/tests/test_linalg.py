from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permder.linalg import (
    BasisMismatch, LinComb, Matrix, RowSpace, Solver, UnionFind, format_scalar, in_span,
    intersect_dim, intersection_basis, kernel, parse_scalar, rank,
)


@pytest.mark.parametrize("text, value", [("3", 3), ("-1/2", Fraction(-1, 2)), (" 4/6 ", Fraction(2, 3))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1/-2", "1/0", "a", "1.5", ""])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_format_scalar_roundtrip():
    for x in (Fraction(0), Fraction(-7, 3), Fraction(5)):
        assert parse_scalar(format_scalar(x)) == x


def test_lincomb_drops_zeros_and_adds():
    a = LinComb({"x": 1, "y": 2})
    b = LinComb({"y": -2, "z": 1})
    assert (a + b) == LinComb({"x": 1, "z": 1})
    assert (a - a).is_zero()
    assert (a * 3).coeff("y") == 6
    assert hash(LinComb({"x": 1})) == hash(LinComb({"x": Fraction(1)}))


def test_rank_and_intersection():
    u = Matrix([{0: 1}, {1: 1}], basis=3)
    v = Matrix([{1: 1, 2: 1}, {1: 1}], basis=3)
    assert rank(u) == 2
    assert intersect_dim(u, v) == 1
    assert in_span({0: 2, 1: -1}, u)
    with pytest.raises(BasisMismatch):
        intersect_dim(u, Matrix([{0: 1}], basis=4))


def test_kernel_of_projection():
    images = {"a": {0: 1}, "b": {0: 2}, "c": {1: 1}}
    ker = kernel(images)
    assert len(ker) == 1
    combo = ker[0]
    assert combo["b"] / combo["a"] == Fraction(-1, 2)


def test_intersection_basis_finds_common_vector():
    space = RowSpace([{0: 1, 1: 1}, {2: 1}])
    inter = intersection_basis([{0: 1}, {1: 1}], space)
    assert len(inter) == 1
    assert space.contains(inter[0])


def test_solver_expresses_targets():
    s = Solver()
    assert s.add("p", {0: 1, 1: 1}) is None
    assert s.add("q", {1: 1}) is None
    assert s.express({0: 3, 1: 1}) == {"p": 3, "q": -2}
    assert s.express({2: 1}) is None
    dep = s.add("r", {0: 1})
    assert dep == {"p": -1, "q": 1, "r": 1}


def test_union_find():
    uf = UnionFind()
    assert uf.union(3, 1)
    assert not uf.union(1, 3)
    assert uf.find(3) == uf.find(1) == 1


vectors = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-3, 3).filter(bool), max_size=4), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(vectors)
def test_rank_nullity(rows):
    images = dict(enumerate(rows))
    assert rank(rows) + len(kernel(images)) == len(rows)
    for combo in kernel(images):
        total: dict = {}
        for i, c in combo.items():
            for k, v in rows[i].items():
                total[k] = total.get(k, 0) + c * v
        assert not any(total.values())
