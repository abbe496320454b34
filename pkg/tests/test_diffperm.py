from math import comb

import pytest

from permder import diffperm as dp
from permder.linalg import LinComb, RowSpace
from permder.terms import multilinear_monomials


def x(i, order=0):
    return dp.generator(f"x{i}", order)


def test_perm_product_is_left_commutative_and_associative():
    a, b, c = x(1), x(2), x(3)
    assert dp.perm_mul(dp.perm_mul(a, b), c) == dp.perm_mul(a, dp.perm_mul(b, c))
    assert dp.perm_mul(dp.perm_mul(a, b), c) == dp.perm_mul(dp.perm_mul(b, a), c)
    assert dp.perm_mul(a, b) != dp.perm_mul(b, a)


def test_derivation_leibniz():
    f = dp.perm_mul(x(1), x(2, 1))
    g = dp.perm_mul(x(3, 2), x(1))
    lhs = dp.derive(dp.perm_mul(f, g))
    rhs = dp.perm_mul(dp.derive(f), g) + dp.perm_mul(f, dp.derive(g))
    assert lhs == rhs


def test_derived_product_definition():
    assert dp.derived_product(x(1), x(2)) == LinComb.basis(dp.PermMonomial((("x1", 0),), ("x2", 1)))


def test_weight_of_derived_products_is_minus_one():
    from permder.terms import parse_identity
    t = next(iter(parse_identity("(x1*x2)*x3 - x1*(x2*x3) = 0").body.keys()))
    for m in dp.tau(t).keys():
        assert dp.weight(m) == -1


@pytest.mark.parametrize("text", ["x", "x'", "y''", "z^(3)"])
def test_letter_roundtrip(text):
    assert dp.format_letter(dp.parse_letter(text)) == text


def test_monomial_roundtrip():
    m = dp.PermMonomial.make([("y", 1), ("x", 0)], ("z", 2))
    assert dp.parse_perm_monomial(str(m)) == m


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 9), (4, 40)])
def test_sls_basis_counts(n, count):
    assert len(dp.enumerate_sls_basis(n)) == count


def test_sls_basis_is_image_of_tau():
    # the derived-product images of all multilinear monomials span exactly the enumerated basis
    for n in range(1, 5):
        basis = set(dp.enumerate_sls_basis(n))
        space = RowSpace()
        idx = {m: i for i, m in enumerate(sorted(basis))}
        for t in multilinear_monomials(n):
            img = dp.tau(t)
            assert set(img.keys()) <= basis
            space.add({idx[m]: c for m, c in img.items()})
        assert space.rank == len(basis)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_commutative_weight_basis_matches_novikov_count(n):
    assert len(dp.enumerate_weight_comm_monomials(n)) == comb(2 * n - 2, n - 1)


def test_non_multilinear_basis_contains_multilinear():
    assert set(dp.enumerate_sls_basis(3)) <= set(dp.enumerate_sls_basis(3, multilinear=False))


def test_abelianize():
    f = dp.perm_mul(x(1), x(2)) - dp.perm_mul(x(2), x(1))
    assert dp.abelianize(f).is_zero()
