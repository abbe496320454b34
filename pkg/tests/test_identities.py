from math import comb

import pytest

from permder import diffperm
from permder.identities import (
    AlphabetMismatch, ResourceBoundExceeded, eval_in_free_perm, identity_witness, is_consequence,
    multilinear_dim, satisfies,
)
from permder.fixtures import perm_extension, truncated_poly, upper_triangular
from permder.presentations import builtin, load_presentation
from permder.terms import parse_identity


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lsym_free_dims(n):
    assert multilinear_dim(builtin("lsym"), n) == n ** (n - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_nov_free_dims(n):
    assert multilinear_dim(builtin("nov"), n) == comb(2 * n - 2, n - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sls_dims_match_enumeration(n):
    assert multilinear_dim(builtin("sls"), n) == len(diffperm.enumerate_sls_basis(n))


@pytest.mark.parametrize("name, n, dim", [("com", 3, 1), ("as", 3, 6), ("perm", 3, 3)])
def test_classical_dims(name, n, dim):
    assert multilinear_dim(builtin(name), n) == dim


def test_resource_bound():
    with pytest.raises(ResourceBoundExceeded):
        multilinear_dim(builtin("as"), 6, max_monomials=1000)


def test_consequence_membership():
    rcom = parse_identity("(x1*x2)*x3 - (x1*x3)*x2 = 0")
    assert is_consequence(rcom, builtin("nov"))
    assert not is_consequence(rcom, builtin("lsym"))
    with pytest.raises(AlphabetMismatch):
        is_consequence(parse_identity("x1|-x2 - x2|-x1 = 0"), builtin("nov"))


def test_derived_products_satisfy_sls_not_assoc():
    for f in builtin("sls").identities:
        assert eval_in_free_perm(f).is_zero()
    assert not eval_in_free_perm(builtin("as").identities[0]).is_zero()


def test_structure_algebra_witness():
    assert satisfies(perm_extension(2), builtin("perm")) is None
    bad = satisfies(perm_extension(2), builtin("com"))
    assert bad is not None and bad[0].name == "commutativity"
    assert identity_witness(builtin("as").identities[0], upper_triangular()) is None
    assert satisfies(truncated_poly(3), builtin("com")) is None
    with pytest.raises(AlphabetMismatch):
        identity_witness(builtin("dinov").identities[0], truncated_poly(2))


def test_load_presentation_file(tmp_path):
    p = tmp_path / "c.ids"
    p.write_text("x1*x2 - x2*x1 = 0\n")
    assert multilinear_dim(load_presentation(str(p)), 3) == 3
    with pytest.raises(KeyError):
        builtin("nonesuch")
