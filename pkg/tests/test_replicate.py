from pathlib import Path

import pytest

from permder.identities import eval_in_free_perm
from permder.presentations import builtin
from permder.replicate import canonical_key, collapse, dedupe, replicate, replicate_variety
from permder.terms import parse_identities, parse_identity

GOLDEN = Path(__file__).parent / "golden" / "dinov.ids"


def test_replicate_dash_rule():
    lsym = builtin("lsym").identities[0]
    assert str(replicate(lsym, 3)).startswith("(x1|-x2)|-x3")
    assert str(replicate(lsym, 1)).startswith("(x1-|x2)-|x3")
    with pytest.raises(ValueError):
        replicate(lsym, 4)


def test_collapse_inverts_replication():
    for f in builtin("nov").identities:
        for i in range(1, 4):
            assert collapse(replicate(f, i)).body == f.body


def test_dinov_matches_golden():
    golden = parse_identities(GOLDEN.read_text())
    ours = builtin("dinov").identities
    assert len(ours) == 6
    assert sorted(map(canonical_key, ours)) == sorted(map(canonical_key, golden))


def test_dedupe_up_to_renaming_and_scale():
    f = parse_identity("(x1|-x2)-|x3 - (x1|-x3)|-x2 = 0")
    g = parse_identity("2 (x1|-x3)-|x2 - 2 (x1|-x2)|-x3 = 0")
    assert len(dedupe([f, g])) == 1


@pytest.mark.parametrize("name", ["dilsym", "dinov"])
def test_replicated_varieties_vanish_in_derived_model(name):
    for f in builtin(name).identities:
        assert eval_in_free_perm(f, "derived").is_zero(), str(f)


def test_dicom_vanishes_in_perm_model():
    for f in builtin("dicom").identities:
        assert eval_in_free_perm(f, "perm").is_zero(), str(f)


def test_dicom_fails_in_derived_model():
    assert not all(eval_in_free_perm(f, "derived").is_zero() for f in builtin("dicom").identities)


def test_dilsym_holds_in_perm_model():
    assert all(eval_in_free_perm(f, "perm").is_zero() for f in builtin("dilsym").identities)


def test_rejects_dialgebra_input():
    with pytest.raises(ValueError):
        replicate_variety(builtin("dinov"))
