import random

import pytest

from permder.algebra import StructureAlgebra
from permder.envelope import concat
from permder.fixtures import random_invertible, random_novikov, sls1_fixture, sls2q_fixture
from permder.speciality import (
    NotSLSError, TensorSpan, check_ideal_stability, check_intersection, check_nice,
    check_novikov_quotient, check_poisson, compute_ideals, compute_K, decide_special, h_element,
    mu_based_V, same_span, tensor_grade, verify_mu, w_generator,
)


@pytest.fixture(scope="module")
def nov():
    return random_novikov(random.Random(21))


@pytest.fixture(scope="module")
def nov_ideals(nov):
    return compute_ideals(nov, 4)


def test_tensor_span_filtration():
    s = TensorSpan([{(0,): 1, (0, 1): 1}, {(1,): 1}])
    assert s.rank == 2
    assert s.filtration_dims(2) == [1, 2]
    assert tensor_grade({(0,): 1, (0, 1, 1): 2}) == 3
    assert s.contains({(0,): 1, (0, 1): 1, (1,): 5})


def test_fixture_dims_and_niceness():
    assert sls1_fixture().dim == 14 and sls2q_fixture().dim == 32
    rep = check_nice(sls1_fixture())
    assert rep.nice and rep.verdict == "nice"
    assert verify_mu(sls1_fixture(), rep)


def test_sls2q_witness():
    a = sls2q_fixture()
    rep = check_nice(a)
    assert not rep.nice
    rel, x, value = rep.witness
    names = {(a.basis[i], a.basis[j]): c for (i, j), c in rel.items()}
    assert names == {("x", "z"): 1} or list(names) == [("x", "z")]
    assert a.basis[x] == "y"
    assert {a.basis[k] for k in value} == {"xyz"}


def _elementary_change(rng, n, shears=4):
    S = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(shears):
        i, j = rng.sample(range(n), 2)
        S[i] = [x + rng.choice((-1, 1)) * y for x, y in zip(S[i], S[j])]
    rng.shuffle(S)
    return S


def test_niceness_invariant_under_dense_basis_change():
    a = sls1_fixture()
    b = a.change_basis(random_invertible(random.Random(8), a.dim))
    rep = check_nice(b)
    assert rep.nice and verify_mu(b, rep)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_niceness_invariant_under_elementary_basis_change(seed):
    rng = random.Random(seed)
    for a, expected in ((sls1_fixture(), True), (sls2q_fixture(), False)):
        assert check_nice(a.change_basis(_elementary_change(rng, a.dim))).nice is expected


def test_novikov_algebras_are_nice():
    rng = random.Random(9)
    for _ in range(5):
        a = random_novikov(rng)
        rep = check_nice(a)
        assert rep.nice and verify_mu(a, rep)


def test_non_sls_input_rejected():
    a = StructureAlgebra(["x", "y"], [[{1: 1}, {}], [{0: 1}, {}]])
    with pytest.raises(NotSLSError):
        check_nice(a)
    verdict = decide_special(a)
    assert not verdict.special and verdict.violation is not None


def test_K_of_zero_algebra_is_everything():
    z = StructureAlgebra.zero(2)
    assert [len(compute_K(z, k)) for k in (1, 2, 3)] == [2, 4, 8]


def test_K_contains_commutators_and_h(nov):
    K = TensorSpan(compute_K(nov, 3, mixed=True))
    n = nov.dim
    for x in range(n):
        for y in range(n):
            assert K.contains({(x, y): 1, (y, x): -1})
            for z in range(n):
                assert K.contains(h_element(nov, x, y, z))


def test_I_contains_left_multiples_of_commutators(nov, nov_ideals):
    for u in range(nov.dim):
        f = concat({(u,): 1}, {(0, 1): 1, (1, 0): -1})
        assert nov_ideals.I.contains(f)


def test_V_contains_w_generators(nov, nov_ideals):
    assert nov_ideals.V.contains(w_generator(nov, 0, 1, 2))
    rep = check_nice(nov)
    assert same_span(nov_ideals.V, mu_based_V(nov, rep, 4))


def test_novikov_intersection_and_sampled_checks(nov, nov_ideals):
    assert check_intersection(nov, nov_ideals).dim == 0
    rng = random.Random(3)
    assert check_novikov_quotient(nov, nov_ideals, samples=30, rng=rng) is None
    assert check_poisson(nov, nov_ideals, samples=30, rng=rng) is None
    assert check_ideal_stability(nov, nov_ideals) is None


def test_sls2q_V_meets_A():
    a = sls2q_fixture()
    cert = check_intersection(a, compute_ideals(a, 3), "V")
    assert cert.dim == 1
    assert [a.basis[k] for k in cert.witness] == ["xyz"]
    xs = {a.basis[i]: i for i in range(a.dim)}
    w = w_generator(a, xs["x"], xs["z"], xs["y"])
    assert {a.basis[k[0]] for k in w if len(k) == 1} == {"xyz"}


def test_ideals_reject_small_bound(nov):
    with pytest.raises(ValueError):
        compute_ideals(nov, 1)


def test_decide_special(nov):
    v = decide_special(nov, bound=3)
    assert v.special and v.intersection.dim == 0
    assert not decide_special(sls2q_fixture()).special
