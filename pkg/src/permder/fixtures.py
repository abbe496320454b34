"""Reproducible example algebras.

Left symmetry and the Novikov identities are quadratic in the structure
constants, so random instances are drawn from constructive families instead:

* a Perm algebra ``P`` (associative, ``xyz = yxz``) with a derivation ``d``
  gives a left-symmetric algebra ``a∘b = a d(b)`` and a Novikov dialgebra
  ``a⊢b = a d(b)``, ``a⊣b = d(b) a``;
* a commutative ``P`` gives a Novikov algebra the same way;
* associative algebras are left-symmetric.

Derivations of a fixed algebra are a linear space; a random one is a random
integer combination of a basis of it.  Every draw is followed by a random
invertible change of basis with entries in -2..2.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct
from math import lcm

from .algebra import StructureAlgebra, apply_matrix, derivations
from .linalg import add_into

COEFFS = (-2, -1, 0, 1, 2)


# -- explicit small algebras --------------------------------------------------

def _mono_algebra(basis, rule, name=""):
    """Algebra where ``e_i e_j`` is ``rule(i, j)``: an index, ``(index, coeff)`` or None."""
    def fn(i, j):
        r = rule(i, j)
        if r is None:
            return {}
        if isinstance(r, tuple):
            return {r[0]: Fraction(r[1])}
        return {r: Fraction(1)}
    return StructureAlgebra.from_function(basis, fn, name=name)


def truncated_poly(n: int, unital: bool = True) -> StructureAlgebra:
    """``k[t]/(t^n)`` (basis 1..t^(n-1)) or its augmentation ideal (basis t..t^n, t^(n+1)=0)."""
    if unital:
        return _mono_algebra([f"t{k}" for k in range(n)],
                             lambda i, j: i + j if i + j < n else None, f"k[t]/(t^{n})")
    # basis index i stands for t^(i+1)
    return _mono_algebra([f"t{k + 1}" for k in range(n)],
                         lambda i, j: i + j + 1 if i + j + 1 < n else None, f"tk[t]/(t^{n + 1})")


def perm_extension(cdim: int = 2) -> StructureAlgebra:
    """Perm algebra ``C ⊕ M``, ``C = k[t]/(t^cdim)``, ``M = k`` with ``t`` acting by 0.

    ``(c, m)(c', m') = (cc', c m')``.
    """

    def rule(i, j):
        if i < cdim and j < cdim:
            return i + j if i + j < cdim else None
        if i == 0 and j == cdim:
            return cdim
        return None

    return _mono_algebra([f"t{k}" for k in range(cdim)] + ["m"], rule, "C+M")


def perm_functional(dim: int = 3) -> StructureAlgebra:
    """Perm algebra ``x·y = φ(x) y`` with ``φ`` the first coordinate."""
    return _mono_algebra([f"e{k + 1}" for k in range(dim)], lambda i, j: j if i == 0 else None, "phi-perm")


def upper_triangular() -> StructureAlgebra:
    """Upper triangular 2x2 matrices, basis E11, E12, E22."""
    table = {(0, 0): 0, (0, 1): 1, (1, 2): 1, (2, 2): 2}
    return _mono_algebra(["E11", "E12", "E22"], lambda i, j: table.get((i, j)), "ut2")


# -- random draws -----------------------------------------------------------------

def _det(S) -> Fraction:
    M = [[Fraction(x) for x in row] for row in S]
    n, det = len(M), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def random_invertible(rng: random.Random, n: int, unimodular: bool = True):
    """Random invertible integer matrix; unimodular ones keep integral constants integral.

    Up to size 4, entries lie in -2..2 (rejection sampling).  Larger sizes, where
    rejection almost never succeeds, use a permuted product of unit triangular
    factors with entries in -1..1, which is unimodular by construction.
    """
    if n > 4:
        lower = [[rng.choice((-1, 0, 1)) if j < i else int(i == j) for j in range(n)] for i in range(n)]
        upper = [[rng.choice((-1, 0, 1)) if j > i else rng.choice((-1, 1)) * (i == j) for j in range(n)]
                 for i in range(n)]
        prod = [[sum(lower[i][k] * upper[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        order = list(range(n))
        rng.shuffle(order)
        return [prod[i] for i in order]
    while True:
        S = [[rng.choice(COEFFS) for _ in range(n)] for _ in range(n)]
        d = _det(S)
        if d and (not unimodular or abs(d) == 1):
            return S


def random_derivation(rng: random.Random, P: StructureAlgebra, nonzero: bool = True):
    basis = derivations(P)
    n = P.dim
    if not basis:
        return [[Fraction(0)] * n for _ in range(n)]
    while True:
        coeffs = [rng.choice(COEFFS) for _ in basis]
        D = [[sum(c * B[i][k] for c, B in zip(coeffs, basis)) for k in range(n)] for i in range(n)]
        if not nonzero or any(any(row) for row in D):
            # a scalar multiple of a derivation is one; clear denominators
            den = lcm(*(Fraction(x).denominator for row in D for x in row))
            return [[Fraction(x) * den for x in row] for row in D]


def derived_algebra(P: StructureAlgebra, D, name: str = "") -> StructureAlgebra:
    """``a∘b = a d(b)``."""
    return P.with_product(lambda u, v: P.mul(u, apply_matrix(D, v)), name=name or f"{P.name}^(d)")


def derived_dialgebra(P: StructureAlgebra, D, name: str = "") -> StructureAlgebra:
    """``a⊢b = a d(b)``, ``a⊣b = d(b) a``."""
    return P.with_product(lambda u, v: P.mul(u, apply_matrix(D, v)),
                          lambda u, v: P.mul(apply_matrix(D, v), u),
                          name=name or f"di({P.name})")


def _commutative_3dim(rng):
    return rng.choice([truncated_poly(3, True), truncated_poly(3, False)])


def _perm_3dim(rng):
    return rng.choice([perm_extension(2), perm_functional(3), truncated_poly(3, True),
                       truncated_poly(3, False)])


def random_novikov(rng: random.Random, dim: int = 3) -> StructureAlgebra:
    if dim != 3:
        C = rng.choice([truncated_poly(dim, True), truncated_poly(dim, False)])
    else:
        C = _commutative_3dim(rng)
    D = random_derivation(rng, C)
    N = derived_algebra(C, D, "novikov")
    return N.change_basis(random_invertible(rng, dim))


def random_left_symmetric(rng: random.Random) -> StructureAlgebra:
    """3-dimensional; mixes special, Novikov and associative draws."""
    kind = rng.randrange(3)
    if kind == 0:
        P = _perm_3dim(rng)
        A = derived_algebra(P, random_derivation(rng, P), "special-lsym")
    elif kind == 1:
        A = random_novikov(rng)
    else:
        A = rng.choice([upper_triangular(), truncated_poly(3, False), truncated_poly(3, True)])
    return A.change_basis(random_invertible(rng, 3))


def random_novikov_dialgebra(rng: random.Random) -> StructureAlgebra:
    # noncommutative P, so that ⊢ and ⊣ differ
    P = rng.choice([perm_extension(2), perm_functional(3)])
    N = derived_dialgebra(P, random_derivation(rng, P), "novikov-dialgebra")
    return N.change_basis(random_invertible(rng, 3))


def random_diff_perm(rng: random.Random):
    """A random 3-dimensional Perm algebra with a nonzero derivation (after basis change)."""
    P = _perm_3dim(rng)
    D = random_derivation(rng, P)
    S = random_invertible(rng, 3)
    from .algebra import inverse
    Sinv = inverse(S)
    Q = P.change_basis(S)
    # matrix of d in the new basis: rows are coordinates of d(f_i)
    n = 3
    newD = []
    for i in range(n):
        v = {j: Fraction(S[i][j]) for j in range(n) if S[i][j]}
        dv = apply_matrix(D, v)
        coords: dict = {}
        for a, c in dv.items():
            add_into(coords, {k: Sinv[a][k] for k in range(n) if Sinv[a][k]}, c)
        newD.append([coords.get(k, Fraction(0)) for k in range(n)])
    return Q, newD


# -- quotients of the tensor algebra by interior symmetry ----------------------------

def _canon(word: str) -> str:
    if len(word) <= 2:
        return word
    return word[0] + "".join(sorted(word[1:-1])) + word[-1]


def interior_symmetric_algebra(gens: str, max_len: int = 3, killed=(), name: str = "") -> StructureAlgebra:
    """Words in ``gens`` of length <= ``max_len``, interior letters commuting.

    ``killed`` lists words generating a two-sided ideal to factor out.  Longer
    words are zero.  Basis order: by length, then lexicographic.
    """
    classes = []
    for n in range(1, max_len + 1):
        seen = set()
        for letters in iproduct(gens, repeat=n):
            c = _canon("".join(letters))
            if c not in seen:
                seen.add(c)
                classes.append(c)

    def mul(a: str, b: str):
        w = a + b
        return _canon(w) if len(w) <= max_len else None

    ideal = set()
    frontier = [_canon(k) for k in killed if len(k) <= max_len]
    ideal.update(frontier)
    while frontier:
        new = []
        for w in frontier:
            for c in classes:
                for p in (mul(c, w), mul(w, c)):
                    if p is not None and p not in ideal:
                        ideal.add(p)
                        new.append(p)
        frontier = new
    basis = [c for c in classes if c not in ideal]
    index = {c: i for i, c in enumerate(basis)}

    def rule(i, j):
        p = mul(basis[i], basis[j])
        if p is None or p in ideal:
            return None
        return index[p]

    return _mono_algebra(basis, rule, name)


def sls1_fixture() -> StructureAlgebra:
    """Two generators x, y; words of length <= 3 with commuting interior letters."""
    return interior_symmetric_algebra("xy", 3, name="sls1")


def sls2q_fixture() -> StructureAlgebra:
    """Three generators x, y, z; the previous construction modulo the ideal (xz)."""
    return interior_symmetric_algebra("xyz", 3, killed=("xz",), name="sls2q")


__all__ = [
    "truncated_poly", "perm_extension", "perm_functional", "upper_triangular", "random_invertible",
    "random_derivation", "derived_algebra", "derived_dialgebra", "random_novikov",
    "random_left_symmetric", "random_novikov_dialgebra", "random_diff_perm",
    "interior_symmetric_algebra", "sls1_fixture", "sls2q_fixture",
]
