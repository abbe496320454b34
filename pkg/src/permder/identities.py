"""Evaluation of multilinear identities and multilinear operad dimensions.

The consequence space of a presentation in arity ``n`` is spanned by the
elements ``C[f(m_1, ..., m_k)]``: an identity ``f`` with multilinear monomials
substituted for its variables, placed inside a one-hole context ``C``.  A
context is a chain of left/right multiplications by monomials, so the space on
a variable set ``S`` is built from instances on ``S`` plus one multiplication
applied to the spaces on proper subsets of ``S``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Mapping

from . import diffperm
from .linalg import LinComb, RowSpace, UnionFind, add_into
from .terms import Identity, VarietyPresentation, format_term, leaves, multilinear_monomials, relabel

DEFAULT_MAX_MONOMIALS = 31000


class ResourceBoundExceeded(RuntimeError):
    pass


class AlphabetMismatch(ValueError):
    pass


# -- evaluation in the free differential Perm-algebra -----------------------

def _perm_left(f, g):
    return diffperm.perm_mul(f, g)


def _perm_right(f, g):
    return diffperm.perm_mul(g, f)


INTERPRETATIONS: dict[str, dict[str, Callable]] = {
    # f∘g = f d(g); f⊢g = f d(g); f⊣g = d(g) f
    "derived": {"*": diffperm.derived_product, "|-": diffperm.vdash, "-|": diffperm.dashv},
    # plain Perm product; x⊢y = xy, x⊣y = yx
    "perm": {"*": diffperm.perm_mul, "|-": _perm_left, "-|": _perm_right},
}


def eval_term_free_perm(t, interp: Mapping[str, Callable], names=None) -> LinComb:
    if isinstance(t, int):
        return diffperm.generator(names[t] if names else f"x{t}")
    op, left, right = t
    try:
        fn = interp[op]
    except KeyError:
        raise AlphabetMismatch(f"no interpretation for product {op!r}") from None
    return fn(eval_term_free_perm(left, interp, names), eval_term_free_perm(right, interp, names))


def eval_in_free_perm(ident: Identity, interp: str | Mapping[str, Callable] = "derived") -> LinComb:
    """Substitute distinct generators ``x1..xn`` and expand; zero iff the identity holds."""
    if isinstance(interp, str):
        interp = INTERPRETATIONS[interp]
    acc: dict = {}
    for t, c in ident.body.items():
        add_into(acc, eval_term_free_perm(t, interp).terms, c)
    return LinComb(acc)


# -- evaluation in a structure algebra ---------------------------------------

def _term_tensor(t, tables, dim):
    """Sparse multilinear map of a term: {basis tuple over sorted vars: vector}."""
    if isinstance(t, int):
        return [t], {(i,): {i: 1} for i in range(dim)}
    op, left, right = t
    vl, tl = _term_tensor(left, tables, dim)
    vr, tr = _term_tensor(right, tables, dim)
    tab = tables[op]
    merged = sorted(vl + vr)
    pos_l = [merged.index(v) for v in vl]
    pos_r = [merged.index(v) for v in vr]
    out = {}
    for kl, ul in tl.items():
        for kr, ur in tr.items():
            acc: dict = {}
            for i, a in ul.items():
                row = tab[i]
                for j, b in ur.items():
                    cij = row[j]
                    if cij:
                        add_into(acc, cij, a * b)
            if acc:
                key = [0] * len(merged)
                for p, x in zip(pos_l, kl):
                    key[p] = x
                for p, x in zip(pos_r, kr):
                    key[p] = x
                out[tuple(key)] = acc
    return merged, out


def identity_witness(ident: Identity, algebra):
    """First basis tuple on which the identity fails, with the nonzero value, or None."""
    tables = algebra.tables
    missing = ident.ops - set(tables)
    if missing:
        raise AlphabetMismatch(f"identity uses {sorted(missing)}, algebra offers {sorted(tables)}")
    total: dict = {}
    for t, c in ident.body.items():
        _, tens = _term_tensor(t, tables, algebra.dim)
        for key, vec in tens.items():
            slot = total.setdefault(key, {})
            add_into(slot, vec, c)
    for key in sorted(total):
        if total[key]:
            return key, total[key]
    return None


def eval_in_structure_algebra(ident: Identity, algebra) -> bool:
    return identity_witness(ident, algebra) is None


def satisfies(algebra, pres: VarietyPresentation):
    """None if every identity holds, else ``(identity, basis tuple, value)``."""
    for ident in pres.identities:
        w = identity_witness(ident, algebra)
        if w is not None:
            return ident, w[0], w[1]
    return None


# -- consequence spaces -----------------------------------------------------

def _ordered_partitions(labels, k):
    """Assignments of ``labels`` to ``k`` nonempty ordered blocks."""
    m = len(labels)
    for assign in product(range(k), repeat=m):
        blocks = [[] for _ in range(k)]
        for lab, b in zip(labels, assign):
            blocks[b].append(lab)
        if all(blocks):
            yield blocks


@lru_cache(maxsize=None)
def _monomials_on(labels: tuple, ops: tuple) -> tuple:
    return tuple(multilinear_monomials(len(labels), ops, labels))


def _instances(ident: Identity, labels: tuple, ops: tuple):
    """All substitutions of monomials on disjoint blocks of ``labels`` into ``ident``."""
    k = ident.arity
    if k > len(labels):
        return
    body = list(ident.body.items())
    for blocks in _ordered_partitions(list(labels), k):
        choices = [_monomials_on(tuple(b), ops) for b in blocks]
        for ms in product(*choices):
            mapping = {i + 1: ms[i] for i in range(k)}
            yield [(relabel(t, mapping), c) for t, c in body]


def _is_binomial(pres: VarietyPresentation) -> bool:
    for ident in pres.identities:
        cs = sorted(ident.body.terms.values())
        if cs != [Fraction(-1), Fraction(1)]:
            return False
    return True


class ConsequenceSpace:
    """Multilinear degree-``n`` component of the T-ideal of a presentation."""

    def __init__(self, pres: VarietyPresentation, n: int, max_monomials: int = DEFAULT_MAX_MONOMIALS):
        self.pres = pres
        self.n = n
        self.ops = tuple(pres.ops)
        self.monomials = _checked_monomials(n, self.ops, max_monomials)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.binomial = _is_binomial(pres)
        gens = _spanning_rows(pres.key(), self.binomial, n, max_monomials)
        if self.binomial:
            self._uf = UnionFind()
            self._rank = 0
            for a, b in gens:
                if self._uf.union(self.index[a], self.index[b]):
                    self._rank += 1
        else:
            self._space = RowSpace()
            for row in gens:
                self._space.add({self.index[t]: c for t, c in row.items()})
            self._rank = self._space.rank

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def quotient_dim(self) -> int:
        return len(self.monomials) - self._rank

    def contains(self, body: LinComb) -> bool:
        try:
            vec = {self.index[t]: c for t, c in body.items()}
        except KeyError as exc:
            raise ValueError(f"term {format_term(exc.args[0])} is not an arity-{self.n} monomial") from None
        if self.binomial:
            sums: dict = {}
            for i, c in vec.items():
                r = self._uf.find(i)
                sums[r] = sums.get(r, 0) + c
            return not any(sums.values())
        return self._space.contains(vec)


def _checked_monomials(n, ops, max_monomials):
    count = _count_monomials(n, len(ops))
    if count > max_monomials:
        raise ResourceBoundExceeded(
            f"arity {n} has {count} multilinear monomials (bound {max_monomials})")
    return _monomials_on(tuple(range(1, n + 1)), ops)


def _count_monomials(n, nops):
    from math import comb, factorial
    catalan = comb(2 * (n - 1), n - 1) // n
    return catalan * factorial(n) * nops ** (n - 1)


@lru_cache(maxsize=64)
def _spanning_rows(key, binomial: bool, n: int, max_monomials: int):
    """Spanning set of the consequence space on labels ``1..n``.

    Binomial presentations return edges ``(a, b)`` of a spanning forest; others
    return echelon basis rows keyed by terms.
    """
    ops, bodies = key
    idents = [Identity(max(len(leaves(t)) for t in b), b) for b in bodies if b]
    labels = tuple(range(1, n + 1))
    monos = _checked_monomials(n, ops, max_monomials)
    index = {m: i for i, m in enumerate(monos)}

    def candidates():
        for ident in idents:
            for inst in _instances(ident, labels, ops):
                yield inst
        for j in range(1, n):
            sub = _spanning_rows(key, binomial, j, max_monomials)
            if not sub:
                continue
            for chosen in combinations(labels, j):
                rest = tuple(x for x in labels if x not in chosen)
                mapping = {i + 1: chosen[i] for i in range(j)}
                moved = [_relabel_row(r, mapping, binomial) for r in sub]
                for m in _monomials_on(rest, ops):
                    for op in ops:
                        for r in moved:
                            if binomial:
                                a, b = r
                                yield [((op, a, m), 1), ((op, b, m), -1)]
                                yield [((op, m, a), 1), ((op, m, b), -1)]
                            else:
                                yield [((op, t, m), c) for t, c in r]
                                yield [((op, m, t), c) for t, c in r]

    if binomial:
        uf = UnionFind()
        edges = []
        for row in candidates():
            terms = [t for t, c in row]
            if len(row) != 2 or terms[0] == terms[1]:
                continue
            a, b = index[terms[0]], index[terms[1]]
            if uf.union(a, b):
                edges.append((terms[0], terms[1]))
        return tuple(edges)

    space = RowSpace()
    for row in candidates():
        vec: dict = {}
        for t, c in row:
            add_into(vec, {index[t]: Fraction(c)})
        space.add(vec)
    return tuple({monos[i]: c for i, c in r.items()} for r in space.basis())


def _relabel_row(r, mapping, binomial):
    if binomial:
        return (relabel(r[0], mapping), relabel(r[1], mapping))
    return [(relabel(t, mapping), c) for t, c in r.items()]


def consequence_space(pres: VarietyPresentation, n: int,
                      max_monomials: int = DEFAULT_MAX_MONOMIALS) -> ConsequenceSpace:
    return ConsequenceSpace(pres, n, max_monomials)


def multilinear_dim(pres: VarietyPresentation, n: int, max_monomials: int = DEFAULT_MAX_MONOMIALS) -> int:
    if n < 1:
        raise ValueError("arity must be >= 1")
    return consequence_space(pres, n, max_monomials).quotient_dim


def is_consequence(candidate: Identity, pres: VarietyPresentation,
                   max_monomials: int = DEFAULT_MAX_MONOMIALS) -> bool:
    if candidate.ops - set(pres.ops):
        raise AlphabetMismatch("candidate uses products outside the presentation")
    if candidate.body.is_zero():
        return True
    return consequence_space(pres, candidate.arity, max_monomials).contains(candidate.body)
