"""The universal enveloping left-symmetric dialgebra on the tensor algebra T(A).

Elements of T(A) are sparse maps from words (nonempty tuples of basis indices
of A) to scalars.  Only words of length at most the truncation bound ``D`` are
ever produced; an operation whose result could exceed ``D`` raises
:class:`TruncationError` instead of dropping terms.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from operator import itemgetter
from typing import Mapping, Sequence

from .algebra import StructureAlgebra, Vector
from .linalg import LinComb, add_into, exact
from .terms import leaves

Word = tuple


class TruncationError(ArithmeticError):
    pass


def _as_dict(u) -> dict:
    if isinstance(u, LinComb):
        return dict(u.items())
    if isinstance(u, tuple):
        return {u: 1}
    return dict(u)


def grade(u) -> int:
    return max((len(w) for w in _as_dict(u)), default=0)


class Envelope:
    """D(A) truncated at word length ``bound``."""

    def __init__(self, algebra: StructureAlgebra, bound: int):
        if bound < 1:
            raise ValueError("truncation bound must be positive")
        self.A = algebra
        self.D = bound
        self._m_cache: dict = {}
        self._vd_cache: dict = {}

    # -- M -----------------------------------------------------------------

    def M_word(self, w: Word) -> Vector:
        """Left-normed product of the letters of ``w``."""
        hit = self._m_cache.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            out = {w[0]: 1}
        else:
            out = self.A.mul(self.M_word(w[:-1]), {w[-1]: 1})
        self._m_cache[w] = out
        return out

    def M_vec(self, u) -> Vector:
        acc: dict = {}
        for w, c in _as_dict(u).items():
            add_into(acc, self.M_word(w), c)
        return acc

    def M(self, u) -> LinComb:
        """M as a grade-1 tensor element."""
        return LinComb({(k,): c for k, c in self.M_vec(u).items()})

    # -- products ----------------------------------------------------------

    def _vdash_basis(self, i: int, w: Word) -> dict:
        key = (i, w)
        hit = self._vd_cache.get(key)
        if hit is not None:
            return hit
        a = w[-1]
        if len(w) == 1:
            out = {(k,): c for k, c in self.A.mul({i: 1}, {a: 1}).items()}
        else:
            if len(w) + 1 > self.D:
                raise TruncationError(f"e{i} ⊢ word of length {len(w)} exceeds bound {self.D}")
            head = w[:-1]
            out = {}
            for word, c in self._vdash_basis(i, head).items():
                add_into(out, {word + (a,): c})
            for k, c in self.A.mul({i: 1}, {a: 1}).items():
                add_into(out, {head + (k,): c})
            add_into(out, {head + (i, a): -1})
        self._vd_cache[key] = out
        return out

    def vdash_dict(self, u, w) -> dict:
        x = self.M_vec(u)
        wd = _as_dict(w)
        for word in wd:
            if len(word) >= 2 and len(word) + 1 > self.D:
                raise TruncationError(f"⊢ with right factor of length {len(word)} exceeds bound {self.D}")
        acc: dict = {}
        for word, c in wd.items():
            for i, xi in x.items():
                add_into(acc, self._vdash_basis(i, word), c * xi)
        return acc

    def dashv_dict(self, u, w) -> dict:
        ud = _as_dict(u)
        for word in ud:
            if len(word) + 1 > self.D:
                raise TruncationError(f"⊣ with left factor of length {len(word)} exceeds bound {self.D}")
        y = self.M_vec(w)
        acc: dict = {}
        for word, c in ud.items():
            for k, yk in y.items():
                add_into(acc, {word + (k,): c * yk})
        return acc

    def vdash(self, u, w) -> LinComb:
        return LinComb(self.vdash_dict(u, w))

    def dashv(self, u, w) -> LinComb:
        return LinComb(self.dashv_dict(u, w))

    def op(self, name: str):
        return {"|-": self.vdash_dict, "-|": self.dashv_dict}[name]

    def eval_term(self, t, assignment: Mapping[int, dict]) -> dict:
        if isinstance(t, int):
            return assignment[t]
        op, left, right = t
        return self.op(op)(self.eval_term(left, assignment), self.eval_term(right, assignment))

    def eval_identity(self, ident, assignment) -> dict:
        acc: dict = {}
        for t, c in ident.body.items():
            add_into(acc, self.eval_term(t, assignment), c)
        return acc

    def _vdash_vec(self, x: dict, right: dict) -> dict:
        acc: dict = {}
        for word, c in right.items():
            for i, xi in x.items():
                add_into(acc, self._vdash_basis(i, word), c * xi)
        return acc

    def check_identity(self, ident, max_len: int | None = None):
        """Evaluate ``ident`` on every in-bound assignment of basis words.

        An assignment is in bound when no operation in any term would exceed
        the truncation bound, judged by the nominal grades of the arguments.
        Returns ``(assignments checked, None)`` or, at the first nonzero
        value, ``(assignments checked, (words, value))``.
        """
        n = ident.arity
        top = self.D if max_len is None else max_len
        by_len = {k: [w for w in all_words(self.A.dim, k) if len(w) == k] for k in range(1, top + 1)}
        terms = [(_compile(t), exact(c)) for t, c in ident.body.items()]
        count = 0
        for lengths in product(range(1, top + 1), repeat=n):
            glen = dict(zip(range(1, n + 1), lengths))
            if any(nominal_grade(t, glen, self.D) is None for t in ident.body.keys()):
                continue
            for words in product(*(by_len[k] for k in lengths)):
                total: dict = {}
                for node, c in terms:
                    self._accumulate_root(node, words, c, total)
                count += 1
                if any(total.values()):
                    return count, (words, {w: v for w, v in total.items() if v})
        return count, None

    def _accumulate_root(self, node, words, c, total: dict) -> None:
        """``total += c * value(node)`` without caching the root value."""
        if isinstance(node, int):
            w = words[node - 1]
            total[w] = total.get(w, 0) + c
            return
        op, left, right = node[0], node[1], node[2]
        if op == "|-":
            x = self._node_M(left, words)
            for word, cw in self._eval_node(right, words).items():
                for i, xi in x.items():
                    s = c * cw * xi
                    for w2, v in self._vdash_basis(i, word).items():
                        total[w2] = total.get(w2, 0) + s * v
        else:
            y = self._node_M(right, words)
            for word, cw in self._eval_node(left, words).items():
                if len(word) + 1 > self.D:
                    raise TruncationError(f"⊣ with left factor of length {len(word)} exceeds bound {self.D}")
                s = c * cw
                for k, yk in y.items():
                    w2 = word + (k,)
                    total[w2] = total.get(w2, 0) + s * yk

    def _eval_node(self, node, words) -> dict:
        if isinstance(node, int):
            return {words[node - 1]: 1}
        op, left, right, key_of, cache, _ = node
        key = key_of(words)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if op == "|-":
            out = self._vdash_vec(self._node_M(left, words), self._eval_node(right, words))
        else:
            y = self._node_M(right, words)
            out = {}
            for word, c in self._eval_node(left, words).items():
                if len(word) + 1 > self.D:
                    raise TruncationError(f"⊣ with left factor of length {len(word)} exceeds bound {self.D}")
                for k, yk in y.items():
                    out[word + (k,)] = c * yk  # distinct words: no collisions
        cache[key] = out
        return out

    def _node_M(self, node, words) -> dict:
        if isinstance(node, int):
            return self.M_word(words[node - 1])
        key = node[3](words)
        mcache = node[5]
        hit = mcache.get(key)
        if hit is None:
            hit = mcache[key] = self.M_vec(self._eval_node(node, words))
        return hit

    # -- words -------------------------------------------------------------

    def words(self, max_len: int | None = None) -> list[Word]:
        return all_words(self.A.dim, self.D if max_len is None else max_len)

    def random_word(self, rng: random.Random, max_len: int | None = None) -> Word:
        n = rng.randint(1, self.D if max_len is None else max_len)
        return tuple(rng.randrange(self.A.dim) for _ in range(n))


def _compile(t):
    """Term tree with a key function and per-node value and M caches."""
    if isinstance(t, int):
        return t
    op, left, right = t
    key_of = itemgetter(*(v - 1 for v in sorted(leaves(t))))
    return (op, _compile(left), _compile(right), key_of, {}, {})


def nominal_grade(t, lengths: Mapping[int, int], bound: int):
    """Grade of a term's value on words of the given lengths, or None on overflow."""
    if isinstance(t, int):
        return lengths[t]
    op, left, right = t
    gl = nominal_grade(left, lengths, bound)
    gr = nominal_grade(right, lengths, bound)
    if gl is None or gr is None:
        return None
    if op == "|-":
        if gr == 1:
            return 1
        return gr + 1 if gr + 1 <= bound else None
    if gl + 1 > bound:
        return None
    return gl + 1


@lru_cache(maxsize=None)
def _words_cached(dim: int, max_len: int) -> tuple:
    out = []
    layer = [()]
    for _ in range(max_len):
        layer = [w + (k,) for w in layer for k in range(dim)]
        out.extend(layer)
    return tuple(out)


def all_words(dim: int, max_len: int) -> list[Word]:
    """Words of length 1..max_len, by length then lexicographically."""
    return list(_words_cached(dim, max_len))


def concat(u, v) -> dict:
    """Product in the associative tensor algebra."""
    acc: dict = {}
    for w1, c1 in _as_dict(u).items():
        for w2, c2 in _as_dict(v).items():
            add_into(acc, {w1 + w2: c1 * c2})
    return acc


def from_vector(x: Vector) -> dict:
    """A as the grade-1 component of T(A)."""
    return {(k,): c for k, c in x.items() if c}


# -- module-level operations --------------------------------------------------

def M(env: Envelope, u) -> LinComb:
    return env.M(u)


def vdash(env: Envelope, u, w) -> LinComb:
    return env.vdash(u, w)


def dashv(env: Envelope, u, w) -> LinComb:
    return env.dashv(u, w)


class HomomorphismError(ValueError):
    pass


class UniversalMap:
    """The dialgebra map D(A) -> B extending a homomorphism ``A -> (B, ⊢)``.

    ``images[i]`` is the image of the i-th basis element of A in B.
    """

    def __init__(self, A: StructureAlgebra, B: StructureAlgebra, images: Sequence[Vector]):
        if not B.is_dialgebra:
            raise ValueError("target must be a dialgebra")
        self.A, self.B = A, B
        self.images = [dict(v) for v in images]
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.apply_vector(A.mul({i: 1}, {j: 1}))
                rhs = B.vdash(self.images[i], self.images[j])
                if LinComb(lhs) != LinComb(rhs):
                    raise HomomorphismError(
                        f"tau(e{i}∘e{j}) != tau(e{i})⊢tau(e{j})")

    def apply_vector(self, x: Vector) -> Vector:
        acc: dict = {}
        for k, c in x.items():
            add_into(acc, self.images[k], c)
        return acc

    def apply_word(self, w: Word) -> Vector:
        x = self.images[w[0]]
        for a in w[1:]:
            x = self.B.dashv(x, self.images[a])
        return x

    def __call__(self, u) -> Vector:
        acc: dict = {}
        for w, c in _as_dict(u).items():
            add_into(acc, self.apply_word(w), c)
        return acc


def universal_map(u, A: StructureAlgebra, B: StructureAlgebra, images: Sequence[Vector]) -> Vector:
    return UniversalMap(A, B, images)(u)


# -- property suites ------------------------------------------------------------------

M_PRODUCT_CHECKS = ("u|-w = M(u)|-w", "u-|w = u-|M(w)", "M(u|-w) = M(u)*M(w)", "M(u-|w) = M(u)*M(w)")


def check_m_products(env: Envelope, u: Word, w: Word):
    """Names of the failing equalities among ``M_PRODUCT_CHECKS`` for the word pair."""
    A = env.A
    mo = {(k,): c for k, c in A.mul(env.M_vec({u: 1}), env.M_vec({w: 1})).items()}
    vd = env.vdash_dict({u: 1}, {w: 1})
    dv = env.dashv_dict({u: 1}, {w: 1})
    results = (
        vd == env.vdash_dict(env.M({u: 1}).terms, {w: 1}),
        dv == env.dashv_dict({u: 1}, env.M({w: 1}).terms),
        env.M(vd).terms == mo,
        env.M(dv).terms == mo,
    )
    return [name for name, ok in zip(M_PRODUCT_CHECKS, results) if not ok]


def envelope_suite(A: StructureAlgebra, bound: int = 4, pairs: int = 100,
                   rng: random.Random | None = None, presentation=None) -> dict:
    """M product checks on random word pairs and the dialgebra identities on all in-bound triples."""
    from .presentations import builtin
    if bound < 2:
        raise ValueError("truncation bound must be at least 2")
    rng = rng or random.Random(0)
    env = Envelope(A, bound)
    failures = []
    for _ in range(pairs):
        u = env.random_word(rng, bound - 1)
        w = env.random_word(rng, bound - 1)
        bad = check_m_products(env, u, w)
        if bad:
            failures.append({"u": list(u), "w": list(w), "failed": bad})
    pres = presentation or builtin("dilsym")
    idents = []
    for f in pres.identities:
        count, bad = env.check_identity(f)
        entry = {"identity": str(f), "assignments": count, "passed": bad is None}
        if bad is not None:
            entry["words"] = [list(w) for w in bad[0]]
        idents.append(entry)
    restriction = all(
        env.vdash_dict({(i,): 1}, {(j,): 1}) == {(k,): c for k, c in A.mul({i: 1}, {j: 1}).items()}
        for i in range(A.dim) for j in range(A.dim))
    return {
        "bound": bound,
        "pairs": pairs,
        "m_product_failures": failures,
        "identities": idents,
        "restriction": restriction,
        "passed": not failures and restriction and all(e["passed"] for e in idents),
    }
