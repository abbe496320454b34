"""Speciality of finite-dimensional SLS-algebras.

An SLS-algebra ``A`` is nice when every relation ``Σ a_i∘b_i = 0`` forces
``Σ (a_i∘x)∘b_i = 0`` for all ``x``; equivalently there are maps
``μ_x : A∘A -> A`` with ``μ_x(a∘b) = (a∘x)∘b``.

Inside the truncated tensor algebra we build

* ``K = {f : M(a f b) = 0 for all a, b in A}`` (mixed grades),
* ``I = span{u f v : f in K, u a nonempty word, v a word or empty}``,
* ``V = span{w(a, b, x) y_1...y_m}`` with ``w(a, b, x) = (a∘b)x - (a∘x)∘b``,
* ``J = I + V``,

and certify ``A ∩ J = 0`` at the bound.  Tensor elements are sparse maps from
words (tuples of basis indices) to scalars.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import StructureAlgebra
from .envelope import Envelope, TruncationError, all_words, concat, nominal_grade
from .identities import satisfies
from .linalg import RowSpace, Solver, add_into, intersection_basis, kernel
from .presentations import builtin


class NotSLSError(ValueError):
    """The input violates an SLS identity; carries the identity, basis tuple and value."""

    def __init__(self, identity, where, value):
        super().__init__(f"identity {identity} fails on basis tuple {where}")
        self.identity, self.where, self.value = identity, where, value


# -- spans of tensor elements ---------------------------------------------------

def _key(w):
    # longer words first, so a row's pivot is one of its highest-grade words
    return (-len(w), w)


def _unkey(v: dict) -> dict:
    return {k[1]: c for k, c in v.items()}


def tensor_grade(v: dict) -> int:
    return max((len(w) for w in v), default=0)


class TensorSpan:
    """Subspace of the truncated tensor algebra, echelonized highest grade first.

    With that order, ``dim(S ∩ T_{<=k})`` is the number of rows whose pivot has
    grade at most ``k``.
    """

    def __init__(self, rows=()):
        self.space = RowSpace()
        for r in rows:
            self.add(r)

    def add(self, v: dict) -> bool:
        return self.space.add({_key(w): c for w, c in v.items()})

    def contains(self, v: dict) -> bool:
        return self.space.contains({_key(w): c for w, c in v.items()})

    def reduce(self, v: dict) -> dict:
        return _unkey(self.space.reduce({_key(w): c for w, c in v.items()}))

    @property
    def rank(self) -> int:
        return self.space.rank

    def basis(self) -> list[dict]:
        return [_unkey(r) for r in self.space.basis()]

    def filtration_dims(self, bound: int) -> list[int]:
        """``[dim(S ∩ T_{<=k}) for k = 1..bound]``."""
        counts = [0] * (bound + 1)
        for p in self.space.pivots:
            counts[-p[0]] += 1
        out, run = [], 0
        for k in range(1, bound + 1):
            run += counts[k]
            out.append(run)
        return out


# -- niceness ------------------------------------------------------------------------

@dataclass
class NicenessReport:
    nice: bool
    relations: list  # kernel basis of A⊗A -> A, as {(i, j): c}
    witness: tuple | None = None  # (relation, x, Σ (a_i∘x)∘b_i) when not nice
    image_basis: list = field(default_factory=list)  # pairs (i, j) with e_i∘e_j a basis of A∘A
    mu: dict = field(default_factory=dict)  # x -> [μ_x(e_i∘e_j) for the image basis pairs]

    @property
    def verdict(self) -> str:
        return "nice" if self.nice else "not-nice"


def _pair_value(a: StructureAlgebra, rel: dict, x: int) -> dict:
    """``Σ c (e_i∘x)∘e_j`` over ``rel = {(i, j): c}``."""
    acc: dict = {}
    for (i, j), c in rel.items():
        add_into(acc, a.mul(a.mul({i: 1}, {x: 1}), {j: 1}), c)
    return acc


def require_sls(a: StructureAlgebra) -> None:
    bad = satisfies(a, builtin("sls"))
    if bad is not None:
        raise NotSLSError(*bad)


def check_nice(a: StructureAlgebra) -> NicenessReport:
    require_sls(a)
    n = a.dim
    # relations come out of a labelled echelon, so each touches at most rank + 1 pairs
    solver = Solver()
    image_basis, relations = [], []
    for i in range(n):
        for j in range(n):
            dep = solver.add((i, j), a.product[i][j])
            if dep is None:
                image_basis.append((i, j))
            else:
                relations.append(dep)
    cache: dict = {}

    def value(i, j, x):
        key = (i, j, x)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = a.mul(a.product[i][x], {j: 1})
        return hit

    for x in range(n):
        failing = []
        for r in relations:
            v: dict = {}
            for (i, j), c in r.items():
                add_into(v, value(i, j, x), c)
            if v:
                failing.append((r, v))
        if failing:
            r, v = min(failing, key=lambda rv: (len(rv[0]), sorted(rv[0])))
            return NicenessReport(False, relations, (r, x, v))
    mu = {x: [value(i, j, x) for i, j in image_basis] for x in range(n)}
    return NicenessReport(True, relations, None, image_basis, mu)


class MuMaps:
    """The maps ``μ_x`` of a nice algebra, applied to elements of ``A∘A``."""

    def __init__(self, a: StructureAlgebra, report: NicenessReport):
        if not report.nice:
            raise ValueError("μ maps exist only for nice algebras")
        self.a, self.report = a, report
        self.solver = Solver()
        for p in report.image_basis:
            self.solver.add(p, a.product[p[0]][p[1]])

    def __call__(self, x: int, v: dict) -> dict:
        combo = self.solver.express(v)
        if combo is None:
            raise ValueError("argument is not in A∘A")
        idx = {p: k for k, p in enumerate(self.report.image_basis)}
        acc: dict = {}
        for p, c in combo.items():
            add_into(acc, self.report.mu[x][idx[p]], c)
        return acc

    def image_basis_vectors(self) -> list[dict]:
        return [dict(self.a.product[i][j]) for i, j in self.report.image_basis]


def verify_mu(a: StructureAlgebra, report: NicenessReport) -> bool:
    """``μ_x(e_a∘e_b) = (e_a∘x)∘e_b`` for all basis a, b, x."""
    mu = MuMaps(a, report)
    for x in range(a.dim):
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = mu(x, dict(a.product[i][j]))
                if lhs != _pair_value(a, {(i, j): 1}, x):
                    return False
    return True


# -- K, I, V, J ---------------------------------------------------------------------

def _k_images(env: Envelope, words) -> dict:
    a = env.A
    n = a.dim
    images = {}
    for f in words:
        img: dict = {}
        for i in range(n):
            y = env.M_word((i,) + f)
            if not y:
                continue
            for j in range(n):
                for l, c in a.mul(y, {j: 1}).items():
                    img[(i, j, l)] = c
        images[f] = img
    return images


def compute_K(a: StructureAlgebra, k: int, mixed: bool = False) -> list[dict]:
    """Basis of ``K ∩ A^{⊗k}``, or of ``K ∩ T_{<=k}`` when ``mixed``."""
    if k < 1:
        raise ValueError("grade must be >= 1")
    env = Envelope(a, k + 2)
    words = all_words(a.dim, k) if mixed else [w for w in all_words(a.dim, k) if len(w) == k]
    return kernel(_k_images(env, words))


def w_generator(a: StructureAlgebra, i: int, j: int, x: int) -> dict:
    """``(e_i∘e_j) x - (e_i∘x)∘e_j`` as a tensor element."""
    out: dict = {}
    for k, c in a.product[i][j].items():
        add_into(out, {(k, x): c})
    for k, c in _pair_value(a, {(i, j): 1}, x).items():
        add_into(out, {(k,): -c})
    return out


def h_element(a: StructureAlgebra, x: int, y: int, z: int) -> dict:
    """``xyz + (x∘z)∘y - (x∘y)z - (x∘z)y``."""
    out: dict = {(x, y, z): 1}
    for k, c in a.mul(a.mul({x: 1}, {z: 1}), {y: 1}).items():
        add_into(out, {(k,): c})
    for k, c in a.mul({x: 1}, {y: 1}).items():
        add_into(out, {(k, z): -c})
    for k, c in a.mul({x: 1}, {z: 1}).items():
        add_into(out, {(k, y): -c})
    return out


@dataclass
class IdealSpan:
    bound: int
    K: TensorSpan  # K ∩ T_{<=bound-1}
    I: TensorSpan
    V: TensorSpan
    J: TensorSpan
    K_graded: dict  # k -> dim(K ∩ A^{⊗k})

    def dims(self) -> dict:
        D = self.bound
        return {
            "K": self.K.filtration_dims(D - 1),
            "K_graded": [self.K_graded[k] for k in sorted(self.K_graded)],
            "I": self.I.filtration_dims(D),
            "V": self.V.filtration_dims(D),
            "J": self.J.filtration_dims(D),
        }


def _words_up_to(dim, m, start=0):
    """Words of lengths ``start..m``; the empty word when start is 0."""
    out = [()] if start == 0 else []
    if m >= 1:
        out.extend(w for w in all_words(dim, m) if len(w) >= max(start, 1))
    return out


def compute_ideals(a: StructureAlgebra, bound: int) -> IdealSpan:
    if bound < 2:
        raise ValueError("truncation bound must be at least 2")
    n = a.dim
    D = bound
    K = TensorSpan(compute_K(a, D - 1, mixed=True))
    K_graded = {k: len(compute_K(a, k)) for k in range(1, D)}

    I = TensorSpan()
    for f in K.basis():
        g = tensor_grade(f)
        for u in _words_up_to(n, D - g, start=1):
            for v in _words_up_to(n, D - g - len(u)):
                I.add(concat(concat(u, f), v) if v else concat(u, f))

    V = compute_V(a, D)

    J = TensorSpan(I.basis())
    for r in V.basis():
        J.add(r)
    return IdealSpan(D, K, I, V, J, K_graded)


def compute_V(a: StructureAlgebra, bound: int) -> TensorSpan:
    """Span of the w-generators right-multiplied by words, up to grade ``bound``."""
    n = a.dim
    gens = TensorSpan()
    for i in range(n):
        for j in range(n):
            for x in range(n):
                gens.add(w_generator(a, i, j, x))
    V = TensorSpan()
    for g in gens.basis():
        for y in _words_up_to(n, bound - tensor_grade(g)):
            V.add(concat(g, y) if y else g)
    return V


def mu_based_V(a: StructureAlgebra, report: NicenessReport, bound: int) -> TensorSpan:
    """``span{c x_1...x_m - μ_{x_m}...μ_{x_1}(c)}`` over an image basis ``c`` of ``A∘A``."""
    mu = MuMaps(a, report)
    out = TensorSpan()
    for c in mu.image_basis_vectors():
        for xs in all_words(a.dim, bound - 1):
            lead = concat({(k,): v for k, v in c.items()}, {xs: 1})
            tail = c
            for x in xs:
                tail = mu(x, tail)
            vec = dict(lead)
            for k, v in tail.items():
                add_into(vec, {(k,): -v})
            out.add(vec)
    return out


def same_span(s: TensorSpan, t: TensorSpan) -> bool:
    return s.rank == t.rank and all(t.contains(r) for r in s.basis())


@dataclass
class IntersectionCertificate:
    bound: int
    space: str
    dim: int
    witness: dict | None  # a nonzero element of A ∩ span, over basis indices of A


def intersect_with_A(a: StructureAlgebra, target: TensorSpan, bound: int,
                     name: str = "J") -> IntersectionCertificate:
    """``A ∩ target`` where A is the grade-one part of the tensor algebra."""
    rows = [{(i,): Fraction(1)} for i in range(a.dim)]
    inter = intersection_basis([{_key(w): c for w, c in r.items()} for r in rows], target.space)
    if len(inter) != target.filtration_dims(bound)[0]:
        raise AssertionError("intersection dimension disagrees with the filtration count")
    witness = None
    if inter:
        witness = {w[1][0]: c for w, c in sorted(inter[0].items())}
    return IntersectionCertificate(bound, name, len(inter), witness)


def check_intersection(a: StructureAlgebra, span: IdealSpan, which: str = "J") -> IntersectionCertificate:
    return intersect_with_A(a, getattr(span, which), span.bound, which)


# -- sampled checks in D(A) --------------------------------------------------------------

def _sample_assignment(rng, env: Envelope, ident, tries: int = 1000):
    n, D = ident.arity, env.D
    for _ in range(tries):
        lengths = {v: rng.randint(1, D) for v in range(1, n + 1)}
        if all(nominal_grade(t, lengths, D) is not None for t in ident.body.keys()):
            return {v: tuple(rng.randrange(env.A.dim) for _ in range(lengths[v])) for v in lengths}
    raise TruncationError("no in-bound assignment found")


def check_novikov_quotient(a: StructureAlgebra, span: IdealSpan, samples: int = 100,
                           rng: random.Random | None = None):
    """Sample word triples and check every Novikov-dialgebra identity lies in J.

    Returns None on success or ``(identity, words, value)`` for a failure.
    """
    rng = rng or random.Random(0)
    env = Envelope(a, span.bound)
    idents = builtin("dinov").identities
    for s in range(samples):
        ident = idents[s % len(idents)]
        asg = _sample_assignment(rng, env, ident)
        val = env.eval_identity(ident, {v: {w: 1} for v, w in asg.items()})
        if not span.J.contains(val):
            return ident, asg, val
    return None


def poisson_defect(env: Envelope, x: int, u: tuple, v: tuple) -> dict:
    """``x⊢(uv) - (x⊢u)v - u(x⊢v) + uxv``."""
    out = env.vdash_dict({(x,): 1}, {u + v: 1})
    add_into(out, concat(env.vdash_dict({(x,): 1}, {u: 1}), {v: 1}), -1)
    add_into(out, concat({u: 1}, env.vdash_dict({(x,): 1}, {v: 1})), -1)
    add_into(out, {u + (x,) + v: 1})
    return out


def check_poisson(a: StructureAlgebra, span: IdealSpan, samples: int = 50,
                  rng: random.Random | None = None):
    """Sampled ``(x, u, v)`` with ``len(uv) + 1 <= D``; None or the failing triple and defect."""
    rng = rng or random.Random(0)
    D = span.bound
    if D < 3:
        raise ValueError("bound too small for two nonempty words and a letter")
    env = Envelope(a, D)
    for _ in range(samples):
        total = rng.randint(2, D - 1)
        cut = rng.randint(1, total - 1)
        word = tuple(rng.randrange(a.dim) for _ in range(total))
        x = rng.randrange(a.dim)
        u, v = word[:cut], word[cut:]
        d = poisson_defect(env, x, u, v)
        if not span.I.contains(d):
            return (x, u, v), d
    return None


def check_ideal_stability(a: StructureAlgebra, span: IdealSpan, samples: int | None = None,
                          rng: random.Random | None = None):
    """Products of J-basis rows with basis letters stay in J when in bound.

    ``samples`` limits the number of J rows examined (all when None).
    Returns None or ``(row, letter, product name, value)``.
    """
    env = Envelope(a, span.bound)
    D = span.bound
    rows = span.J.basis()
    if samples is not None and samples < len(rows):
        rng = rng or random.Random(0)
        rows = rng.sample(rows, samples)
    for r in rows:
        g = tensor_grade(r)
        for x in range(a.dim):
            e = {(x,): 1}
            checks = []
            if g + 1 <= D:
                checks.append(("row-|x", env.dashv_dict(r, e)))
                checks.append(("x|-row", env.vdash_dict(e, r)))
            checks.append(("row|-x", env.vdash_dict(r, e)))
            checks.append(("x-|row", env.dashv_dict(e, r)))
            for name, val in checks:
                if not span.J.contains(val):
                    return r, x, name, val
    return None


# -- the decision ------------------------------------------------------------------------

@dataclass
class SpecialVerdict:
    special: bool
    violation: tuple | None  # (identity, basis tuple, value) when not SLS
    niceness: NicenessReport | None
    intersection: IntersectionCertificate | None = None


def decide_special(a: StructureAlgebra, bound: int | None = None) -> SpecialVerdict:
    bad = satisfies(a, builtin("sls"))
    if bad is not None:
        return SpecialVerdict(False, bad, None)
    report = check_nice(a)
    inter = None
    if report.nice and bound is not None:
        inter = check_intersection(a, compute_ideals(a, bound))
    return SpecialVerdict(report.nice, None, report, inter)


__all__ = [
    "NotSLSError", "TensorSpan", "NicenessReport", "MuMaps", "IdealSpan", "IntersectionCertificate",
    "SpecialVerdict", "check_nice", "verify_mu", "compute_K", "compute_ideals", "mu_based_V", "same_span",
    "check_intersection", "intersect_with_A", "compute_V", "check_novikov_quotient", "check_poisson", "check_ideal_stability",
    "decide_special", "w_generator", "h_element", "poisson_defect", "require_sls", "tensor_grade",
]
