"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Vectors are sparse: a mapping from
basis keys to nonzero scalars.  Basis keys only need to be hashable and
mutually comparable (ints, tuples of ints, ...); the smallest key of a row is
its pivot.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Scalar = Fraction

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


class BasisMismatch(ValueError):
    pass


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; the denominator must be a positive integer."""
    m = _SCALAR_RE.match(str(text))
    if not m:
        raise ValueError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in scalar {text!r}")
    return Fraction(num, den)


def format_scalar(x) -> str:
    return str(Fraction(x))


def exact(c):
    """Normalize a rational scalar; integral values become ``int`` for fast arithmetic."""
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LinComb:
    """Immutable finite linear combination of basis elements."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for b, c in items:
            c = Fraction(c)
            if c:
                v = acc.get(b, 0) + c
                if v:
                    acc[b] = v
                else:
                    acc.pop(b, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "LinComb":
        # d must already be free of zeros
        obj = cls.__new__(cls)
        obj._terms = d
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, b) -> "LinComb":
        return cls._raw({b: Fraction(1)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, b) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            if other == 0:
                return self
            return NotImplemented
        return LinComb._raw(add_into(dict(self._terms), other._terms))

    __radd__ = __add__

    def __neg__(self) -> "LinComb":
        return LinComb._raw({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        return LinComb._raw(add_into(dict(self._terms), other._terms, -1))

    def __mul__(self, s) -> "LinComb":
        if isinstance(s, LinComb):
            return NotImplemented
        s = Fraction(s)
        if not s:
            return LinComb._raw({})
        return LinComb._raw({b: c * s for b, c in self._terms.items()})

    __rmul__ = __mul__

    def map_basis(self, fn: Callable) -> "LinComb":
        """Linear extension of ``fn`` (basis -> LinComb or basis element)."""
        acc: dict = {}
        for b, c in self._terms.items():
            img = fn(b)
            if isinstance(img, LinComb):
                add_into(acc, img._terms, c)
            else:
                add_into(acc, {img: Fraction(1)}, c)
        return LinComb._raw(acc)

    def sorted_items(self, key=None):
        return sorted(self._terms.items(), key=key or (lambda kv: kv[0]))

    def __repr__(self) -> str:
        if not self._terms:
            return "LinComb(0)"
        return "LinComb({" + ", ".join(f"{b!r}: {c}" for b, c in self.items()) + "})"


def add_into(acc: dict, other: Mapping, scale=1) -> dict:
    """``acc += scale * other`` in place, dropping zeros; returns ``acc``."""
    for b, c in other.items():
        v = acc.get(b, 0) + c * scale
        if v:
            acc[b] = v
        else:
            acc.pop(b, None)
    return acc


def bilinear(f: LinComb, g: LinComb, fn: Callable) -> LinComb:
    """Bilinear extension of ``fn(basis, basis) -> LinComb | basis``."""
    acc: dict = {}
    for b1, c1 in f.items():
        for b2, c2 in g.items():
            img = fn(b1, b2)
            if isinstance(img, LinComb):
                add_into(acc, img._terms, c1 * c2)
            elif img is not None:
                add_into(acc, {img: Fraction(1)}, c1 * c2)
    return LinComb._raw(acc)


def _as_dict(v) -> dict:
    if isinstance(v, LinComb):
        return dict(v.items())
    return {k: Fraction(c) for k, c in dict(v).items() if c}


class RowSpace:
    """Incrementally maintained row echelon basis of a subspace.

    Each stored row is normalized to coefficient 1 at its pivot, which is the
    smallest key of the row after reduction.
    """

    def __init__(self, rows: Iterable = ()):
        self.pivots: dict = {}
        for r in rows:
            self.add(r)

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec) -> dict:
        row = _as_dict(vec)
        if not self.pivots or not row:
            return row
        heap = [k for k in row if k in self.pivots]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = row.get(k)
            if not c:
                continue
            for k2, v in self.pivots[k].items():
                nv = row.get(k2, 0) - c * v
                if nv:
                    if k2 not in row and k2 in self.pivots:
                        heapq.heappush(heap, k2)
                    row[k2] = nv
                else:
                    row.pop(k2, None)
        return row

    def add(self, vec) -> bool:
        """Add ``vec``; return True iff it was independent of the current rows."""
        row = self.reduce(vec)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
        self.pivots[p] = row
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict]:
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]


class Matrix:
    """A list of sparse rows over a declared basis.

    ``basis`` is any comparable descriptor of the column space (a tuple of keys,
    a dimension, a name); operations combining two matrices require equality.
    """

    def __init__(self, rows: Iterable = (), basis: Hashable = None):
        self.rows = [_as_dict(r) for r in rows]
        self.basis = basis

    def __len__(self) -> int:
        return len(self.rows)

    def stacked(self, other: "Matrix") -> "Matrix":
        _check_basis(self, other)
        return Matrix(self.rows + other.rows, self.basis)

    def row_space(self) -> RowSpace:
        return RowSpace(self.rows)


def _check_basis(u: Matrix, v: Matrix) -> None:
    if u.basis is not None and v.basis is not None and u.basis != v.basis:
        raise BasisMismatch(f"basis mismatch: {u.basis!r} vs {v.basis!r}")


def rank(m: Matrix | Iterable) -> int:
    rows = m.rows if isinstance(m, Matrix) else m
    return RowSpace(rows).rank


def intersect_dim(u: Matrix, v: Matrix) -> int:
    _check_basis(u, v)
    return rank(u) + rank(v) - rank(u.stacked(v))


def in_span(vec, m: Matrix, basis: Hashable = None) -> bool:
    if basis is not None and m.basis is not None and basis != m.basis:
        raise BasisMismatch(f"basis mismatch: {basis!r} vs {m.basis!r}")
    return m.row_space().contains(vec)


def kernel(images: Mapping) -> list[dict]:
    """Basis of the kernel of a linear map given on basis keys.

    ``images`` maps each domain key to its (sparse) image vector.  The kernel
    vectors are returned as sparse combinations of domain keys, in the order
    they are discovered (domain keys are processed sorted).
    """
    # echelon of images, each row carrying the domain combination producing it
    pivots: dict = {}
    result: list[dict] = []
    for key in sorted(images):
        row = _as_dict(images[key])
        combo = {key: Fraction(1)}
        heap = [k for k in row if k in pivots]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = row.get(k)
            if not c:
                continue
            prow, pcombo = pivots[k]
            for k2, v in prow.items():
                nv = row.get(k2, 0) - c * v
                if nv:
                    if k2 not in row and k2 in pivots:
                        heapq.heappush(heap, k2)
                    row[k2] = nv
                else:
                    row.pop(k2, None)
            add_into(combo, pcombo, -c)
        if not row:
            result.append(combo)
            continue
        p = min(row)
        inv = 1 / row[p]
        pivots[p] = ({k: v * inv for k, v in row.items()}, {k: v * inv for k, v in combo.items()})
    return result


class Solver:
    """Row echelon of labelled vectors that can express targets in terms of the labels."""

    def __init__(self):
        self.pivots: dict = {}

    def _reduce(self, vec):
        row = _as_dict(vec)
        combo: dict = {}
        heap = [k for k in row if k in self.pivots]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = row.get(k)
            if not c:
                continue
            prow, pcombo = self.pivots[k]
            for k2, v in prow.items():
                nv = row.get(k2, 0) - c * v
                if nv:
                    if k2 not in row and k2 in self.pivots:
                        heapq.heappush(heap, k2)
                    row[k2] = nv
                else:
                    row.pop(k2, None)
            add_into(combo, pcombo, -c)
        return row, combo

    def add(self, label, vec) -> dict | None:
        """Add ``vec`` under ``label``; if dependent, return the vanishing label combination."""
        row, combo = self._reduce(vec)
        add_into(combo, {label: Fraction(1)})
        if not row:
            return combo
        p = min(row)
        inv = 1 / row[p]
        self.pivots[p] = ({k: v * inv for k, v in row.items()}, {k: v * inv for k, v in combo.items()})
        return None

    def express(self, vec) -> dict | None:
        """Label combination equal to ``vec``, or None if outside the span."""
        row, combo = self._reduce(vec)
        if row:
            return None
        return {k: -v for k, v in combo.items()}


def intersection_basis(u_rows: Iterable, space: RowSpace) -> list[dict]:
    """Basis of span(u_rows) ∩ space, as explicit vectors.

    Residuals of the ``u_rows`` modulo ``space`` are computed; dependencies
    among residuals give intersection elements.
    """
    u_rows = [_as_dict(r) for r in u_rows]
    residuals = {i: space.reduce(r) for i, r in enumerate(u_rows)}
    out = []
    for combo in kernel(residuals):
        vec: dict = {}
        for i, c in combo.items():
            add_into(vec, u_rows[i], c)
        if vec:
            out.append(vec)
    return out


class UnionFind:
    """Disjoint sets over hashable items; used for spans of binomial rows ``a - b``."""

    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            nxt = parent.get(x, x)
            parent[x] = root
            x = nxt
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True
