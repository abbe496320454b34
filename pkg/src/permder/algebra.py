"""Finite-dimensional algebras over Q given by structure constants.

``product[i][j]`` is the sparse coordinate vector ``{k: c}`` of ``e_i e_j``.
An algebra with ``product2`` is a dialgebra: ``product`` is ⊢ and ``product2``
is ⊣.

File format (JSON)::

    {"dim": 2, "basis": ["e1", "e2"],
     "product": [[["1", "0"], ...], ...],     # n x n arrays of n scalar strings
     "product2": ...}                          # optional
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .linalg import add_into, exact, format_scalar, kernel, parse_scalar

Vector = dict  # sparse {index: Fraction}


class AlgebraFormatError(ValueError):
    pass


class StructureAlgebra:
    def __init__(self, basis: Sequence[str], product, product2=None, name: str = ""):
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        if len(set(self.basis)) != self.dim:
            raise AlgebraFormatError("duplicate basis names")
        self.product = _freeze_table(product, self.dim)
        self.product2 = _freeze_table(product2, self.dim) if product2 is not None else None
        self.name = name

    # -- basic structure ---------------------------------------------------

    @property
    def is_dialgebra(self) -> bool:
        return self.product2 is not None

    @property
    def tables(self) -> dict:
        if self.product2 is None:
            return {"*": self.product}
        return {"|-": self.product, "-|": self.product2}

    def table(self, op: str):
        try:
            return self.tables[op]
        except KeyError:
            raise ValueError(f"algebra has no product {op!r}") from None

    def mul(self, u: Vector, v: Vector, op: str | None = None) -> Vector:
        tab = self.product if op is None else self.table(op)
        acc: dict = {}
        for i, a in u.items():
            row = tab[i]
            for j, b in v.items():
                cij = row[j]
                if cij:
                    add_into(acc, cij, a * b)
        return acc

    def vdash(self, u: Vector, v: Vector) -> Vector:
        return self.mul(u, v, "|-" if self.is_dialgebra else "*")

    def dashv(self, u: Vector, v: Vector) -> Vector:
        return self.mul(u, v, "-|")

    def e(self, i: int) -> Vector:
        return {i: Fraction(1)}

    def basis_index(self, name: str) -> int:
        return self.basis.index(name)

    def element(self, text_or_map) -> Vector:
        """Vector from ``{name: coeff}``."""
        return {self.basis_index(k): Fraction(c) for k, c in dict(text_or_map).items() if c}

    def __eq__(self, other) -> bool:
        return (isinstance(other, StructureAlgebra) and self.basis == other.basis
                and self.product == other.product and self.product2 == other.product2)

    def __repr__(self) -> str:
        kind = "dialgebra" if self.is_dialgebra else "algebra"
        return f"<StructureAlgebra {self.name or kind} dim={self.dim}>"

    # -- constructions -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int, name: str = "zero") -> "StructureAlgebra":
        return cls([f"e{i + 1}" for i in range(dim)], [[{}] * dim for _ in range(dim)], name=name)

    @classmethod
    def from_function(cls, basis, fn, fn2=None, name: str = "") -> "StructureAlgebra":
        n = len(basis)
        prod = [[fn(i, j) for j in range(n)] for i in range(n)]
        prod2 = [[fn2(i, j) for j in range(n)] for i in range(n)] if fn2 else None
        return cls(basis, prod, prod2, name)

    def change_basis(self, S, names=None) -> "StructureAlgebra":
        """Algebra in the new basis ``f_i = sum_j S[i][j] e_j``."""
        n = self.dim
        S = [[Fraction(x) for x in row] for row in S]
        Sinv = inverse(S)
        rows = [{j: S[i][j] for j in range(n) if S[i][j]} for i in range(n)]

        def to_new(v: Vector) -> Vector:
            out: dict = {}
            for a, c in v.items():
                add_into(out, {k: Sinv[a][k] for k in range(n) if Sinv[a][k]}, c)
            return out

        def build(op):
            return [[to_new(self.mul(rows[i], rows[j], op)) for j in range(n)] for i in range(n)]

        names = names or [f"f{i + 1}" for i in range(n)]
        if self.is_dialgebra:
            return StructureAlgebra(names, build("|-"), build("-|"), self.name)
        return StructureAlgebra(names, build(None), None, self.name)

    def with_product(self, fn, fn2=None, name: str | None = None) -> "StructureAlgebra":
        """New algebra on the same basis with products computed from vectors."""
        n = self.dim
        prod = [[fn(self.e(i), self.e(j)) for j in range(n)] for i in range(n)]
        prod2 = [[fn2(self.e(i), self.e(j)) for j in range(n)] for i in range(n)] if fn2 else None
        return StructureAlgebra(self.basis, prod, prod2, self.name if name is None else name)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        d = {"dim": self.dim, "basis": list(self.basis), "product": _table_strings(self.product, self.dim)}
        if self.product2 is not None:
            d["product2"] = _table_strings(self.product2, self.dim)
        return d

    def dumps(self) -> str:
        """Deterministic text rendering (one row of the product tensor per line)."""
        lines = ["{", f'  "dim": {self.dim},', f'  "basis": {json.dumps(list(self.basis))},']
        tabs = [("product", self.product)]
        if self.product2 is not None:
            tabs.append(("product2", self.product2))
        for t, (key, tab) in enumerate(tabs):
            lines.append(f'  "{key}": [')
            strs = _table_strings(tab, self.dim)
            for i, row in enumerate(strs):
                comma = "," if i < self.dim - 1 else ""
                lines.append("    " + json.dumps(row, separators=(", ", ": ")) + comma)
            lines.append("  ]" + ("," if t < len(tabs) - 1 else ""))
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d: dict, name: str = "") -> "StructureAlgebra":
        if not isinstance(d, dict):
            raise AlgebraFormatError("algebra file must hold a JSON object")
        try:
            dim = d["dim"]
            basis = d["basis"]
            product = d["product"]
        except KeyError as exc:
            raise AlgebraFormatError(f"missing field {exc.args[0]!r}") from None
        if not isinstance(dim, int) or dim < 0:
            raise AlgebraFormatError("dim must be a nonnegative integer")
        if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
            raise AlgebraFormatError("basis must be a list of dim names")
        prod = _parse_table(product, dim, "product")
        prod2 = _parse_table(d["product2"], dim, "product2") if "product2" in d else None
        return cls(basis, prod, prod2, name)

    @classmethod
    def loads(cls, text: str, name: str = "") -> "StructureAlgebra":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(d, name)


def _freeze_table(tab, n: int):
    if len(tab) != n or any(len(row) != n for row in tab):
        raise AlgebraFormatError("ragged product tensor")
    return tuple(tuple({k: exact(c) for k, c in sorted(dict(v).items()) if c} for v in row) for row in tab)


def _table_strings(tab, n: int):
    return [[[format_scalar(tab[i][j].get(k, 0)) for k in range(n)] for j in range(n)] for i in range(n)]


def _parse_table(raw, n: int, key: str):
    if not isinstance(raw, list) or len(raw) != n:
        raise AlgebraFormatError(f"{key}: expected {n} rows")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise AlgebraFormatError(f"{key}[{i}]: ragged product tensor")
        out_row = []
        for j, vec in enumerate(row):
            if not isinstance(vec, list) or len(vec) != n:
                raise AlgebraFormatError(f"{key}[{i}][{j}]: ragged product tensor")
            coords = {}
            for k, s in enumerate(vec):
                if not isinstance(s, str):
                    raise AlgebraFormatError(f"{key}[{i}][{j}][{k}]: scalars must be strings")
                try:
                    c = parse_scalar(s)
                except ValueError as exc:
                    raise AlgebraFormatError(f"{key}[{i}][{j}][{k}]: {exc}") from None
                if c:
                    coords[k] = c
            out_row.append(coords)
        out.append(out_row)
    return out


def load_algebra(path) -> StructureAlgebra:
    p = Path(path)
    return StructureAlgebra.loads(p.read_text(), p.stem)


def save_algebra(a: StructureAlgebra, path) -> None:
    Path(path).write_text(a.dumps())


def inverse(S):
    """Exact inverse of a square matrix (list of rows); raises on singular input."""
    n = len(S)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(S)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def derivations(a: StructureAlgebra, op: str | None = None) -> list[list[list[Fraction]]]:
    """Basis of the derivation space of one product, as matrices ``D[i][k]`` (d e_i = sum_k D[i][k] e_k)."""
    n = a.dim
    tab = a.product if op is None else a.table(op)
    images: dict = {(i, k): {} for i in range(n) for k in range(n)}
    for x in range(n):
        for y in range(n):
            # d(e_x e_y) - d(e_x) e_y - e_x d(e_y), coefficient of unknown D[i][k]
            for i, c in tab[x][y].items():
                for k in range(n):
                    add_into(images[(i, k)], {(x, y, k): c})
            for k in range(n):
                add_into(images[(x, k)], {(x, y, l): -c for l, c in tab[k][y].items()})
                add_into(images[(y, k)], {(x, y, l): -c for l, c in tab[x][k].items()})
    out = []
    for combo in kernel(images):
        D = [[Fraction(0)] * n for _ in range(n)]
        for (i, k), c in combo.items():
            D[i][k] = c
        out.append(D)
    return out


def apply_matrix(D, v: Vector) -> Vector:
    out: dict = {}
    for i, c in v.items():
        add_into(out, {k: x for k, x in enumerate(D[i]) if x}, c)
    return out
