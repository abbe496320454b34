"""From a Novikov dialgebra to a current dialgebra over a Novikov algebra.

For a Novikov dialgebra ``N`` (products ⊢, ⊣):

* ``N0 = span{a⊢b - a⊣b}`` is a two-sided ideal and ``Nbar = N/N0`` is Novikov;
* the split null extension ``Nhat = Nbar ⊕ N`` has products
  ``ā∘b̄ = (a⊢b)‾``, ``ā∘b = a⊢b``, ``a∘b̄ = a⊣b``, ``N∘N = 0``;
* over the coalgebra ``span{1, T}`` with ``ε(1) = 1``, ``ε(T) = 0``,
  ``(f⊗x)⊢(g⊗y) = ε(f) g⊗(x∘y)`` and ``(f⊗x)⊣(g⊗y) = ε(g) f⊗(x∘y)``;
* ``a ↦ 1⊗ā + T⊗a`` embeds ``N`` into ``Cur Nhat``.

Embedding ``Nhat`` into a commutative differential algebra is not attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .algebra import StructureAlgebra, Vector
from .identities import identity_witness, satisfies
from .linalg import RowSpace, add_into, rank
from .presentations import builtin


class NotDiNovError(ValueError):
    def __init__(self, identity, where, value):
        super().__init__(f"identity {identity} fails on basis tuple {where}")
        self.identity, self.where, self.value = identity, where, value


class ExtensionError(ArithmeticError):
    pass


@dataclass
class SplitExtension:
    source: StructureAlgebra  # N
    n0_basis: list  # echelon rows spanning N0
    section: list  # indices of N whose classes form a basis of Nbar
    algebra: StructureAlgebra  # Nhat; indices 0..m-1 are Nbar, m..m+n-1 are N

    @property
    def dims(self) -> dict:
        return {"N": self.source.dim, "N0": len(self.n0_basis), "Nbar": len(self.section),
                "Nhat": self.algebra.dim}

    def bar(self, v: Vector) -> Vector:
        """Class of ``v`` in Nbar, in Nhat coordinates."""
        red = RowSpace(self.n0_basis).reduce(v)
        pos = {k: p for p, k in enumerate(self.section)}
        return {pos[k]: c for k, c in red.items()}

    def lift(self, v: Vector) -> Vector:
        """``v`` in N as an element of Nhat."""
        m = len(self.section)
        return {m + k: c for k, c in v.items()}


def _dicheck(n: StructureAlgebra) -> None:
    if not n.is_dialgebra:
        raise ValueError("input needs two products (a product2 table)")
    bad = satisfies(n, builtin("dinov"))
    if bad is not None:
        raise NotDiNovError(*bad)


def build_split_extension(n: StructureAlgebra, verify: bool = True) -> SplitExtension:
    _dicheck(n)
    dim = n.dim
    E = [{i: 1} for i in range(dim)]
    n0 = RowSpace()
    for i in range(dim):
        for j in range(dim):
            diff = dict(n.vdash(E[i], E[j]))
            add_into(diff, n.dashv(E[i], E[j]), -1)
            n0.add(diff)
    n0_basis = n0.basis()
    # N0 is an ideal, annihilated where the actions of Nbar need it to be
    for r in n0_basis:
        for x in E:
            for v in (n.vdash(x, r), n.vdash(r, x), n.dashv(x, r), n.dashv(r, x)):
                if not n0.contains(v):
                    raise ExtensionError("N0 is not a two-sided ideal")
            if n.vdash(r, x) or n.dashv(x, r):
                raise ExtensionError("N0 does not act trivially on N")
    section = [k for k in range(dim) if k not in n0.pivots]
    m = len(section)
    pos = {k: p for p, k in enumerate(section)}

    def bar(v):
        return {pos[k]: c for k, c in n0.reduce(v).items()}

    def lift(v):
        return {m + k: c for k, c in v.items()}

    def prod(i, j):
        if i < m and j < m:
            return bar(n.vdash(E[section[i]], E[section[j]]))
        if i < m:
            return lift(n.vdash(E[section[i]], E[j - m]))
        if j < m:
            return lift(n.dashv(E[i - m], E[section[j]]))
        return {}

    names = [f"bar({n.basis[k]})" for k in section] + list(n.basis)
    hat_alg = StructureAlgebra.from_function(names, prod, name=f"hat({n.name})" if n.name else "hat")
    ext = SplitExtension(n, n0_basis, section, hat_alg)
    if verify:
        bad = satisfies(hat_alg, builtin("nov"))
        if bad is not None:
            raise ExtensionError(f"split extension fails {bad[0]} on {bad[1]}")
    return ext


class CurElement(NamedTuple):
    """``1⊗one + T⊗t`` with ``one``, ``t`` in Nhat."""
    one: Vector
    t: Vector


def cur_products(x: CurElement, y: CurElement, ext: SplitExtension) -> tuple[CurElement, CurElement]:
    """``(x⊢y, x⊣y)``."""
    mul = ext.algebra.mul
    return (CurElement(mul(x.one, y.one), mul(x.one, y.t)),
            CurElement(mul(x.one, y.one), mul(x.t, y.one)))


def cur_algebra(ext: SplitExtension) -> StructureAlgebra:
    """Cur Nhat as a dialgebra; basis ``1⊗b`` then ``T⊗b``."""
    h = ext.algebra
    d = h.dim

    def split(i):
        return CurElement({i: 1}, {}) if i < d else CurElement({}, {i - d: 1})

    def join(c: CurElement) -> Vector:
        out = dict(c.one)
        out.update({d + k: v for k, v in c.t.items()})
        return out

    def vd(i, j):
        return join(cur_products(split(i), split(j), ext)[0])

    def dv(i, j):
        return join(cur_products(split(i), split(j), ext)[1])

    names = [f"1⊗{b}" for b in h.basis] + [f"T⊗{b}" for b in h.basis]
    return StructureAlgebra.from_function(names, vd, dv, name=f"Cur({h.name})")


def hat_embed(a: Vector, ext: SplitExtension) -> CurElement:
    return CurElement(ext.bar(a), ext.lift(a))


@dataclass
class CurCertificate:
    dims: dict
    nhat_novikov: bool
    cur_identities: list  # [(identity text, passed)]
    hat_rank: int
    hat_vdash: bool
    hat_dashv: bool

    @property
    def passed(self) -> bool:
        return (self.nhat_novikov and all(ok for _, ok in self.cur_identities)
                and self.hat_rank == self.dims["N"] and self.hat_vdash and self.hat_dashv)


def verify_cur(n: StructureAlgebra) -> CurCertificate:
    ext = build_split_extension(n, verify=False)
    nov_ok = satisfies(ext.algebra, builtin("nov")) is None
    cur = cur_algebra(ext)
    per_ident = [(str(f), identity_witness(f, cur) is None) for f in builtin("dinov").identities]
    d = ext.algebra.dim
    hats = [hat_embed({i: 1}, ext) for i in range(n.dim)]
    hat_rank = rank([dict(h.one) | {d + k: v for k, v in h.t.items()} for h in hats])
    ok_vd = ok_dv = True
    for i in range(n.dim):
        for j in range(n.dim):
            vd, dv = cur_products(hats[i], hats[j], ext)
            ok_vd &= _same(vd, hat_embed(n.vdash({i: 1}, {j: 1}), ext))
            ok_dv &= _same(dv, hat_embed(n.dashv({i: 1}, {j: 1}), ext))
    return CurCertificate(ext.dims, nov_ok, per_ident, hat_rank, ok_vd, ok_dv)


def _same(x: CurElement, y: CurElement) -> bool:
    def clean(v):
        return {k: c for k, c in v.items() if c}
    return clean(x.one) == clean(y.one) and clean(x.t) == clean(y.t)


__all__ = [
    "NotDiNovError", "ExtensionError", "SplitExtension", "CurElement", "CurCertificate",
    "build_split_extension", "cur_products", "cur_algebra", "hat_embed", "verify_cur",
]
