"""Free differential Perm-algebra on generators x^(n).

A Perm monomial is a sorted prefix of letters followed by a distinguished last
letter; this is the normal form modulo ``xyz = yxz``.  Letters are
``(symbol, order)`` pairs meaning the ``order``-th derivative of ``symbol``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import NamedTuple

from .linalg import LinComb, add_into, bilinear

DiffGen = tuple  # (symbol: str, order: int)


def gen(symbol: str, order: int = 0) -> DiffGen:
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    return (symbol, order)


def letter_weight(g: DiffGen) -> int:
    return g[1] - 1


class PermMonomial(NamedTuple):
    prefix: tuple
    last: DiffGen

    @classmethod
    def make(cls, prefix, last) -> "PermMonomial":
        return cls(tuple(sorted(prefix)), last)

    def letters(self) -> tuple:
        return self.prefix + (self.last,)

    def __str__(self) -> str:
        pre = " ".join(format_letter(g) for g in self.prefix)
        return f"[{pre}{' ' if pre else ''}| {format_letter(self.last)}]"


class CommMonomial(tuple):
    """Sorted tuple of letters."""

    def __new__(cls, letters=()):
        return super().__new__(cls, sorted(letters))

    def __str__(self) -> str:
        return "{" + " ".join(format_letter(g) for g in self) + "}"


PermPoly = LinComb
CommPoly = LinComb


def format_letter(g: DiffGen) -> str:
    sym, n = g
    if n <= 2:
        return sym + "'" * n
    return f"{sym}^({n})"


_LETTER_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^\((\d+)\)|('*))$")


def parse_letter(text: str) -> DiffGen:
    m = _LETTER_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed letter {text!r}")
    order = int(m.group(2)) if m.group(2) is not None else len(m.group(3) or "")
    return (m.group(1), order)


def parse_perm_monomial(text: str) -> PermMonomial:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")) or "|" not in t:
        raise ValueError(f"malformed Perm monomial {text!r}")
    pre, last = t[1:-1].split("|")
    return PermMonomial.make([parse_letter(p) for p in pre.split()], parse_letter(last))


def format_poly(f: LinComb) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.sorted_items():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        coef = "" if a == 1 else f"{a} "
        parts.append(f"{sign} {coef}{m}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def generator(symbol: str, order: int = 0) -> LinComb:
    return LinComb.basis(PermMonomial((), (symbol, order)))


def weight(m) -> int:
    letters = m.letters() if isinstance(m, PermMonomial) else m
    return sum(g[1] - 1 for g in letters)


def _mul_mono(m1: PermMonomial, m2: PermMonomial) -> PermMonomial:
    return PermMonomial(tuple(sorted(m1.prefix + (m1.last,) + m2.prefix)), m2.last)


def perm_mul(f: LinComb, g: LinComb) -> LinComb:
    return bilinear(f, g, _mul_mono)


def _derive_mono(m: PermMonomial) -> LinComb:
    acc: dict = {}
    pre = m.prefix
    for i, (s, n) in enumerate(pre):
        new = PermMonomial(tuple(sorted(pre[:i] + ((s, n + 1),) + pre[i + 1:])), m.last)
        add_into(acc, {new: Fraction(1)})
    s, n = m.last
    add_into(acc, {PermMonomial(pre, (s, n + 1)): Fraction(1)})
    return LinComb._raw(acc)


def derive(f: LinComb) -> LinComb:
    return f.map_basis(_derive_mono)


def derived_product(f: LinComb, g: LinComb) -> LinComb:
    """``f ∘ g = f · d(g)``."""
    return perm_mul(f, derive(g))


def dialgebra_products(f: LinComb, g: LinComb) -> tuple[LinComb, LinComb]:
    """``(f ⊢ g, f ⊣ g) = (f·d(g), d(g)·f)``."""
    dg = derive(g)
    return perm_mul(f, dg), perm_mul(dg, f)


def vdash(f: LinComb, g: LinComb) -> LinComb:
    return perm_mul(f, derive(g))


def dashv(f: LinComb, g: LinComb) -> LinComb:
    return perm_mul(derive(g), f)


def abelianize(f: LinComb) -> LinComb:
    return f.map_basis(lambda m: CommMonomial(m.letters()))


def comm_mul(f: LinComb, g: LinComb) -> LinComb:
    return bilinear(f, g, lambda a, b: CommMonomial(a + b))


def tau(t, names=None) -> LinComb:
    """Evaluate a one-product magma term with ``∘`` read as the derived product.

    Leaves are variable indices ``i`` mapped to generator ``x{i}`` unless
    ``names`` supplies the symbols.
    """
    if isinstance(t, int):
        return generator(names[t] if names else f"x{t}")
    _, left, right = t
    return derived_product(tau(left, names), tau(right, names))


def enumerate_sls_basis(n: int, multilinear: bool = True, symbols=None) -> list[PermMonomial]:
    """Weight -1 monomials in ``n`` generators whose last letter has order > 0.

    With ``multilinear`` each generator occurs exactly once; otherwise all
    degree-``n`` monomials over the ``n`` generators are listed.  For ``n = 1``
    the generator itself is returned.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    syms = list(symbols) if symbols else [f"x{i}" for i in range(1, n + 1)]
    if n == 1:
        return [PermMonomial((), (syms[0], 0))]
    out = set()
    if multilinear:
        word_sets = [tuple(syms)]
    else:
        word_sets = list(combinations_with_replacement(syms, n))
    for letters in word_sets:
        # orders sum to n - 1 so that the weight is -1
        for orders in _compositions(n - 1, n):
            for li in range(n):
                if orders[li] == 0:
                    continue
                last = (letters[li], orders[li])
                prefix = [(letters[k], orders[k]) for k in range(n) if k != li]
                out.add(PermMonomial.make(prefix, last))
    return sorted(out)


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_weight_comm_monomials(n: int) -> list[CommMonomial]:
    """Multilinear weight -1 monomials of the commutative differential algebra."""
    syms = [f"x{i}" for i in range(1, n + 1)]
    return sorted(CommMonomial(zip(syms, orders)) for orders in _compositions(n - 1, n))


__all__ = [
    "PermMonomial", "CommMonomial", "gen", "generator", "weight", "perm_mul", "derive",
    "derived_product", "dialgebra_products", "vdash", "dashv", "abelianize", "comm_mul",
    "tau", "enumerate_sls_basis", "format_letter", "parse_letter", "parse_perm_monomial",
    "format_poly", "letter_weight", "enumerate_weight_comm_monomials",
]
