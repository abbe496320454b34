"""Dialgebra presentations obtained by replicating one-product identities.

In each monomial of a multilinear identity ``f`` and for a fixed variable
``x_i``, a product node becomes ``-|`` when ``x_i`` sits in its left subtree
and ``|-`` when it sits in its right subtree.  Subtrees not containing ``x_i``
hang off the bar side of their parent node; by the 0-identities their internal
products are irrelevant, and we write them with the parent's symbol.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .linalg import LinComb
from .terms import (
    DI_PRODUCTS, Identity, VarietyPresentation, format_term, leaves, parse_identity,
    relabel, set_ops,
)

VDASH, DASHV = "|-", "-|"


def zero_identities() -> list[Identity]:
    return [
        parse_identity("(x1-|x2)|-x3 - (x1|-x2)|-x3 = 0"),
        parse_identity("x1-|(x2|-x3) - x1-|(x2-|x3) = 0"),
    ]


def _replicate_term(t, i: int):
    if isinstance(t, int):
        return t
    _, left, right = t
    if i in leaves(left):
        return (DASHV, _replicate_term(left, i), set_ops(right, DASHV))
    return (VDASH, set_ops(left, VDASH), _replicate_term(right, i))


def replicate(f: Identity, i: int) -> Identity:
    """Replicate ``f`` with the dashes pointing at ``x_i``."""
    if not 1 <= i <= f.arity:
        raise ValueError(f"variable index {i} out of range 1..{f.arity}")
    if f.ops - {"*"}:
        raise ValueError("replication needs an identity in the single product '*'")
    body = LinComb((_replicate_term(t, i), c) for t, c in f.body.items())
    return Identity(f.arity, body, f"{f.name}_{i}" if f.name else "")


def normalize_di_term(t):
    """Rewrite the bar-side subtrees of a dialgebra monomial to the parent symbol."""
    if isinstance(t, int):
        return t
    op, left, right = t
    if op == VDASH:
        return (op, set_ops(left, VDASH), normalize_di_term(right))
    return (op, normalize_di_term(left), set_ops(right, DASHV))


def normalize_di_identity(f: Identity) -> Identity:
    body = LinComb((normalize_di_term(t), c) for t, c in f.body.items())
    return Identity(f.arity, body, f.name)


def collapse(f: Identity) -> Identity:
    """Forget the dashes: both products become ``*``."""
    body = LinComb((set_ops(t, "*"), c) for t, c in f.body.items())
    return Identity(f.arity, body, f.name)


def canonical_key(f: Identity):
    """Key identifying ``f`` up to variable renaming, nonzero scaling and 0-identities."""
    f = normalize_di_identity(f)
    if f.body.is_zero():
        return ()
    best = None
    n = f.arity
    for perm in permutations(range(1, n + 1)):
        mapping = {k + 1: perm[k] for k in range(n)}
        items = sorted((format_term(relabel(t, mapping)), c) for t, c in f.body.items())
        lead = items[0][1]
        key = tuple((s, str(Fraction(c) / lead)) for s, c in items)
        if best is None or key < best:
            best = key
    return best


def dedupe(identities) -> list[Identity]:
    seen = set()
    out = []
    for f in identities:
        k = canonical_key(f)
        if not k or k in seen:
            continue
        seen.add(k)
        out.append(f)
    return out


def replicate_variety(v: VarietyPresentation, name: str | None = None) -> VarietyPresentation:
    if tuple(v.ops) != ("*",):
        raise ValueError("replication is defined for one binary product")
    replicated = [replicate(f, i) for f in v.identities for i in range(1, f.arity + 1)]
    # the 0-identities vanish under the normal form, so they bypass deduplication
    idents = zero_identities() + dedupe(replicated)
    return VarietyPresentation(name or f"di{v.name}", DI_PRODUCTS, tuple(idents))
