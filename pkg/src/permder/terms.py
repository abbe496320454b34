"""Magma terms, multilinear identities, and the identity text format.

A term is either a variable index ``i`` (an ``int`` >= 1) or a tuple
``(op, left, right)`` with ``op`` one of ``"*"``, ``"|-"`` (⊢), ``"-|"`` (⊣).

Identity text syntax, one statement per line::

    ((x1*x2)*x3)*x4 - ((x1*x3)*x2)*x4 = 0
    (x1-|x2)|-x3 = (x1|-x2)|-x3
    2 x1*x2 - 1/2 x2*x1 = 0

Products must be fully parenthesized except at the top of a summand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .linalg import LinComb, parse_scalar

OPS = ("*", "|-", "-|")
ONE_PRODUCT = ("*",)
DI_PRODUCTS = ("|-", "-|")


class IdentityParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        loc = f"line {line}, column {col}: " if line else ""
        super().__init__(loc + msg)


class NotMultilinear(ValueError):
    pass


# -- term helpers -----------------------------------------------------------

def leaves(t) -> list[int]:
    if isinstance(t, int):
        return [t]
    return leaves(t[1]) + leaves(t[2])


def arity(t) -> int:
    return 1 if isinstance(t, int) else arity(t[1]) + arity(t[2])


def term_ops(t) -> set:
    if isinstance(t, int):
        return set()
    return {t[0]} | term_ops(t[1]) | term_ops(t[2])


def relabel(t, mapping):
    """Replace leaf ``i`` by ``mapping[i]`` (which may itself be a term)."""
    if isinstance(t, int):
        return mapping[t]
    return (t[0], relabel(t[1], mapping), relabel(t[2], mapping))


def set_ops(t, op):
    if isinstance(t, int):
        return t
    return (op, set_ops(t[1], op), set_ops(t[2], op))


def is_multilinear(t, n: int | None = None) -> bool:
    ls = leaves(t)
    n = len(ls) if n is None else n
    return sorted(ls) == list(range(1, n + 1))


def format_term(t, top: bool = True) -> str:
    if isinstance(t, int):
        return f"x{t}"
    s = f"{format_term(t[1], False)}{t[0]}{format_term(t[2], False)}"
    return s if top else f"({s})"


def shapes(n: int) -> list:
    """Binary tree shapes with ``n`` leaves (leaf = ``None``), left split size ascending."""
    if n == 1:
        return [None]
    out = []
    for k in range(1, n):
        for left in shapes(k):
            for right in shapes(n - k):
                out.append((left, right))
    return out


def _internal_nodes(shape) -> int:
    return 0 if shape is None else 1 + _internal_nodes(shape[0]) + _internal_nodes(shape[1])


def _fill(shape, labels, ops):
    """Instantiate ``shape`` with leaves from ``labels`` and ops in preorder."""
    li = iter(labels)
    oi = iter(ops)

    def go(s):
        if s is None:
            return next(li)
        op = next(oi)
        left = go(s[0])
        return (op, left, go(s[1]))

    return go(shape)


def multilinear_monomials(n: int, ops=ONE_PRODUCT, labels=None) -> list:
    """All multilinear monomials on ``labels`` (default ``1..n``).

    Order: tree shape, then op assignment, then labelings lexicographically.
    """
    labels = list(labels) if labels is not None else list(range(1, n + 1))
    out = []
    for shape in shapes(len(labels)):
        for opchoice in product(ops, repeat=_internal_nodes(shape)):
            for perm in permutations(labels):
                out.append(_fill(shape, perm, opchoice))
    return out


# -- identities -------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    """A multilinear identity ``body = 0``; ``body`` is a LinComb of terms."""

    arity: int
    body: LinComb
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for t in self.body:
            if not is_multilinear(t, self.arity):
                raise NotMultilinear(f"term {format_term(t)} is not multilinear in x1..x{self.arity}")

    @classmethod
    def from_terms(cls, pairs, name: str = "") -> "Identity":
        body = LinComb(pairs)
        n = max((arity(t) for t in body), default=0)
        return cls(n, body, name)

    @property
    def ops(self) -> set:
        out = set()
        for t in self.body:
            out |= term_ops(t)
        return out

    def is_trivial(self) -> bool:
        return self.body.is_zero()

    def __str__(self) -> str:
        return format_identity(self)


def format_identity(ident: Identity) -> str:
    if ident.body.is_zero():
        return "0 = 0"
    parts = []
    for t, c in ident.body.items():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        coef = "" if a == 1 else f"{a} "
        parts.append(f"{sign} {coef}{format_term(t)}")
    s = " ".join(parts)
    s = s[2:] if s.startswith("+ ") else "-" + s[2:]
    return s + " = 0"


@dataclass(frozen=True)
class VarietyPresentation:
    name: str
    ops: tuple
    identities: tuple

    def __post_init__(self):
        for ident in self.identities:
            extra = ident.ops - set(self.ops)
            if extra:
                raise ValueError(f"identity {ident} uses ops {sorted(extra)} outside {self.ops}")

    def key(self):
        return (self.ops, tuple(i.body for i in self.identities))

    def to_text(self) -> str:
        lines = [f"# {self.name}"] if self.name else []
        lines += [format_identity(i) for i in self.identities]
        return "\n".join(lines) + "\n"


# -- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+)|(?P<op>\|-|-\||\*)|(?P<sym>[()+\-=]))"
)


def _tokenize(text: str, line: int):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise IdentityParseError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, line: int):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise IdentityParseError(msg, self.line, tok[2])

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            self.fail(f"expected {value or kind}, got {tok[1] or 'end of line'!r}", tok)
        return tok

    def factor(self):
        tok = self.peek()
        if tok[0] == "var":
            self.take()
            return int(tok[1][1:])
        if tok[0] == "sym" and tok[1] == "(":
            self.take()
            t = self.term()
            self.expect("sym", ")")
            return t
        self.fail(f"expected variable or '(', got {tok[1] or 'end of line'!r}")

    def term(self):
        left = self.factor()
        if self.peek()[0] == "op":
            op = self.take()[1]
            right = self.factor()
            if self.peek()[0] == "op":
                self.fail("ambiguous product: add parentheses")
            return (op, left, right)
        return left

    def side(self) -> dict:
        acc: dict = {}
        sign = 1
        first = True
        while True:
            tok = self.peek()
            if tok[0] == "sym" and tok[1] in "+-":
                self.take()
                sign = 1 if tok[1] == "+" else -1
            elif not first:
                break
            coef = Fraction(1)
            if self.peek()[0] == "num":
                ntok = self.take()
                coef = parse_scalar(ntok[1])
                nxt = self.peek()
                if nxt[0] in ("end",) or (nxt[0] == "sym" and nxt[1] in "+-=)"):
                    if coef != 0:
                        self.fail("nonzero constant in identity", ntok)
                    first = False
                    sign = 1
                    continue
            t = self.term()
            acc[t] = acc.get(t, 0) + sign * coef
            sign = 1
            first = False
        return acc

    def statement(self) -> dict:
        lhs = self.side()
        if self.peek()[0] == "sym" and self.peek()[1] == "=":
            self.take()
            rhs = self.side()
            for t, c in rhs.items():
                lhs[t] = lhs.get(t, 0) - c
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return lhs


def parse_identity(text: str, line: int = 1, name: str = "") -> Identity:
    body = _Parser(text, line).statement()
    lc = LinComb(body)
    n = max((arity(t) for t in body), default=0)
    for t in body:
        if not is_multilinear(t, n):
            raise IdentityParseError(f"term {format_term(t)} is not multilinear in x1..x{n}", line, 1)
    return Identity(n, lc, name)


def parse_identities(text: str) -> list[Identity]:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0]
        for piece in stmt.split(";"):
            if piece.strip():
                out.append(parse_identity(piece, ln))
    return out


def parse_presentation(text: str, name: str = "") -> VarietyPresentation:
    idents = parse_identities(text)
    used = set()
    for i in idents:
        used |= i.ops
    ops = ONE_PRODUCT if used <= {"*"} else DI_PRODUCTS
    if "*" in used and used & set(DI_PRODUCTS):
        raise IdentityParseError("identity file mixes '*' with dialgebra products")
    return VarietyPresentation(name, ops, tuple(idents))
