"""Built-in variety presentations."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .replicate import replicate_variety
from .terms import VarietyPresentation, parse_identity, parse_presentation

LSYM = "(x1*x2)*x3 - x1*(x2*x3) - (x2*x1)*x3 + x2*(x1*x3) = 0"
RCOM = "(x1*x2)*x3 - (x1*x3)*x2 = 0"
ASSOC = "(x1*x2)*x3 - x1*(x2*x3) = 0"
LCOM = "(x1*x2)*x3 - (x2*x1)*x3 = 0"
COMM = "x1*x2 - x2*x1 = 0"
SLS_OUTER = "((x1*x2)*x3)*x4 - ((x1*x3)*x2)*x4 = 0"
# (x, y∘z, u) - (y, x∘z, u) with (a,b,c) = (ab)c - a(bc)
SLS_INNER = "(x1*(x2*x3))*x4 - x1*((x2*x3)*x4) - (x2*(x1*x3))*x4 + x2*((x1*x3)*x4) = 0"

_SOURCES = {
    "lsym": [("left-symmetry", LSYM)],
    "nov": [("left-symmetry", LSYM), ("right-commutativity", RCOM)],
    "perm": [("associativity", ASSOC), ("left-commutativity", LCOM)],
    "sls": [("left-symmetry", LSYM), ("sls-outer", SLS_OUTER), ("sls-inner", SLS_INNER)],
    "com": [("commutativity", COMM), ("associativity", ASSOC)],
    "as": [("associativity", ASSOC)],
}

_DI = {"dilsym": "lsym", "dinov": "nov", "dicom": "com"}

BUILTIN_NAMES = tuple(_SOURCES) + tuple(_DI)


@lru_cache(maxsize=None)
def builtin(name: str) -> VarietyPresentation:
    if name in _SOURCES:
        idents = tuple(parse_identity(text, name=label) for label, text in _SOURCES[name])
        return VarietyPresentation(name, ("*",), idents)
    if name in _DI:
        return replicate_variety(builtin(_DI[name]), name)
    raise KeyError(f"unknown presentation {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def load_presentation(source: str) -> VarietyPresentation:
    """A built-in name or a path to an identity file."""
    if source in BUILTIN_NAMES:
        return builtin(source)
    path = Path(source)
    return parse_presentation(path.read_text(), path.stem)
