"""Expression tree for the ``fano`` expression language.

Nodes are frozen dataclasses.  Every node carries a source ``span``
``(line, column)`` that is ignored by equality, so a parsed tree compares
equal to the tree obtained by re-parsing its printed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

Span = Optional[Tuple[int, int]]


@dataclass(frozen=True)
class Num:
    value: Fraction
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sym:
    name: str
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Indexed:
    """``S[l]``, ``pt[l]`` or ``line[l]``."""

    kind: str
    label: str
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * @
    left: "Expr"
    right: "Expr"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Trans:
    operand: "Expr"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    span: Span = field(default=None, compare=False, repr=False)


Expr = "Num | Sym | Indexed | BinOp | Neg | Pow | Trans | Call"
