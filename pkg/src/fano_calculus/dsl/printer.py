"""ASCII pretty-printer; ``parse(to_text(e)) == e`` for every parsed tree."""

from __future__ import annotations

from fractions import Fraction

from .nodes import BinOp, Call, Indexed, Neg, Num, Pow, Sym, Trans

__all__ = ["to_text"]

_BINARY_PREC = {"+": 1, "-": 1, "*": 2, "@": 2}
_NEG_PREC = 3
_POSTFIX_PREC = 4
_ATOM_PREC = 5


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _BINARY_PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    if isinstance(node, Pow):
        return _POSTFIX_PREC
    return _ATOM_PREC


def _wrap(node, needs: bool) -> str:
    s = to_text(node)
    return f"({s})" if needs else s


def to_text(node) -> str:
    if isinstance(node, Num):
        v = Fraction(node.value)
        if v < 0:
            raise ValueError("negative literals are written with unary minus")
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Indexed):
        return f"{node.kind}[{node.label}]"
    if isinstance(node, BinOp):
        p = _BINARY_PREC[node.op]
        left = _wrap(node.left, _prec(node.left) < p)
        right = _wrap(node.right, _prec(node.right) <= p)
        return f"{left} {node.op} {right}"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _prec(node.operand) < _NEG_PREC)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _prec(node.base) < _POSTFIX_PREC)}^{node.exponent}"
    if isinstance(node, Trans):
        return f"tr({to_text(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({', '.join(to_text(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")
