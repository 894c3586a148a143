"""Evaluate parsed expressions with the tautological and correspondence engines.

Scalars are Fractions, or polynomials in the parameter ``a``.  Classes on F
and X are ``TautClassF`` and ``ClassX``.  Correspondences stay symbolic as
``CorrExpr`` trees; the factors ``g1, g2, c1, c2`` are polynomial multiples
of ``FxF``, and a product of correspondences is allowed only when one side
is such a pure polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra.polynomial import GradedPoly
from ..correspondence import (
    CORR_VARS, PARAM_VARS, ATOM_CODIM, Atom, Compose, PolyFactor, Scale, Sum, Transpose, act,
)
from ..tautological import (
    C, CX, F_UNIT, G, H, O, X_UNIT, XPT, line, phi, psi, pt, S,
)
from .nodes import BinOp, Call, Indexed, Neg, Num, Pow, Sym, Trans
from .parser import DSLError, parse

__all__ = ["EvaluationError", "evaluate", "evaluate_text", "format_value", "is_pure_poly"]


class EvaluationError(DSLError):
    pass


_CLASS_SYMBOLS = {
    "F": F_UNIT, "g": G, "c": C, "Cx": CX, "o": O,
    "X": X_UNIT, "h": H, "x": XPT,
}

_FXF = Atom("FxF")


def _factor(name: str) -> PolyFactor:
    return PolyFactor(GradedPoly.var(CORR_VARS, name), _FXF)


def is_pure_poly(e) -> bool:
    return isinstance(e, PolyFactor) and e.body == _FXF


def _is_scalar(v) -> bool:
    return isinstance(v, (Fraction, int)) or (isinstance(v, GradedPoly) and v.variables == PARAM_VARS)


def _is_corr(v) -> bool:
    return isinstance(v, (Atom, PolyFactor, Sum, Scale, Compose, Transpose))


def _lift_scalar(s) -> GradedPoly:
    if isinstance(s, GradedPoly):
        return s.rename(CORR_VARS)
    return GradedPoly.constant(CORR_VARS, s)


def _scale_corr(s, e):
    if isinstance(e, PolyFactor):
        return PolyFactor(e.poly * _lift_scalar(s), e.body)
    return Scale(s, e)


def _mul(l, r, span):
    if _is_scalar(l) and _is_scalar(r):
        return l * r
    if _is_corr(l) or _is_corr(r):
        if _is_scalar(l):
            return _scale_corr(l, r)
        if _is_scalar(r):
            return _scale_corr(r, l)
        if is_pure_poly(l) and isinstance(r, PolyFactor):
            return PolyFactor(l.poly * r.poly, r.body)
        if is_pure_poly(l):
            return PolyFactor(l.poly, r)
        if is_pure_poly(r):
            return _mul(r, l, span)
        raise EvaluationError("intersection of two correspondences is only modeled "
                              "when one factor is a polynomial in g1, g2, c1, c2", span)
    if _is_scalar(r):
        return l.scale(r)
    return l * r


def _add(l, r):
    if _is_corr(l):
        return Sum((l, r))
    return l + r


def _neg(v):
    if _is_corr(v):
        return _scale_corr(Fraction(-1), v)
    return -v


def _dispatch(node):
    if isinstance(node, Num):
        return Fraction(node.value)
    if isinstance(node, Sym):
        if node.name == "a":
            return GradedPoly.var(PARAM_VARS, "a")
        if node.name in _CLASS_SYMBOLS:
            return _CLASS_SYMBOLS[node.name]
        if node.name in ATOM_CODIM:
            return Atom(node.name)
        return _factor(node.name)
    if isinstance(node, Indexed):
        return {"S": S, "pt": pt, "line": line}[node.kind](node.label)
    if isinstance(node, Neg):
        return _neg(_dispatch(node.operand))
    if isinstance(node, Pow):
        base = _dispatch(node.base)
        if _is_corr(base):
            out = PolyFactor(GradedPoly.constant(CORR_VARS, 1), _FXF)
            for _ in range(node.exponent):
                out = _mul(out, base, node.span)
            return out
        if _is_scalar(base) and not isinstance(base, GradedPoly):
            return Fraction(base) ** node.exponent
        return base ** node.exponent
    if isinstance(node, Trans):
        return Transpose(_dispatch(node.operand))
    if isinstance(node, BinOp):
        l, r = _dispatch(node.left), _dispatch(node.right)
        if node.op == "+":
            return _add(l, r)
        if node.op == "-":
            return _add(l, _neg(r))
        if node.op == "*":
            return _mul(l, r, node.span)
        return Compose(l, r)
    if isinstance(node, Call):
        args = [_dispatch(a) for a in node.args]
        f = node.func
        if f in ("push", "pull"):
            return act(args[0], args[1], f)
        if f == "phi_*":
            return act(Atom("Gphi"), args[0], "push")
        if f == "phi^*":
            return act(Atom("Gphi"), args[0], "pull")
        if f == "Psi":
            return psi(args[0])
        if f == "Phi":
            return phi(args[0])
        if f == "deg":
            return args[0].degree()
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(node):
    """Value of a parsed expression.  Engine errors become ``EvaluationError``."""
    try:
        return _dispatch(node)
    except DSLError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise EvaluationError(str(exc), getattr(node, "span", None)) from exc


def evaluate_text(text: str):
    return evaluate(parse(text))


def format_value(v) -> str:
    return repr(v) if _is_corr(v) else str(v)
