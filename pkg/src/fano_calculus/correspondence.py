"""Formal correspondences on F x F and their action on tautological cycles.

A correspondence expression is a tree built from atoms, polynomial factors
in the pulled-back classes ``g1, c1`` (first factor) and ``g2, c2`` (second
factor), sums, scalings, compositions and transposes.  ``act`` evaluates
pushforward or pullback on a ``TautClassF`` using the cylinder tables.

Conventions: ``push(A, u) = pr2_*(A . pr1^* u)`` and
``pull(A, u) = pr1_*(A . pr2^* u)``; ``compose(A, B)`` means A after B.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra.polynomial import GradedPoly
from .tautological import (
    F_UNIT, O, TautClassF, Point, gamma_h2_pull, gamma_h_pull, I_star, pt,
)

__all__ = [
    "CORR_VARS", "PARAM_VARS", "ATOM_CODIM", "Atom", "PolyFactor", "Sum", "Scale",
    "Compose", "Transpose", "CorrExpr", "codim", "act", "push", "pull",
    "act_corr_on_point", "UnsupportedAction", "corr_poly", "atoms",
]

CORR_VARS = (("a", 0), ("g1", 1), ("g2", 1), ("c1", 2), ("c2", 2))
PARAM_VARS = (("a", 0),)

ATOM_CODIM = {
    "D": 4, "I": 2, "Gh": 3, "Gh2": 4, "Gphi": 4, "I1": 4, "I2": 4,
    "FxO": 4, "OxF": 4, "FxF": 0,
}


class UnsupportedAction(ValueError):
    """No pointwise action is modeled for this atom on this input."""


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if self.name not in ATOM_CODIM:
            raise ValueError(f"unknown correspondence atom {self.name!r}")


@dataclass(frozen=True)
class PolyFactor:
    """``poly . body`` with ``poly`` a GradedPoly over ``CORR_VARS``."""

    poly: GradedPoly
    body: "CorrExpr"

    def __post_init__(self):
        if self.poly.variables != CORR_VARS:
            raise ValueError("polynomial factor must use the variables a, g1, g2, c1, c2")


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class Scale:
    coeff: object  # Fraction or GradedPoly in the parameter a
    body: "CorrExpr"


@dataclass(frozen=True)
class Compose:
    left: "CorrExpr"
    right: "CorrExpr"


@dataclass(frozen=True)
class Transpose:
    body: "CorrExpr"


CorrExpr = Union[Atom, PolyFactor, Sum, Scale, Compose, Transpose]


def corr_poly(text_terms: dict | None = None) -> GradedPoly:
    """Build a polynomial over CORR_VARS from ``{exponent tuple: coeff}``."""
    return GradedPoly(CORR_VARS, text_terms or {})


def codim(e: CorrExpr) -> int:
    if isinstance(e, Atom):
        return ATOM_CODIM[e.name]
    if isinstance(e, PolyFactor):
        degs = {e.poly.weighted_degree(x) for x in e.poly.terms}
        if len(degs) > 1:
            raise ValueError("polynomial factor is not homogeneous")
        return codim(e.body) + (degs.pop() if degs else 0)
    if isinstance(e, Sum):
        cs = {codim(t) for t in e.terms}
        if len(cs) > 1:
            raise ValueError(f"sum mixes codimensions {sorted(cs)}")
        return cs.pop() if cs else 4
    if isinstance(e, Scale):
        return codim(e.body)
    if isinstance(e, Compose):
        return codim(e.left) + codim(e.right) - 4
    if isinstance(e, Transpose):
        return codim(e.body)
    raise TypeError(f"not a correspondence: {e!r}")


def atoms(e: CorrExpr) -> set[str]:
    if isinstance(e, Atom):
        return {e.name}
    if isinstance(e, Sum):
        return set().union(*(atoms(t) for t in e.terms)) if e.terms else set()
    if isinstance(e, Compose):
        return atoms(e.left) | atoms(e.right)
    return atoms(e.body)


def _param_coeff(c: Fraction, a_exp: int):
    if a_exp == 0:
        return c
    return GradedPoly(PARAM_VARS, {(a_exp,): c})


def _unit_coeff(u: TautClassF):
    return u.coefficient(("m", 0, 0))


def _atom_action(name: str, u: TautClassF, direction: str) -> TautClassF:
    if name == "D":
        return u
    if name == "I":
        return I_star(u)
    if name == "Gh":
        return gamma_h_pull(u)
    if name == "Gh2":
        return gamma_h2_pull(u)
    if name == "FxF":
        return F_UNIT.scale(u.degree()) if u.degree() else TautClassF()
    if name in ("FxO", "OxF"):
        to_point = (name == "FxO") == (direction == "push")
        if to_point:
            d = u.degree()
            return O.scale(d) if d else TautClassF()
        c = _unit_coeff(u)
        return F_UNIT.scale(c) if c else TautClassF()
    if name == "Gphi":
        return _graph_phi(u, direction)
    raise UnsupportedAction(f"no pointwise action modeled for {name}")


def _graph_phi(u: TautClassF, direction: str) -> TautClassF:
    out = TautClassF()
    for k, c in u.terms.items():
        if direction == "push" and k[0] == "pt":
            p = k[1]
            out = out + TautClassF({("pt", Point(p.name, p.iterates + 1)): c})
        elif k == ("o",):
            out = out + O.scale(c if direction == "push" else 16 * c)
        else:
            raise UnsupportedAction(f"no pointwise {direction} of Gphi modeled on this class")
    return out


def _monomial_class(i: int, j: int) -> TautClassF:
    return TautClassF.monomial(i, j)


def act(e: CorrExpr, u: TautClassF, direction: str = "push") -> TautClassF:
    if direction not in ("push", "pull"):
        raise ValueError("direction is 'push' or 'pull'")
    if isinstance(e, Atom):
        return _atom_action(e.name, u, direction)
    if isinstance(e, Sum):
        out = TautClassF()
        for t in e.terms:
            out = out + act(t, u, direction)
        return out
    if isinstance(e, Scale):
        return act(e.body, u, direction).scale(e.coeff)
    if isinstance(e, Transpose):
        return act(e.body, u, "pull" if direction == "push" else "push")
    if isinstance(e, Compose):
        if direction == "push":
            return act(e.left, act(e.right, u, "push"), "push")
        return act(e.right, act(e.left, u, "pull"), "pull")
    if isinstance(e, PolyFactor):
        out = TautClassF()
        for (ea, eg1, eg2, ec1, ec2), c in e.poly.terms.items():
            coeff = _param_coeff(c, ea)
            src = _monomial_class(eg1, ec1)
            dst = _monomial_class(eg2, ec2)
            if direction == "pull":
                src, dst = dst, src
            image = act(e.body, src * u, direction)
            if image:
                out = out + (dst * image).scale(coeff)
        return out
    raise TypeError(f"not a correspondence: {e!r}")


def push(e: CorrExpr, u: TautClassF) -> TautClassF:
    return act(e, u, "push")


def pull(e: CorrExpr, u: TautClassF) -> TautClassF:
    return act(e, u, "pull")


def act_corr_on_point(e: CorrExpr, direction: str = "push", point="l") -> TautClassF:
    """Action on the class of a single point ``pt[point]``."""
    return act(e, pt(point), direction)
