"""Chern class shadow of the key correspondence identity for the Voisin map.

The identity expresses ``Gphi + I1 + I2`` as ``4 D`` plus polynomial
multiples of ``I``, ``Gh`` and ``Gh2``.  Its coefficients come from the
second Chern class of a rank-2 bundle ``(N+)^dual (x) N`` on the incidence
variety, written in the variables ``g1t, g2t, h`` and the parameter ``a``
(the twist of the positive subbundle).  Powers of ``h`` decide which atom
a coefficient multiplies: ``h^0 -> I``, ``h^1 -> Gh``, ``h^2 -> Gh2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra.polynomial import GradedPoly
from .correspondence import (
    CORR_VARS, PARAM_VARS, Atom, PolyFactor, Scale, Sum, act,
)
from .tautological import G, TautClassF, I_star, gamma_h2_pull, gamma_h_pull

__all__ = [
    "CHERN_VARS", "ChernInput", "chern_input", "expand_c2_F", "c2_target",
    "KeyIdentity", "key_identity", "key_identity_coefficients", "derive_a",
    "phi_pull_g_coefficient", "derive_a_table", "KEY_COEFFICIENT_NAMES",
    "PHI_PULL_G",
]

CHERN_VARS = (("a", 0), ("g1t", 1), ("g2t", 1), ("h", 1))

# known eigenvalue of phi^* on the Plucker class
PHI_PULL_G = 7

KEY_COEFFICIENT_NAMES = ("g1^2", "g1*g2", "g2^2", "h*g1", "h*g2", "h^2")


def _gens():
    return GradedPoly.gens(CHERN_VARS)


@dataclass(frozen=True)
class ChernInput:
    c1_positive: GradedPoly
    c1_normal: GradedPoly
    c2_normal: GradedPoly


def chern_input() -> ChernInput:
    a, g1, g2, h = _gens()
    return ChernInput(
        c1_positive=a * g1 + h,
        c1_normal=g1 + g2 - h,
        c2_normal=6 * h ** 2 + g1 ** 2 + g1 * g2 + g2 ** 2 - 3 * h * (g1 + g2),
    )


def expand_c2_F(inputs: ChernInput | None = None) -> GradedPoly:
    """c2 of (line bundle)^dual tensor (rank 2 bundle): c1(L)^2 - c1(L) c1(N) + c2(N)."""
    ci = inputs or chern_input()
    L = ci.c1_positive
    return L * L - L * ci.c1_normal + ci.c2_normal


def c2_target() -> GradedPoly:
    """The closed form the expansion must match, written out independently."""
    a, g1, g2, h = _gens()
    return ((a ** 2 - a + 1) * g1 ** 2 + (1 - a) * g1 * g2 + g2 ** 2
            + (3 * a - 4) * h * g1 - 4 * h * g2 + 8 * h ** 2)


def key_identity_coefficients(a=None) -> tuple:
    """Coefficients of g1^2, g1 g2, g2^2, h g1, h g2, h^2 in the expansion.

    With ``a`` given they are Fractions; otherwise polynomials in ``a``.
    """
    poly = expand_c2_F()
    if a is not None:
        poly = poly.subs({"a": a})
    monos = [{"g1t": 2}, {"g1t": 1, "g2t": 1}, {"g2t": 2},
             {"h": 1, "g1t": 1}, {"h": 1, "g2t": 1}, {"h": 2}]
    out = []
    for m in monos:
        full = {"g1t": 0, "g2t": 0, "h": 0, **m}
        coeff = poly.coefficient_in(("g1t", "g2t", "h"), full).rename(PARAM_VARS)
        out.append(coeff.constant_value() if a is not None else coeff)
    return tuple(out)


def _to_corr_poly(p: GradedPoly) -> GradedPoly:
    return p.rename(CORR_VARS, {"g1t": "g1", "g2t": "g2"})


def _split_by_h(poly: GradedPoly) -> dict[int, GradedPoly]:
    parts: dict[int, dict] = {}
    for exps, c in poly.terms.items():
        k = exps[3]
        parts.setdefault(k, {})[exps[:3] + (0,)] = c
    return {k: GradedPoly(CHERN_VARS, t) for k, t in parts.items()}


_H_ATOMS = {0: "I", 1: "Gh", 2: "Gh2"}


@dataclass(frozen=True)
class KeyIdentity:
    """``lhs = rhs`` as correspondence expressions of codimension 4."""

    lhs: Sum
    rhs: Sum
    a: object


def _rhs_from_expansion(poly: GradedPoly):
    terms = [Scale(Fraction(4), Atom("D"))]
    for k, part in sorted(_split_by_h(poly).items()):
        if k not in _H_ATOMS:
            raise ValueError(f"unexpected power h^{k} in the expansion")
        terms.append(PolyFactor(_to_corr_poly(part), Atom(_H_ATOMS[k])))
    return Sum(tuple(terms))


def _rhs_stated(a) -> Sum:
    av, g1, g2, c1, c2 = GradedPoly.gens(CORR_VARS)
    if a is not None:
        av = GradedPoly.constant(CORR_VARS, a)
    return Sum((
        Scale(Fraction(4), Atom("D")),
        PolyFactor((av ** 2 - av + 1) * g1 ** 2 + (1 - av) * g1 * g2 + g2 ** 2, Atom("I")),
        PolyFactor((3 * av - 4) * g1 - 4 * g2, Atom("Gh")),
        PolyFactor(8 * GradedPoly.constant(CORR_VARS, 1), Atom("Gh2")),
    ))


def key_identity(a=None) -> KeyIdentity:
    """Build the key identity for the parameter ``a`` (symbolic if None).

    The right side is assembled from the Chern expansion and checked
    against the hand-written form; a mismatch raises ``ValueError``.
    """
    poly = expand_c2_F()
    if a is not None:
        poly = poly.subs({"a": a})
    derived = _rhs_from_expansion(poly)
    stated = _rhs_stated(a)
    if derived != stated:
        raise ValueError("Chern expansion does not match the stated key identity")
    lhs = Sum((Atom("Gphi"), Atom("I1"), Atom("I2")))
    return KeyIdentity(lhs, derived, a)


def derive_a_table() -> dict[str, Fraction]:
    """The five cylinder values entering the pullback of g."""
    def scalar(u: TautClassF, key):
        if set(u.terms) - {key}:
            raise ValueError(f"{u} is not a multiple of a single basis class")
        return u.coefficient(key)
    unit, gk = ("m", 0, 0), ("m", 1, 0)
    return {
        "I_*(g^2)": scalar(I_star(G ** 2), unit),
        "I_*(g^3)": scalar(I_star(G ** 3), gk),
        "Gh^*(g)": scalar(gamma_h_pull(G), unit),
        "Gh^*(g^2)": scalar(gamma_h_pull(G ** 2), gk),
        "Gh2^*(g)": scalar(gamma_h2_pull(G), gk),
    }


def phi_pull_g_coefficient() -> GradedPoly:
    """Pull g back through the right side of the symbolic key identity.

    The first-type corrections do not contribute on g, so the result is the
    coefficient of g in phi^* g, a polynomial in ``a``.
    """
    rhs = key_identity(None).rhs
    image = act(rhs, G, "pull")
    if set(image.terms) - {("m", 1, 0)}:
        raise ValueError(f"pullback of g left the span of g: {image}")
    c = image.coefficient(("m", 1, 0))
    if not isinstance(c, GradedPoly):
        c = GradedPoly.constant(PARAM_VARS, c)
    return c


def derive_a(target: int = PHI_PULL_G) -> int | Fraction:
    """Solve ``coefficient(a) = target`` for the linear coefficient."""
    coeff = phi_pull_g_coefficient()
    if coeff.degree() > 0 or any(e[0] > 1 for e in coeff.terms):
        raise ValueError(f"pullback coefficient {coeff} is not linear in a")
    slope = coeff.coefficient(a=1)
    const = coeff.coefficient(a=0)
    if slope == 0:
        raise ValueError("pullback coefficient does not depend on a")
    sol = (Fraction(target) - const) / slope
    return int(sol) if sol.denominator == 1 else sol
