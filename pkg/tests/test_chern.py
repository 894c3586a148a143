"""Chern expansion of the key identity, against a sympy expansion."""

from fractions import Fraction

import pytest
import sympy

from fano_calculus.algebra import GradedPoly
from fano_calculus.chern import (
    c2_target, derive_a, derive_a_table, expand_c2_F, key_identity,
    key_identity_coefficients, phi_pull_g_coefficient,
)
from fano_calculus.correspondence import act
from fano_calculus.tautological import G, Point, pt

a, g1, g2, h = sympy.symbols("a g1t g2t h")


def to_sympy(p: GradedPoly):
    syms = [sympy.Symbol(n) for n, _ in p.variables]
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator)
                            * sympy.prod(s ** e for s, e in zip(syms, exps))
                            for exps, c in p.terms.items()))


def sympy_c2():
    # c2(L^dual (x) N) for a line bundle L and a rank-2 bundle N
    L = a * g1 + h
    c1N = g1 + g2 - h
    c2N = 6 * h ** 2 + g1 ** 2 + g1 * g2 + g2 ** 2 - 3 * h * (g1 + g2)
    return sympy.expand(L ** 2 - L * c1N + c2N)


def test_expansion_matches_sympy():
    assert to_sympy(expand_c2_F()) == sympy_c2()


def test_expansion_matches_target_identically_in_a():
    assert expand_c2_F() == c2_target()
    assert sympy.expand(to_sympy(c2_target()) - sympy_c2()) == 0


def test_key_coefficients_at_minus_two():
    assert key_identity_coefficients(-2) == (7, 3, 1, -10, -4, 8)


@pytest.mark.parametrize("value", [-3, -2, 0, 1, Fraction(5, 2)])
def test_symbolic_coefficients_specialize(value):
    poly = sympy.Poly(sympy_c2().subs(a, value), g1, g2, h)
    want = tuple(Fraction(str(poly.coeff_monomial(m))) for m in
                 (g1 ** 2, g1 * g2, g2 ** 2, h * g1, h * g2, h ** 2))
    assert key_identity_coefficients(value) == want
    symbolic = key_identity_coefficients()
    assert tuple(c.subs({"a": value}).constant_value() for c in symbolic) == want


def test_derive_a():
    coeff = phi_pull_g_coefficient()
    av = GradedPoly.var((("a", 0),), "a")
    assert coeff == 1 - 3 * av
    assert derive_a() == -2


def test_a_table():
    assert derive_a_table() == {"I_*(g^2)": 21, "I_*(g^3)": 36, "Gh^*(g)": 6,
                                "Gh^*(g^2)": 21, "Gh2^*(g)": 6}


def test_key_identity_on_a_point():
    for value in (None, -2, 5):
        rhs = key_identity(value).rhs
        assert act(rhs, pt("l"), "push") == pt(Point("l", 1))


def test_key_identity_pulls_g_to_seven_g():
    rhs = key_identity(-2).rhs
    assert act(rhs, G, "pull") == G.scale(7)


def test_key_identity_terms_are_split_by_h_power():
    rhs = key_identity(-2).rhs
    names = [t.body.name if hasattr(t, "body") else t.name for t in rhs.terms]
    assert names == ["D", "I", "Gh", "Gh2"]
    assert rhs.terms[0].coeff == 4
