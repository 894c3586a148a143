"""Correspondence expressions acting on tautological classes and points."""

import pytest

from fano_calculus.algebra import GradedPoly
from fano_calculus.correspondence import (
    CORR_VARS, Atom, Compose, PolyFactor, Scale, Sum, Transpose, UnsupportedAction, act,
    act_corr_on_point, atoms, codim, pull, push,
)
from fano_calculus.tautological import F_UNIT, G, O, Point, S, pt

g1, g2 = (GradedPoly.var(CORR_VARS, n) for n in ("g1", "g2"))
D, I, Gphi, FxO, OxF = (Atom(n) for n in ("D", "I", "Gphi", "FxO", "OxF"))


def test_codimensions():
    assert codim(I) == 2
    assert codim(PolyFactor(g2 ** 2, I)) == 4
    assert codim(Compose(I, I)) == 0
    assert codim(Sum((D, Scale(3, Gphi)))) == 4
    with pytest.raises(ValueError):
        codim(Sum((D, I)))
    with pytest.raises(ValueError):
        Atom("nonsense")


def test_atoms_collects_names():
    e = Sum((D, Compose(I, Transpose(PolyFactor(g1, I)))))
    assert atoms(e) == {"D", "I"}


def test_diagonal_is_identity():
    for u in (pt("l"), G, O, S("l")):
        assert push(D, u) == u
        assert pull(D, u) == u


def test_incidence_on_a_point_is_line_surface():
    assert push(I, pt("l")) == S("l")


def test_point_classes_under_product_correspondences():
    assert push(FxO, pt("l")) == O
    assert pull(FxO, F_UNIT) == F_UNIT
    assert push(OxF, F_UNIT) == F_UNIT
    assert push(Transpose(FxO), F_UNIT) == push(OxF, F_UNIT)


def test_composition_order():
    # push applies the right factor first; pull the left factor first
    e = Compose(FxO, I)
    assert push(e, pt("l")) == push(FxO, push(I, pt("l")))
    assert pull(e, O) == pull(I, pull(FxO, O))


def test_polynomial_factor_on_a_point():
    # (g2^2 . I)_*[l] = g^2 . S_l
    assert push(PolyFactor(g2 ** 2, I), pt("l")) == G * G * S("l")
    # (g1^2 . I)_*[l] = I_*(g^2 . [l]) = 0
    assert push(PolyFactor(g1 ** 2, I), pt("l")) == 0


def test_voisin_graph_on_points():
    assert act_corr_on_point(Gphi) == pt(Point("l", 1))
    assert push(Gphi, O) == O
    assert pull(Gphi, O) == O.scale(16)
    with pytest.raises(UnsupportedAction):
        pull(Gphi, pt("l"))
    with pytest.raises(UnsupportedAction):
        push(Atom("I1"), pt("l"))


def test_degree_constant_for_the_simple_terms():
    # (Gphi - 4 D - g2^2 I + n FxO)_*[l] = 0 pins down n
    base = Sum((Gphi, Scale(-4, D), Scale(-1, PolyFactor(g2 ** 2, I))))
    image = push(base, pt("l"))
    assert set(image.terms) == {("o",)}
    n = -image.coefficient(("o",))
    assert n == 24
    assert 1 - 4 - 21 + n == 0
    assert push(Sum((base, Scale(n, FxO))), pt("l")) == 0


def test_symbolic_parameter_coefficients():
    av = GradedPoly.var(CORR_VARS, "a")
    image = push(PolyFactor(av * g2 ** 2, I), pt("l"))
    coeff = image.coefficient(("o",))
    assert coeff.subs({"a": 3}).constant_value() == 72


def test_scalar_rejected_direction():
    with pytest.raises(ValueError):
        act(D, G, "sideways")
