"""Tautological ring of F and cylinder maps.

The Grassmannian oracle integrates over G(2,6) with Chern roots x, y of the
dual tautological bundle: F is the zero locus of a section of Sym^3, so
``int_F f = int_G f * c4(Sym^3)``, and ``int_G f = -1/2 [x^5 y^5] f (x - y)^2``.
"""

from fractions import Fraction

import pytest
import sympy

from fano_calculus.tautological import (
    C, CX, F_UNIT, G, H, MONOMIAL_TOP, O, X_UNIT, XPT, ClassX, OutsideTable, Point, S,
    TautClassF, UnspecifiedProduct, I_star, cylinder_table, gamma_h2_pull, gamma_h_pull,
    line, phi, psi, pt, s_product, sigma2_class,
)

x, y = sympy.symbols("x y")
G_SYM = x + y
C_SYM = x * y
TOP_CLASS = sympy.expand(3 * x * (2 * x + y) * (x + 2 * y) * 3 * y)


def integrate_grassmannian(f):
    poly = sympy.Poly(sympy.expand(f * (x - y) ** 2), x, y)
    return Fraction(-poly.coeff_monomial(x ** 5 * y ** 5)) / 2


def integrate_F(f):
    return integrate_grassmannian(f * TOP_CLASS)


def test_monomial_degrees_match_grassmannian():
    for (i, j), value in MONOMIAL_TOP.items():
        assert integrate_F(G_SYM ** i * C_SYM ** j) == value


def test_top_degree_table():
    assert G ** 4 == O.scale(108)
    assert G ** 2 * C == O.scale(45)
    assert C ** 2 == O.scale(27)
    assert G * CX == O.scale(6)
    assert (G * G * C).degree() == 45


def test_beyond_top_degree_vanishes():
    assert C * CX == 0
    assert (G ** 5) == 0
    assert O * G == 0


def test_special_surface_squares_to_five():
    s_o = (G * G - C).scale(Fraction(1, 3))
    assert s_o * s_o == O.scale(5)
    assert S("o") == s_o
    assert integrate_F(((G_SYM ** 2 - C_SYM) / 3) ** 2) == 5


def test_sigma2_degree():
    assert (G * G * sigma2_class()).degree() == 315


def test_products_with_line_surfaces():
    l = Point("l")
    assert G * G * S("l") == pt(Point("l", 1)) - pt(l).scale(4) + O.scale(24)
    assert C * S("l") == O.scale(6)
    assert (G * G * S("l")).degree() == 21
    with pytest.raises(UnspecifiedProduct):
        G * S("l")
    with pytest.raises(UnspecifiedProduct):
        S("l") * S("m")


def test_point_classes():
    assert pt("o") == O
    assert pt(Point("o")) == O
    assert str(pt(Point("l", 2))) == "phi_*(phi_*(pt[l]))"
    assert pt("l").degree() == 1


def test_s_product_of_triangle_edges():
    got = s_product(("a", "b", "c"), ("a", "b"))
    assert got == O.scale(6) + pt("c") - pt("a") - pt("b")
    assert got.degree() == 5
    with pytest.raises(ValueError):
        s_product(("a", "b", "c"), ("a", "d"))


def segre(k):
    # complete homogeneous symmetric polynomial: Segre classes of the universal subbundle
    return sum(x ** i * y ** (k - i) for i in range(k + 1))


def test_psi_degrees_match_incidence_pushforward():
    # int_X Psi(g^k) h^(5-k) = int_F g^k s_(4-k)
    for k in range(1, 5):
        image = psi(G ** k)
        hpow = ClassX({("h", 5 - k): 1})
        assert (image * hpow).degree() == integrate_F(G_SYM ** k * segre(4 - k))


def test_cylinder_table_entries():
    rows = cylinder_table()
    assert len(rows) == 16
    for text, expected, computed in rows:
        assert expected == computed, text


def test_cylinder_maps_compose():
    for u in (G ** 2, G ** 3, G ** 4, O):
        assert I_star(u) == phi(psi(u))
        assert gamma_h_pull(u) == phi(H * psi(u))
        assert gamma_h2_pull(u) == phi(H * H * psi(u))
    assert psi(pt("l")) == line("l")
    assert phi(line("l")) == S("l")
    assert phi(XPT) == CX
    assert psi(F_UNIT) == 0
    assert phi(X_UNIT) == 0


def test_phi_on_h_powers_matches_segre():
    assert phi(H) == F_UNIT
    assert phi(H ** 2) == G
    assert phi(H ** 3) == G * G - C


def test_phi_entries_forced_by_the_cylinder_values():
    # Psi(g^2) = 21 h and I_*(g^2) = 21 F force Phi(h) = F
    assert psi(G ** 2) == H.scale(21)
    assert phi(H).scale(21) == F_UNIT.scale(21)
    # Psi(g^4) = 36 h^3 and (Gh)^* g^4 = 108 Cx force Phi(h^4) = 3 Cx, with h^4 = 3 x
    assert psi(G ** 4) == (H ** 3).scale(36)
    assert phi(H ** 4).scale(36) == CX.scale(108)
    assert phi(H ** 4) == CX.scale(3)


def test_outside_table_is_reported():
    with pytest.raises(OutsideTable):
        psi(G * C)


def test_class_arithmetic():
    u = (G * G).scale(2) - C.scale(Fraction(1, 2))
    assert u.codim() == 2
    with pytest.raises(ValueError):
        (G + C).codim()
    assert (u - u) == 0
    assert str(TautClassF()) == "0"
    assert str(G * G - C) == "g^2 - c"
    assert XPT.degree() == 1
    assert (H ** 4) == XPT.scale(3)
