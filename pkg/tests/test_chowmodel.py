"""Block model of the hom-trivial Chow groups: spectra, Fourier symmetry,
intertwining and the operator relations."""

from fractions import Fraction
import random

import pytest
import sympy

from fano_calculus.algebra import ExactMatrix, GradedPoly
from fano_calculus.chowmodel import (
    build_model, derive_operator_relations, eigenprojectors, expected_minpolys, random_ranks,
    verify_fourier, verify_intertwining, verify_minpolys, verify_phi_of_o, voisin_alpha,
)
from fano_calculus.correspondence import Atom
from fano_calculus.tautological import O

TUPLES = [(1, 1, 1, 1), (2, 0, 1, 3), (0, 2, 0, 1), (3, 1, 2, 0), (1, 0, 0, 0), (0, 0, 0, 0)]


def spectrum(M: ExactMatrix) -> dict:
    return {Fraction(str(k)): v for k, v in sympy.Matrix(M.tolist()).eigenvals().items()} if M.rows else {}


@pytest.mark.parametrize("ranks", TUPLES)
def test_spectra_match_block_ranks(ranks):
    m, n, p, q = ranks
    model = build_model(ranks, basis_seed=7)
    want2 = {k: v for k, v in {Fraction(-2): m, Fraction(4): n}.items() if v}
    want1 = {k: v for k, v in {Fraction(-14): m, Fraction(4): p}.items() if v}
    want0 = {k: v for k, v in {Fraction(16): 1, Fraction(-8): m, Fraction(4): q}.items() if v}
    assert spectrum(model.phi_pull(2)) == want2
    assert spectrum(model.phi_pull(1)) == want1
    assert spectrum(model.phi_pull_full0()) == want0
    assert spectrum(model.phi_push(2)) == {k * 4 if k == -2 else k: v for k, v in want2.items()}


@pytest.mark.parametrize("ranks", TUPLES)
def test_minimal_polynomials(ranks):
    model = build_model(ranks, basis_seed=3)
    for row in verify_minpolys(model):
        assert row["ok"] and row["kills"], row


def test_minimal_polynomials_on_a_random_sweep():
    rng = random.Random(2024)
    for _ in range(20):
        model = build_model(random_ranks(rng, 0, 3), basis_seed=rng.randrange(1000))
        assert all(r["ok"] for r in verify_minpolys(model))


def test_expected_minpolys_drop_empty_blocks():
    exp = expected_minpolys(build_model((0, 2, 0, 0)))
    assert exp["phi^* on CH_2 hom"] == [4]
    assert exp["phi^* on CH_1 hom"] == []
    assert exp["phi^* on CH_0"] == [16]


@pytest.mark.parametrize("ranks", TUPLES)
def test_invariants(ranks):
    inv = build_model(ranks, basis_seed=11).invariants()
    assert all(inv.values()), [k for k, v in inv.items() if not v]


@pytest.mark.parametrize("ranks", TUPLES)
def test_fourier_and_intertwining(ranks):
    model = build_model(ranks, basis_seed=5)
    f = verify_fourier(model)
    assert f["equal"] and f["vanish_on_D"]
    assert verify_intertwining(model)["ok"]


@pytest.mark.parametrize("ranks", TUPLES[:4])
def test_eigenprojectors(ranks):
    model = build_model(ranks, basis_seed=9)
    for grade in (0, 1, 2):
        M = model.phi_pull_full0() if grade == 0 else model.phi_pull(grade)
        P = eigenprojectors(model, grade)
        total = ExactMatrix.zeros(M.rows)
        for lam, E in P.items():
            assert E @ E == E
            assert M @ E == E * lam
            total = total + E
            for mu, E2 in P.items():
                if mu != lam:
                    assert (E @ E2).is_zero()
        assert total == ExactMatrix.identity(M.rows)


def test_i2_acts_as_five_n():
    model = build_model((2, 1, 1, 1), basis_seed=4)
    assert model.action(Atom("I2"), 2, "push") == model.N(2) * 5
    assert model.action(Atom("I1"), 2, "push").is_zero()


def test_parameter_changes_ch1_eigenvalue():
    model = build_model((1, 0, 0, 0), a=1)
    assert spectrum(model.phi_pull(1)) == {Fraction(4): 1}


def test_phi_of_o():
    res = verify_phi_of_o()
    assert res.square == O.scale(5)
    assert res.phi_push_o == 1
    assert res.phi_pull_o == 16


def test_operator_derivation():
    d = derive_operator_relations()
    assert d.ok
    for name in ("phi_* = 4 + 2T", "T = phi_* - phi^*", "T^2 = -6T",
                 "(phi^* - 4)(phi^* + 2) = 0", "(phi_* - 4)(phi_* + 8) = 0", "(I2)_* = 5T"):
        assert d.claims[name] == 0, name
    av = GradedPoly.var((("a", 0),), "a")
    assert d.i2_coefficient == av ** 2 - av - 1


def test_operator_derivation_matches_model():
    # the rewriting result agrees with the matrices
    model = build_model((2, 1, 1, 1), basis_seed=1)
    N = model.N(2)
    one = model.identity(2)
    assert model.phi_push(2) == one * 4 + N * 2
    assert model.phi_push(2) - model.phi_pull(2) == N
    assert N @ N == N * -6


def test_voisin_alpha():
    r = voisin_alpha()
    assert r.alpha == 2
    assert r.alpha_from_characters == 2
    assert str(r.gamma1) == "g1^2 + g1*g2 + g2^2"
    assert set(r.residual.terms) <= {("o",)}


def test_bad_ranks():
    with pytest.raises(ValueError):
        build_model((1, 2, 3))
    with pytest.raises(ValueError):
        build_model((1, -1, 0, 0))
