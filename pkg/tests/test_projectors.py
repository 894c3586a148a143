"""Idempotent lifting, the transcendental projector relations and the
assembled Chow-Kunneth projectors."""

from fractions import Fraction
import random

import pytest

from fano_calculus.algebra import ExactMatrix
from fano_calculus.chowmodel import build_model
from fano_calculus.projectors import (
    NotNilpotent, assemble_ck, beilinson_lift, murre_D_check, nilpotency_index, p_action,
    pi_tr_elements, projector_algebra, random_lift_input, verify_pi_tr_relations,
)


def test_lift_on_seeded_random_matrices():
    rng = random.Random(0)
    for _ in range(100):
        size = rng.randint(4, 7)
        rank = rng.randint(1, size - 1)
        index = rng.randint(2, max(rank, size - rank))
        p = random_lift_input(rng, size, rank, index)
        res = beilinson_lift(p)
        q = res.q
        assert q @ q == q
        assert res.index == index == nilpotency_index(p @ p - p)
        assert res.iterations <= res.bound
        # q is a polynomial in p: it commutes with p and differs by a nilpotent
        assert q @ p == p @ q
        assert nilpotency_index(q - p) is not None
        assert q.rank() == rank


def test_lift_of_an_idempotent_is_immediate():
    e = ExactMatrix.diag([1, 1, 0])
    res = beilinson_lift(e)
    assert res.iterations == 0 and res.q == e


def test_lift_rejects_non_nilpotent_defect():
    with pytest.raises(NotNilpotent) as err:
        beilinson_lift(ExactMatrix.diag([2, 0, 1]))
    w = err.value.witness
    f = ExactMatrix.diag([2, 0, 1]) @ ExactMatrix.diag([2, 0, 1]) - ExactMatrix.diag([2, 0, 1])
    assert any((f ** 3).apply(w))


def test_pi_tr_relations_in_free_algebra():
    r = verify_pi_tr_relations()
    assert r["all_zero"]
    assert r["transpose_duality"]
    assert r["order_independent"]
    assert set(r["normal_forms"].values()) == {"0"}


def test_pi_tr_relations_on_matrices():
    # transpose = adjoint for an indefinite form; q is a rank-one idempotent
    # whose image pairs to zero with the image of its adjoint
    B = ExactMatrix.diag([1, -1, 1, -1])
    Binv = B.inverse()
    w = ExactMatrix.column([1, 1, 0, 0])
    u = ExactMatrix.column([1, 0, 1, 2])
    q = u @ w.T
    qt = Binv @ q.T @ B
    assert q @ q == q and qt @ qt == qt
    assert (q @ qt).is_zero()
    one = ExactMatrix.identity(4)
    half = Fraction(1, 2)
    pi2 = qt @ (one - q * half)
    pi6 = (one - qt * half) @ q
    assert pi2 @ pi2 == pi2
    assert pi6 @ pi6 == pi6
    assert (pi2 @ pi6).is_zero() and (pi6 @ pi2).is_zero()
    assert Binv @ pi2.T @ B == pi6


def test_projector_elements_print():
    alg, _ = projector_algebra()
    pi2, pi6 = pi_tr_elements(alg)
    assert str(pi2) == "qt - 1/2*qt*q"
    assert pi2.T == pi6


@pytest.mark.parametrize("ranks", [(1, 1, 1, 1), (2, 0, 1, 2), (0, 3, 0, 1), (1, 0, 2, 0)])
def test_ck_assembly(ranks):
    model = build_model(ranks, basis_seed=2)
    checks = assemble_ck(model).checks()
    assert all(checks.values()), [k for k, v in checks.items() if not v]


@pytest.mark.parametrize("ranks", [(1, 1, 1, 1), (2, 0, 1, 2), (0, 3, 0, 1), (1, 0, 2, 0), (0, 0, 0, 0)])
def test_murre_d_iff_no_invariant_block(ranks):
    model = build_model(ranks, basis_seed=6)
    holds, witness = murre_D_check(model)
    assert holds == (ranks[1] == 0)
    if not holds:
        assert witness is not None and any(witness)


def test_p_action():
    res = p_action(build_model((2, 1, 1, 2), basis_seed=8))
    assert all(res.values())


def test_kappa_must_be_positive():
    with pytest.raises(ValueError):
        assemble_ck(build_model((1, 1, 1, 1)), kappa=0)
