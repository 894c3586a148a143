"""Idempotent lifting and the Chow-Kunneth projector algebra.

``beilinson_lift`` upgrades an idempotent-up-to-nilpotents to an exact
idempotent.  ``verify_pi_tr_relations`` proves the transcendental projector
identities in the free algebra on ``q, q^t``.  ``assemble_ck`` builds five
projectors on the block model and ``murre_D_check`` tests the kernel
condition on CH_2.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .algebra.matrix import ExactMatrix
from .algebra.noncommutative import FreeAlgebra, NCPoly, RewriteSystem, nc_normalize
from .chowmodel import ChowModel, eigenprojectors

__all__ = [
    "NotNilpotent", "LiftResult", "beilinson_lift", "nilpotency_index",
    "random_lift_input", "projector_algebra", "pi_tr_elements", "verify_pi_tr_relations",
    "CKDecomposition", "assemble_ck", "murre_D_check", "p_action",
]


class NotNilpotent(ValueError):
    def __init__(self, message: str, witness: list[Fraction]):
        super().__init__(message)
        self.witness = witness


def nilpotency_index(f: ExactMatrix) -> int | None:
    """Least k with f^k = 0, or None if f is not nilpotent."""
    power = ExactMatrix.identity(f.rows)
    for k in range(1, f.rows + 2):
        power = power @ f
        if power.is_zero():
            return k
    return None


@dataclass(frozen=True)
class LiftResult:
    q: ExactMatrix
    iterations: int
    index: int

    @property
    def bound(self) -> int:
        return math.ceil(math.log2(self.index)) + 1 if self.index > 1 else 1


def beilinson_lift(p: ExactMatrix, max_iterations: int = 64) -> LiftResult:
    """Iterate ``p <- p + (1 - 2p)(p^2 - p)`` until ``p^2 = p``."""
    if not p.is_square():
        raise ValueError("lift needs a square matrix")
    one = ExactMatrix.identity(p.rows)
    f = p @ p - p
    if f.is_zero():
        return LiftResult(p, 0, 1)
    index = nilpotency_index(f)
    if index is None:
        top = f ** p.rows
        j = next(j for j in range(top.cols) if any(top.col(j)))
        witness = [Fraction(int(i == j)) for i in range(p.rows)]
        raise NotNilpotent(f"p^2 - p is not nilpotent; f^n e_{j} != 0", witness)
    q = p
    for it in range(1, max_iterations + 1):
        q = q + (one - q * 2) @ (q @ q - q)
        if (q @ q - q).is_zero():
            return LiftResult(q, it, index)
    raise RuntimeError("lifting did not converge")


def random_lift_input(rng: random.Random, size: int = 6, rank: int = 4, index: int = 4) -> ExactMatrix:
    """``P (e + n) P^{-1}`` with e a rank-``rank`` idempotent and n a
    nilpotent commuting with e whose index is exactly ``index``.

    The Jordan block of length ``index`` sits inside whichever of the two
    eigenblocks can hold it; the other block gets a random nilpotent.
    """
    if index > max(rank, size - rank):
        raise ValueError("index too large for the blocks")
    big, small = (rank, size - rank) if index <= rank else (size - rank, rank)

    def shift(n, length):
        return [[1 if (j == i + 1 and j < length) else 0 for j in range(n)] for i in range(n)]

    def strict_upper(n, cap):
        # random strictly upper triangular with index at most cap
        m = [[rng.randint(-2, 2) if j == i + 1 else 0 for j in range(n)] for i in range(n)]
        for i in range(cap - 1, n - 1, cap):
            m[i][i + 1] = 0
        return m

    blk_big = ExactMatrix(shift(big, index)) if big else ExactMatrix.zeros(0)
    blk_small = ExactMatrix(strict_upper(small, index)) if small else ExactMatrix.zeros(0)
    if index <= rank:
        n1, n2 = blk_big, blk_small
    else:
        n1, n2 = blk_small, blk_big
    e = ExactMatrix.diag([1] * rank + [0] * (size - rank))
    nil = ExactMatrix.block_diag(n1, n2)
    P = _random_invertible(size, rng)
    return P @ (e + nil) @ P.inverse()


def _random_invertible(n: int, rng: random.Random) -> ExactMatrix:
    upper = [[1 if i == j else (rng.randint(-3, 3) if j > i else 0) for j in range(n)] for i in range(n)]
    lower = [[1 if i == j else (rng.randint(-3, 3) if j < i else 0) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    Pm = ExactMatrix([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)])
    return Pm @ ExactMatrix(upper) @ ExactMatrix(lower)


# free-algebra relations

def projector_algebra() -> tuple[FreeAlgebra, RewriteSystem]:
    alg = FreeAlgebra(["q", "qt"], {"q": "qt"})
    q, qt = alg.gens()
    rules = [(("q", "q"), q), (("qt", "qt"), qt), (("q", "qt"), alg.zero())]
    return alg, RewriteSystem(alg, rules)


def pi_tr_elements(alg: FreeAlgebra) -> tuple[NCPoly, NCPoly]:
    q, qt = alg.gens()
    half = Fraction(1, 2)
    pi2 = qt * (1 - half * q)
    pi6 = (1 - half * qt) * q
    return pi2, pi6


def verify_pi_tr_relations() -> dict:
    """Normal forms of the four projector identities plus transpose duality,
    under every ordering of the three rules."""
    alg, system = projector_algebra()
    pi2, pi6 = pi_tr_elements(alg)
    claims = {
        "pi2^2 - pi2": pi2 * pi2 - pi2,
        "pi6^2 - pi6": pi6 * pi6 - pi6,
        "pi2 pi6": pi2 * pi6,
        "pi6 pi2": pi6 * pi2,
    }
    forms = {k: nc_normalize(v, system) for k, v in claims.items()}
    order_independent = True
    for order in permutations(range(len(system.rules))):
        alt = system.reordered(order)
        for k, v in claims.items():
            if nc_normalize(v, alt) != forms[k]:
                order_independent = False
    return {
        "normal_forms": {k: str(v) for k, v in forms.items()},
        "all_zero": all(v == 0 for v in forms.values()),
        "transpose_duality": pi2.T == pi6 and pi6.T == pi2,
        "order_independent": order_independent,
        "pi2": str(pi2), "pi6": str(pi6),
    }


# projectors on the block model

@dataclass
class CKDecomposition:
    """Five projectors on CH_0 (o-line first) + CH_2 (nontrivial part first)."""

    model: ChowModel
    kappa: int
    projectors: dict[int, ExactMatrix] = field(default_factory=dict)

    @property
    def dim0(self) -> int:
        return 1 + self.model.dim(4)

    @property
    def dim2(self) -> int:
        return self.kappa + self.model.dim(2)

    def on_ch0(self, i: int) -> ExactMatrix:
        return self.projectors[i].submatrix(range(self.dim0), range(self.dim0))

    def on_ch2(self, i: int) -> ExactMatrix:
        r = range(self.dim0, self.dim0 + self.dim2)
        return self.projectors[i].submatrix(r, r)

    def on_ch2_hom(self, i: int) -> ExactMatrix:
        r = range(self.dim0 + self.kappa, self.dim0 + self.dim2)
        return self.projectors[i].submatrix(r, r)

    def checks(self) -> dict[str, bool]:
        out = {}
        n = self.dim0 + self.dim2
        total = ExactMatrix.zeros(n)
        for i, P in self.projectors.items():
            out[f"pi{i} idempotent"] = P @ P == P
            total = total + P
        for i in self.projectors:
            for j in self.projectors:
                if i < j:
                    Pi, Pj = self.projectors[i], self.projectors[j]
                    out[f"pi{i} pi{j} = 0"] = (Pi @ Pj).is_zero() and (Pj @ Pi).is_zero()
        out["sum = identity"] = total == ExactMatrix.identity(n)
        eig0 = eigenprojectors(self.model, 0)
        zero0 = ExactMatrix.zeros(self.dim0)
        out["CH_0 image of pi0 = Q[o]"] = self.on_ch0(0) == eig0.get(Fraction(16), zero0)
        out["CH_0 image of pi2 = V_0^-8"] = self.on_ch0(2) == eig0.get(Fraction(-8), zero0)
        out["CH_0 image of pi4 = V_0^4"] = self.on_ch0(4) == eig0.get(Fraction(4), zero0)
        out["pi6, pi8 vanish on CH_0"] = self.on_ch0(6).is_zero() and self.on_ch0(8).is_zero()
        if self.model.dim(2):
            eig2 = eigenprojectors(self.model, 2)
            zero2 = ExactMatrix.zeros(self.model.dim(2))
            out["CH_2 hom: pi2 = projector to A"] = self.on_ch2_hom(2) == eig2.get(Fraction(-2), zero2)
            out["CH_2 hom: pi4 = projector to B"] = self.on_ch2_hom(4) == eig2.get(Fraction(4), zero2)
        return out


def _p_on_ch0(model: ChowModel) -> ExactMatrix:
    """p acts on CH_0 as -(1/6) g^2 I_*, zero on the o-line."""
    hom = model.N(0) * Fraction(-1, 6)
    return ExactMatrix.block_diag(ExactMatrix.zeros(1), hom)


def assemble_ck(model: ChowModel, kappa: int = 1) -> CKDecomposition:
    if kappa < 1:
        raise ValueError("kappa must be positive")
    d0 = 1 + model.dim(4)
    d2 = kappa + model.dim(2)
    # CH_0
    pi0_0 = ExactMatrix.block_diag(ExactMatrix([[1]]), ExactMatrix.zeros(model.dim(4)))
    pi2_0 = _p_on_ch0(model)
    pi4_0 = ExactMatrix.identity(d0) - pi0_0 - pi2_0
    # CH_2: p^t acts on the hom part as -(1/6) I_* g^2
    pi2_2 = ExactMatrix.block_diag(ExactMatrix.zeros(kappa), model.N(2) * Fraction(-1, 6))
    pi4_2 = ExactMatrix.identity(d2) - pi2_2
    z0, z2 = ExactMatrix.zeros(d0), ExactMatrix.zeros(d2)
    projs = {
        0: ExactMatrix.block_diag(pi0_0, z2),
        2: ExactMatrix.block_diag(pi2_0, pi2_2),
        4: ExactMatrix.block_diag(pi4_0, pi4_2),
        6: ExactMatrix.block_diag(z0, z2),
        8: ExactMatrix.block_diag(z0, z2),
    }
    return CKDecomposition(model, kappa, projs)


def p_action(model: ChowModel) -> dict[str, bool]:
    """p is the identity on V_0^{-8} and zero on Q[o] + V_0^4."""
    p = _p_on_ch0(model)
    eig = eigenprojectors(model, 0)
    zero = ExactMatrix.zeros(p.rows)
    e8 = eig.get(Fraction(-8), zero)
    return {
        "identity on V_0^-8": p @ e8 == e8,
        "zero on V_0^4": (p @ eig.get(Fraction(4), zero)).is_zero(),
        "zero on Q[o]": (p @ eig[Fraction(16)]).is_zero(),
    }


def murre_D_check(model: ChowModel, kappa: int = 1) -> tuple[bool, list[Fraction] | None]:
    """Whether pi4 kills CH_2 hom, with a witness vector from B if not."""
    ck = assemble_ck(model, kappa)
    restricted = ck.on_ch2_hom(4)
    if restricted.is_zero():
        return True, None
    B = model.block_basis(2, "B")
    for j in range(B.cols):
        v = B.col(j)
        if any(restricted.apply(v)):
            return False, v
    j = next(j for j in range(restricted.cols) if any(restricted.col(j)))
    return False, [Fraction(int(i == j)) for i in range(restricted.cols)]
