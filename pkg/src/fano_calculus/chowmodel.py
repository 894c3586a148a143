"""Block model of the homologically trivial Chow groups of F.

The model has four free blocks with configurable ranks:

    A = V_2^{-2}, B = V_2^{4}   in CH_2 (codim 2)
    gA, C = V_1^{4}             in CH_1 (codim 3, modulo torsion)
    g^2 A, D = V_0^{4}          in CH_0 (codim 4), plus the line Q[o]

Only three primitive maps are modeled: multiplication by g (identity along
the A-chain, zero on B, C, D), multiplication by c (zero on homologically
trivial classes) and I_*, which sends g^2 A to A by -6 and kills D.
Everything else, including the Voisin map, is evaluated from correspondence
expressions through these primitives.  An optional seeded change of basis
per grade keeps the matrices from being trivially diagonal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra.matrix import ExactMatrix, minimal_polynomial, rational_roots, evaluate_at
from .algebra.noncommutative import FreeAlgebra, NCPoly, RewriteSystem, nc_normalize
from .algebra.polynomial import GradedPoly
from .correspondence import (
    CORR_VARS, PARAM_VARS, Atom, Compose, PolyFactor, Scale, Sum, Transpose, CorrExpr,
    act, codim,
)
from .tautological import O, I_star, Point, pt, s_product, TautClassF

__all__ = [
    "ChowModel", "build_model", "hom_model_of", "verify_minpolys", "expected_minpolys",
    "eigenprojectors", "verify_fourier", "verify_phi_of_o", "PhiOfO",
    "verify_intertwining", "derive_operator_relations", "Derivation", "voisin_alpha",
    "CHARACTER_TABLE", "AlphaResult", "random_ranks",
]

# actions on the cohomology characters omega (H^{2,0}) and omega^2 (H^{4,0})
CHARACTER_TABLE = {
    ("phi^*", "omega"): Fraction(-2),
    ("phi^*", "omega^2"): Fraction(4),
    ("I_*g^2", "omega"): Fraction(-6),
}

I_SCALAR = Fraction(-6)
DEFAULT_A = -2

# codimension -> (block name, dimension attribute) for the hom-trivial parts
_LAYOUT = {2: ("A", "B"), 3: ("gA", "C"), 4: ("g2A", "D")}


def _random_unimodular(n: int, rng: random.Random) -> ExactMatrix:
    if n == 0:
        return ExactMatrix.zeros(0)
    upper = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
    lower = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)] for i in range(n)]
    return ExactMatrix(upper) @ ExactMatrix(lower)


def _poly_coeff_value(c: Fraction, a_exp: int, a) -> Fraction:
    return c * Fraction(a) ** a_exp


def hom_model_of(name: str, a=None) -> CorrExpr:
    """How an atom acts on homologically trivial cycles, as an expression
    in the primitive atoms.

    ``I1`` factors through planes and acts as zero; ``I2`` acts as
    ``(a^2 - a - 1) g1^2 . I``; the graph of the Voisin map is whatever
    remains of the key identity after removing these two.
    """
    av, g1, g2, _, _ = GradedPoly.gens(CORR_VARS)
    if a is not None:
        av = GradedPoly.constant(CORR_VARS, a)
    if name == "I1":
        return Sum(())
    if name == "I2":
        return PolyFactor((av ** 2 - av - 1) * g1 ** 2, Atom("I"))
    if name == "Gphi":
        # key identity minus I2; the Gh, Gh2 terms vanish on hom-trivial classes
        from .chern import key_identity
        rhs = key_identity(a).rhs
        return Sum(rhs.terms + (Scale(Fraction(-1), hom_model_of("I2", a)),))
    raise ValueError(f"{name} is primitive")


@dataclass
class ChowModel:
    """Configurable block model; build with :func:`build_model`."""

    ranks: tuple[int, int, int, int]
    a: int | Fraction = DEFAULT_A
    basis_seed: int | None = None
    _basis: dict = field(default_factory=dict, repr=False)
    _basis_inv: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.ranks) != 4 or any(r < 0 for r in self.ranks):
            raise ValueError(f"ranks must be four nonnegative integers, got {self.ranks}")
        self.ranks = tuple(int(r) for r in self.ranks)
        rng = random.Random(self.basis_seed) if self.basis_seed is not None else None
        for k in (2, 3, 4):
            n = self.dim(k)
            P = _random_unimodular(n, rng) if rng else ExactMatrix.identity(n)
            self._basis[k] = P
            self._basis_inv[k] = P.inverse() if n else P

    # layout

    @property
    def m(self):
        return self.ranks[0]

    def block_sizes(self, codim: int) -> tuple[int, int]:
        m, n, p, q = self.ranks
        return {2: (m, n), 3: (m, p), 4: (m, q)}.get(codim, (0, 0))

    def dim(self, codim: int) -> int:
        return sum(self.block_sizes(codim))

    def block_basis(self, codim: int, block: str) -> ExactMatrix:
        """Columns spanning a named block, in the working basis."""
        names = _LAYOUT[codim]
        sizes = self.block_sizes(codim)
        n = self.dim(codim)
        start = 0 if block == names[0] else sizes[0]
        size = sizes[names.index(block)]
        cols = ExactMatrix([[1 if i == start + j else 0 for j in range(size)] for i in range(n)], n, size)
        return self._basis_inv[codim] @ cols

    def _conj(self, M: ExactMatrix, src: int, dst: int) -> ExactMatrix:
        """Map from standard-block coordinates into the working bases."""
        if src not in self._basis or dst not in self._basis:
            return M
        return self._basis_inv[dst] @ M @ self._basis[src]

    # primitive maps in standard coordinates

    def _std_g(self, src: int) -> ExactMatrix:
        dst = src + 1
        m = self.m
        out = ExactMatrix.zeros(self.dim(dst), self.dim(src))
        if src in (2, 3):
            rows = [[1 if (i == j and i < m) else 0 for j in range(self.dim(src))] for i in range(self.dim(dst))]
            out = ExactMatrix(rows, self.dim(dst), self.dim(src))
        return out

    def _std_I(self, src: int) -> ExactMatrix:
        dst = src - 2
        m = self.m
        if src == 4:
            rows = [[I_SCALAR if (i == j and i < m) else 0 for j in range(self.dim(4))] for i in range(self.dim(2))]
            return ExactMatrix(rows, self.dim(2), self.dim(4))
        return ExactMatrix.zeros(self.dim(dst), self.dim(src))

    def g(self, src: int) -> ExactMatrix:
        return self._conj(self._std_g(src), src, src + 1)

    def I(self, src: int) -> ExactMatrix:
        return self._conj(self._std_I(src), src, src - 2)

    def identity(self, codim: int) -> ExactMatrix:
        return ExactMatrix.identity(self.dim(codim))

    # correspondence evaluation

    def _mono(self, i: int, k: int, src: int) -> ExactMatrix:
        """Multiplication by g^i c^k from codim ``src``."""
        if k:
            return ExactMatrix.zeros(self.dim(src + i + 2 * k), self.dim(src))
        out = self.identity(src)
        for s in range(i):
            out = self.g(src + s) @ out
        return out

    def action(self, e: CorrExpr, src: int, direction: str = "push") -> ExactMatrix:
        """Matrix of ``e`` from codim ``src`` hom-trivial classes."""
        key = (e, src, direction)
        if key in self._cache:
            return self._cache[key]
        dst = src + self._codim(e) - 4
        if isinstance(e, Atom):
            name = e.name
            if name == "D":
                out = self.identity(src)
            elif name == "I":
                out = self.I(src)
            elif name in ("Gh", "Gh2", "FxF", "FxO", "OxF"):
                out = ExactMatrix.zeros(self.dim(dst), self.dim(src))
            else:
                out = self.action(hom_model_of(name, self.a), src, direction)
        elif isinstance(e, Sum):
            out = ExactMatrix.zeros(self.dim(dst), self.dim(src))
            for t in e.terms:
                out = out + self.action(t, src, direction)
        elif isinstance(e, Scale):
            out = self.action(e.body, src, direction) * e.coeff
        elif isinstance(e, Transpose):
            out = self.action(e.body, src, "pull" if direction == "push" else "push")
        elif isinstance(e, Compose):
            if direction == "push":
                mid = src + self._codim(e.right) - 4
                out = self.action(e.left, mid, "push") @ self.action(e.right, src, "push")
            else:
                mid = src + self._codim(e.left) - 4
                out = self.action(e.right, mid, "pull") @ self.action(e.left, src, "pull")
        elif isinstance(e, PolyFactor):
            out = ExactMatrix.zeros(self.dim(dst), self.dim(src))
            body_codim = self._codim(e.body)
            for (ea, eg1, eg2, ec1, ec2), c in e.poly.terms.items():
                coeff = _poly_coeff_value(c, ea, self.a)
                si, sk, ti, tk = eg1, ec1, eg2, ec2
                if direction == "pull":
                    si, sk, ti, tk = ti, tk, si, sk
                mid = src + si + 2 * sk
                after = mid + body_codim - 4
                out = out + (self._mono(ti, tk, after) @ self.action(e.body, mid, direction)
                             @ self._mono(si, sk, src)) * coeff
        else:
            raise TypeError(f"not a correspondence: {e!r}")
        self._cache[key] = out
        return out

    @staticmethod
    def _codim(e: CorrExpr) -> int:
        return codim(e)

    # named operators, indexed by dimension (grade) 0, 1, 2

    def N(self, grade: int) -> ExactMatrix:
        k = 4 - grade
        if grade == 2:
            return self.I(4) @ self.g(3) @ self.g(2)
        if grade == 1:
            return self.g(2) @ self.I(4) @ self.g(3)
        if grade == 0:
            return self.g(3) @ self.g(2) @ self.I(4)
        raise ValueError(f"grade {grade} not in 0..2 (codim {k})")

    def phi_pull(self, grade: int) -> ExactMatrix:
        """phi^* on the hom-trivial part of CH_grade."""
        return self.action(Atom("Gphi"), 4 - grade, "pull")

    def phi_push(self, grade: int) -> ExactMatrix:
        return self.action(Atom("Gphi"), 4 - grade, "push")

    def phi_pull_full0(self) -> ExactMatrix:
        """phi^* on all of CH_0 = Q[o] + hom-trivial part, o first."""
        res = verify_phi_of_o()
        return ExactMatrix.block_diag(ExactMatrix([[res.phi_pull_o]]), self.phi_pull(0))

    def phi_push_full0(self) -> ExactMatrix:
        res = verify_phi_of_o()
        return ExactMatrix.block_diag(ExactMatrix([[res.phi_push_o]]), self.phi_push(0))

    def invariants(self) -> dict[str, bool]:
        """Structural identities the model must satisfy."""
        out = {}
        for grade in (0, 1, 2):
            N = self.N(grade)
            out[f"N{grade}^2 = -6 N{grade}"] = N @ N == N * -6
        one = self.identity
        out["phi^* = 4 + N on CH_2"] = self.phi_pull(2) == one(2) * 4 + self.N(2)
        out["phi_* = 4 + 2N on CH_2"] = self.phi_push(2) == one(2) * 4 + self.N(2) * 2
        out["phi^* = 4 + 3N on CH_1"] = self.phi_pull(1) == one(3) * 4 + self.N(1) * 3
        out["phi_* = 4 + 3N on CH_1"] = self.phi_push(1) == one(3) * 4 + self.N(1) * 3
        out["phi^* = 4 + 2N on CH_0"] = self.phi_pull(0) == one(4) * 4 + self.N(0) * 2
        out["phi_* = 4 + N on CH_0"] = self.phi_push(0) == one(4) * 4 + self.N(0)
        for grade, k in ((2, 2), (0, 4)):
            prod = self.phi_push(grade) @ self.phi_pull(grade)
            out[f"phi_* phi^* = 16 on CH_{grade}"] = prod == one(k) * 16
            out[f"phi^* phi_* = 16 on CH_{grade}"] = self.phi_pull(grade) @ self.phi_push(grade) == one(k) * 16
        full = self.phi_push_full0() @ self.phi_pull_full0()
        out["phi_* phi^* = 16 on all of CH_0"] = full == ExactMatrix.identity(full.rows) * 16
        out["g N = N g (2 -> 1)"] = self.g(2) @ self.N(2) == self.N(1) @ self.g(2)
        out["g N = N g (1 -> 0)"] = self.g(3) @ self.N(1) == self.N(0) @ self.g(3)
        kernel = self.g(2).nullspace()
        K = ExactMatrix([list(r) for r in zip(*kernel)], self.dim(2), len(kernel)) if kernel \
            else ExactMatrix.zeros(self.dim(2), 0)
        out["ker g on CH_2 = B"] = K.same_column_space(self.block_basis(2, "B"))
        return out


def build_model(ranks: Sequence[int], a=DEFAULT_A, basis_seed: int | None = None) -> ChowModel:
    return ChowModel(tuple(ranks), a, basis_seed)


def random_ranks(rng: random.Random, low: int = 0, high: int = 4) -> tuple[int, int, int, int]:
    return tuple(rng.randint(low, high) for _ in range(4))


# minimal polynomials and eigenprojectors

def expected_minpolys(model: ChowModel) -> dict[str, list[Fraction]]:
    """Expected roots of each minimal polynomial, given which blocks are
    nonempty."""
    m, n, p, q = model.ranks
    six_a = 6 * Fraction(model.a) - 2
    return {
        "phi^* on CH_2 hom": [r for r, k in ((-2, m), (4, n)) if k],
        "phi^* on CH_1 hom": [r for r, k in ((six_a, m), (4, p)) if k],
        "phi^* on CH_0": [16] + [r for r, k in ((-8, m), (4, q)) if k],
        "phi_* on CH_2 hom": [r for r, k in ((-8, m), (4, n)) if k],
    }


def _operator(model: ChowModel, label: str) -> ExactMatrix:
    return {
        "phi^* on CH_2 hom": lambda: model.phi_pull(2),
        "phi^* on CH_1 hom": lambda: model.phi_pull(1),
        "phi^* on CH_0": model.phi_pull_full0,
        "phi_* on CH_2 hom": lambda: model.phi_push(2),
    }[label]()


def verify_minpolys(model: ChowModel) -> list[dict]:
    out = []
    for label, roots in expected_minpolys(model).items():
        M = _operator(model, label)
        got = minimal_polynomial(M)
        want = GradedPoly.from_roots(sorted(roots))
        out.append({
            "operator": label,
            "expected": str(want),
            "computed": str(got),
            "kills": evaluate_at(got, M).is_zero(),
            "ok": got == want,
        })
    return out


def eigenprojectors(model: ChowModel, grade: int, operator: str = "pull") -> dict[Fraction, ExactMatrix]:
    """Spectral projectors of phi^* (or phi_*) on a grade, by Lagrange
    interpolation over the rational roots of the minimal polynomial.

    Grade 0 uses all of CH_0 (with the o-line first); grades 1, 2 use the
    hom-trivial part.
    """
    if grade == 0:
        M = model.phi_pull_full0() if operator == "pull" else model.phi_push_full0()
    else:
        M = model.phi_pull(grade) if operator == "pull" else model.phi_push(grade)
    mp = minimal_polynomial(M)
    roots = rational_roots(mp)
    if len(roots) != mp.degree():
        raise ValueError(f"minimal polynomial {mp} does not split into distinct rational roots")
    one = ExactMatrix.identity(M.rows)
    out = {}
    for lam in roots:
        E = one
        for mu in roots:
            if mu != lam:
                E = E @ (M - one * mu) * (Fraction(1) / (lam - mu))
        out[lam] = E
    return out


# individual verifications

def verify_fourier(model: ChowModel) -> dict:
    left = model.I(4) @ model.phi_push(0)
    right = model.phi_pull(2) @ model.I(4)
    D = model.block_basis(4, "D")
    return {
        "equal": left == right,
        "vanish_on_D": (left @ D).is_zero() and (right @ D).is_zero(),
        "left": left, "right": right,
    }


@dataclass(frozen=True)
class PhiOfO:
    i_star_o: TautClassF
    square: TautClassF
    phi_push_o: Fraction
    phi_pull_o: Fraction


def verify_phi_of_o() -> PhiOfO:
    """phi_* and phi^* on the canonical zero-cycle.

    I_* o = S_o is squared in the tautological ring and compared with the
    self-intersection rule for a line of the first type,
    ``S_o^2 = 6 o + phi_* o - 2 o``; the unknown ``phi_* o`` is read off.
    """
    s_o = I_star(O)
    square = s_o * s_o
    formula = s_product(("o", "o", Point("o", 1)), ("o", "o"))
    unknown = pt(Point("o", 1))
    known_part = formula - unknown
    solved = square - known_part
    if set(solved.terms) - {("o",)}:
        raise ValueError(f"phi_* o is not a multiple of o: {solved}")
    phi_push_o = solved.coefficient(("o",))
    # phi_* phi^* = 16 on the o-line
    return PhiOfO(s_o, square, phi_push_o, Fraction(16) / phi_push_o)


def verify_intertwining(model: ChowModel) -> dict:
    res = {}
    res["g N2 = N1 g"] = model.g(2) @ model.N(2) == model.N(1) @ model.g(2)
    res["g N1 = N0 g"] = model.g(3) @ model.N(1) == model.N(0) @ model.g(3)
    kernel = model.g(2).nullspace()
    K = ExactMatrix([list(r) for r in zip(*kernel)], model.dim(2), len(kernel)) if kernel \
        else ExactMatrix.zeros(model.dim(2), 0)
    res["ker g on CH_2 hom = B"] = K.same_column_space(model.block_basis(2, "B"))
    A = model.block_basis(2, "A")
    g1A = model.g(2) @ A
    g2A = model.g(3) @ g1A
    lam1 = 6 * Fraction(model.a) - 2
    res["phi^*(g s) = (6a-2) g s on A"] = model.phi_pull(1) @ g1A == g1A * lam1
    res["phi^*(g^2 s) = -8 g^2 s on A"] = model.phi_pull(0) @ g2A == g2A * -8
    res["phi^* s = -2 s on A"] = model.phi_pull(2) @ A == A * -2
    proj = eigenprojectors(model, 0)
    target = proj.get(Fraction(-8))
    if target is None:
        res["g^2: A -> V_0^-8 bijective"] = model.m == 0
    else:
        hom_part = target.submatrix(range(1, target.rows), range(1, target.cols))
        res["g^2: A -> V_0^-8 bijective"] = (g2A.rank() == model.m
                                             and g2A.same_column_space(hom_part))
    # g^2 I_* x = -6 x on V_0^{-8}
    res["g^2 I_* = -6 on V_0^-8"] = model.g(3) @ model.g(2) @ model.I(4) @ g2A == g2A * -6
    res["ok"] = all(res.values())
    return res


# noncommutative derivation

@dataclass
class Derivation:
    steps: list = field(default_factory=list)
    rules: list = field(default_factory=list)
    claims: dict = field(default_factory=dict)
    i2_coefficient: GradedPoly | None = None

    @property
    def ok(self) -> bool:
        return all(v == 0 for v in self.claims.values())

    def as_dict(self) -> dict:
        return {
            "steps": [{"step": s, "normal_form": str(nf)} for s, nf in self.steps],
            "rules": [f"{'*'.join(l)} -> {r}" for l, r in self.rules],
            "claims": {k: str(v) for k, v in self.claims.items()},
            "i2_coefficient": str(self.i2_coefficient),
        }


def _solve_for(p: NCPoly, word: tuple) -> tuple[tuple, NCPoly]:
    """Turn ``p = 0`` into a rule ``word -> ...``."""
    c = p.terms.get(word)
    if not c:
        raise ValueError(f"{'*'.join(word)} does not occur in {p}")
    rest = NCPoly(p.algebra, {w: v for w, v in p.terms.items() if w != word})
    return word, rest * (Fraction(-1) / c)


def derive_operator_relations(a=DEFAULT_A) -> Derivation:
    """From phi^* = 4 + T, phi_* T = -8 T and phi_* phi^* = 16 derive the
    remaining operator identities by rewriting.

    Symbols: P = phi^*, Q = phi_*, T = I_*(g^2 . -).
    """
    alg = FreeAlgebra(["P", "Q", "T"])
    P, Q, T = alg.gens()
    d = Derivation()
    rules = [(("P",), 4 + T), (("Q", "T"), -8 * T)]
    sys1 = RewriteSystem(alg, rules)
    nf = nc_normalize(Q * P - 16, sys1)
    d.steps.append(("phi_* phi^* - 16 under {P -> 4 + T, QT -> -8T}", nf))
    q_rule = _solve_for(nf, ("Q",))
    d.steps.append(("solve for phi_*", NCPoly(alg, {("Q",): 1}) - q_rule[1]))
    sys2 = RewriteSystem(alg, [rules[0], q_rule])
    nf2 = nc_normalize(Q * T + 8 * T, sys2)
    d.steps.append(("phi_* T + 8T under {P -> 4 + T, Q -> 4 + 2T}", nf2))
    t_rule = _solve_for(nf2, ("T", "T"))
    final = RewriteSystem(alg, [rules[0], q_rule, t_rule])
    d.rules = list(final.rules)
    claims = {
        "phi_* = 4 + 2T": Q - (4 + 2 * T),
        "T = phi_* - phi^*": T - (Q - P),
        "T^2 = -6T": T * T + 6 * T,
        "(phi^* - 4)(phi^* + 2) = 0": (P - 4) * (P + 2),
        "(phi_* - 4)(phi_* + 8) = 0": (Q - 4) * (Q + 8),
        "phi_* phi^* = 16": Q * P - 16,
        "phi^* phi_* = 16": P * Q - 16,
        "phi_* T = -8T": Q * T + 8 * T,
    }
    for name, expr in claims.items():
        d.claims[name] = nc_normalize(expr, final)
    # I2 push on CH_2 hom: key identity gives phi_* + I2 = 4 + (a^2 - a + 1) T
    av = GradedPoly.var(PARAM_VARS, "a")
    i2 = (av ** 2 - av + 1) - q_rule[1].terms.get(("T",), Fraction(0))
    d.i2_coefficient = i2
    d.claims["(I2)_* = 5T"] = (i2.subs({"a": a}).constant_value() - 5) * T
    return d


@dataclass(frozen=True)
class AlphaResult:
    alpha: Fraction
    alpha_from_characters: Fraction
    gamma1: GradedPoly
    residual: TautClassF


def voisin_alpha() -> AlphaResult:
    """The constant in I^2 = alpha D + Gamma_1 . I + (polynomial terms).

    Two routes: on H^{4,0}, I^2 acts as phi^* - 2 (from the self-intersection
    rule for S_l) and Gamma_1 . I acts as 0; on a point [l], comparing the
    coefficient of [l] in S_l^2 with that of (Gamma_1 . I)_*[l].  Gamma_1 is
    the h-free part of c2 of the normal bundle.  What is left over must be a
    multiple of o, absorbed by the polynomial terms.
    """
    from .chern import chern_input
    s_sq = s_product(("l", "l", Point("l", 1)), ("l", "l"))
    # character on omega^2: o -> 0, [l] -> 1, phi_*[l] -> phi^* eigenvalue
    char = {("o",): Fraction(0), ("pt", Point("l")): Fraction(1),
            ("pt", Point("l", 1)): CHARACTER_TABLE[("phi^*", "omega^2")]}
    alpha_char = sum((c * char[k] for k, c in s_sq.terms.items()), Fraction(0))
    c2n = chern_input().c2_normal
    h_free = GradedPoly(c2n.variables, {e: c for e, c in c2n.terms.items() if e[3] == 0})
    gamma1 = h_free.rename(CORR_VARS, {"g1t": "g1", "g2t": "g2"})
    image = act(PolyFactor(gamma1, Atom("I")), pt("l"), "push")
    key = ("pt", Point("l"))
    alpha = s_sq.coefficient(key) - image.coefficient(key)
    residual = s_sq - image - pt("l").scale(alpha)
    if set(residual.terms) - {("o",)}:
        raise ValueError(f"residual {residual} is not a multiple of o")
    return AlphaResult(alpha, alpha_char, gamma1, residual)
