"""Tautological cycles on the Fano variety of lines F and on the cubic X.

Classes on F are finite combinations of basis symbols:

* monomials ``g^i c^j`` of codimension at most 3,
* ``Cx`` (lines through a general point x, codimension 3),
* ``o`` (the canonical zero-cycle),
* ``S[l]`` (lines meeting a fixed line l, codimension 2),
* ``pt[l]`` (the point of F given by l), and its images under the Voisin
  map written ``phi_*pt[l]``.

Coefficients are ``Fraction`` or ``GradedPoly`` (the latter when a
parameter is carried symbolically).  Codimension-4 monomials are reduced
to multiples of ``o``; anything past codimension 4 is zero.  Products not
covered by the multiplication table raise ``UnspecifiedProduct``.

On X the basis is ``[X]``, ``h``, ``h^2``, ``h^3``, the point class ``x``
and line classes ``line[l]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra.polynomial import GradedPoly, _is_scalar

__all__ = [
    "UnspecifiedProduct", "OutsideTable", "Point", "TautClassF", "ClassX",
    "F_UNIT", "G", "C", "CX", "O", "S", "pt", "X_UNIT", "H", "XPT", "line",
    "psi", "phi", "I_star", "gamma_h_pull", "gamma_h2_pull", "sigma2_class",
    "s_product", "cylinder_table", "MONOMIAL_TOP", "TOP_DEGREE",
]

TOP_DEGREE = 4

# top-degree monomials g^i c^j (i + 2j = 4) as multiples of o
MONOMIAL_TOP = {(4, 0): 108, (2, 1): 45, (0, 2): 27}


class UnspecifiedProduct(ValueError):
    """The multiplication table has no entry for this product."""


class OutsideTable(ValueError):
    """A cylinder map was applied outside its tabulated span."""


def _is_zero(c) -> bool:
    return not c


def _fmt_coeff(c) -> tuple[str, str]:
    """Split a coefficient into (sign, magnitude text)."""
    if isinstance(c, GradedPoly):
        if len(c.terms) == 1:
            (exps, k), = c.terms.items()
            sign = "-" if k < 0 else "+"
            s = str(-c if k < 0 else c)
            return sign, s
        return "+", f"({c})"
    c = Fraction(c)
    return ("-" if c < 0 else "+"), str(abs(c))


@dataclass(frozen=True, order=True)
class Point:
    """A point of F named by a line, pushed ``iterates`` times by the
    Voisin map."""

    name: str
    iterates: int = 0

    def __str__(self):
        inner = f"pt[{self.name}]"
        for _ in range(self.iterates):
            inner = f"phi_*({inner})"
        return inner


def _codim_F(key) -> int:
    kind = key[0]
    if kind == "m":
        return key[1] + 2 * key[2]
    return {"Cx": 3, "o": 4, "S": 2, "pt": 4}[kind]


def _name_F(key) -> str:
    kind = key[0]
    if kind == "m":
        i, j = key[1], key[2]
        parts = []
        if i:
            parts.append("g" if i == 1 else f"g^{i}")
        if j:
            parts.append("c" if j == 1 else f"c^{j}")
        return "*".join(parts) if parts else "F"
    if kind == "S":
        p = key[1]
        return f"S[{p.name}]" if not p.iterates else f"S[{p}]"
    if kind == "pt":
        return str(key[1])
    return kind


def _sort_key_F(key):
    kind = key[0]
    rank = {"m": 0, "S": 1, "Cx": 2, "o": 3, "pt": 4}[kind]
    if kind == "m":
        rest = (-key[1], key[2])
    elif kind in ("S", "pt"):
        rest = (key[1].name, key[1].iterates)
    else:
        rest = ()
    return (_codim_F(key), rank, rest)


class _Combination:
    """Shared bookkeeping for finite combinations of basis keys."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if _is_zero(c):
                continue
            if k in clean:
                c = clean[k] + c
                if _is_zero(c):
                    del clean[k]
                    continue
            clean[k] = c
        self.terms = clean

    def _new(self, terms):
        return type(self)(terms)

    def __add__(self, other):
        if _is_scalar(other) or isinstance(other, GradedPoly):
            other = type(self).unit() * other
        if type(other) is not type(self):
            return NotImplemented
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t[k] + c if k in t else c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if _is_scalar(other) or isinstance(other, GradedPoly):
            other = type(self).unit() * other
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return self._new({k: c * v for k, v in self.terms.items()})

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if type(other) is type(self):
            return self.terms == other.terms
        if _is_scalar(other) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, key):
        return self.terms.get(key, Fraction(0))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = type(self).unit()
        for _ in range(n):
            out = out * self
        return out

    def _format(self, name_of, sort_key):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=sort_key):
            sign, mag = _fmt_coeff(self.terms[k])
            name = name_of(k)
            if mag == "1":
                body = name
            else:
                body = f"{mag}*{name}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class TautClassF(_Combination):
    """Element of the modeled tautological ring of F."""

    __slots__ = ()

    def __init__(self, terms: Mapping | None = None):
        reduced = {}
        for k, c in (terms or {}).items():
            if k[0] == "m" and k[1] + 2 * k[2] >= TOP_DEGREE:
                if k[1] + 2 * k[2] > TOP_DEGREE:
                    continue
                c = c * MONOMIAL_TOP[(k[1], k[2])]
                k = ("o",)
            if k in reduced:
                reduced[k] = reduced[k] + c
            else:
                reduced[k] = c
        super().__init__(reduced)

    @classmethod
    def unit(cls) -> "TautClassF":
        return cls({("m", 0, 0): 1})

    @classmethod
    def monomial(cls, i: int, j: int = 0, coeff=1) -> "TautClassF":
        return cls({("m", i, j): coeff})

    def codims(self) -> set[int]:
        return {_codim_F(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.codims()) <= 1

    def codim(self) -> int | None:
        cs = self.codims()
        if len(cs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return next(iter(cs), None)

    def part(self, codim: int) -> "TautClassF":
        return TautClassF({k: c for k, c in self.terms.items() if _codim_F(k) == codim})

    def degree(self):
        """Degree of the zero-cycle part."""
        total = Fraction(0)
        for k, c in self.terms.items():
            if _codim_F(k) == TOP_DEGREE:
                total = total + c
        return total

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, GradedPoly):
            return self.scale(other)
        if not isinstance(other, TautClassF):
            return NotImplemented
        out = TautClassF()
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                prod = _basis_product_F(k1, k2)
                if prod:
                    out = out + prod.scale(c1 * c2)
        return out

    def __rmul__(self, other):
        if _is_scalar(other) or isinstance(other, GradedPoly):
            return self.scale(other)
        return NotImplemented

    def __str__(self):
        return self._format(_name_F, _sort_key_F)


def _basis_product_F(k1, k2) -> TautClassF:
    # order so that a monomial (if any) comes first
    if k2[0] == "m" and k1[0] != "m":
        k1, k2 = k2, k1
    total = _codim_F(k1) + _codim_F(k2)
    if total > TOP_DEGREE:
        return TautClassF()
    if k1 == ("m", 0, 0):
        return TautClassF({k2: 1})
    if k1[0] == "m" and k2[0] == "m":
        return TautClassF({("m", k1[1] + k2[1], k1[2] + k2[2]): 1})
    if k1 == ("m", 1, 0) and k2 == ("Cx",):
        return TautClassF({("o",): 6})
    if k1[0] == "m" and k2[0] == "S":
        p = k2[1]
        if k1 == ("m", 2, 0):
            return TautClassF({("pt", Point(p.name, p.iterates + 1)): 1,
                               ("pt", p): -4, ("o",): 24})
        if k1 == ("m", 0, 1):
            return TautClassF({("o",): 6})
    raise UnspecifiedProduct(f"no table entry for {_name_F(k1)} * {_name_F(k2)}")


F_UNIT = TautClassF.unit()
G = TautClassF.monomial(1)
C = TautClassF.monomial(0, 1)
CX = TautClassF({("Cx",): 1})
O = TautClassF({("o",): 1})


def _point(l) -> Point:
    if isinstance(l, Point):
        return l
    return Point(str(l))


def S(l) -> TautClassF:
    """Class of the surface of lines meeting ``l``.  ``S('o')`` is the
    special class one third of (g^2 - c) attached to the canonical point."""
    if l == "o":
        return (G * G - C).scale(Fraction(1, 3))
    return TautClassF({("S", _point(l)): 1})


def pt(l) -> TautClassF:
    if l == "o" or l == Point("o"):
        return O
    return TautClassF({("pt", _point(l)): 1})


# classes on X

def _codim_X(key) -> int:
    kind = key[0]
    if kind == "h":
        return key[1]
    return {"x": 4, "line": 3}[kind]


def _name_X(key) -> str:
    kind = key[0]
    if kind == "h":
        return {0: "X", 1: "h"}.get(key[1], f"h^{key[1]}")
    if kind == "line":
        p = key[1]
        return f"line[{p.name}]" if not p.iterates else f"line[{p}]"
    return kind


def _sort_key_X(key):
    return (_codim_X(key), key[0], str(key[1:]))


class ClassX(_Combination):
    """Element of the modeled Chow ring of the cubic fourfold."""

    __slots__ = ()

    def __init__(self, terms: Mapping | None = None):
        reduced = {}
        for k, c in (terms or {}).items():
            if k[0] == "h" and k[1] >= 4:
                if k[1] > 4:
                    continue
                k, c = ("x",), c * 3
            reduced[k] = reduced[k] + c if k in reduced else c
        super().__init__(reduced)

    @classmethod
    def unit(cls) -> "ClassX":
        return cls({("h", 0): 1})

    def codims(self) -> set[int]:
        return {_codim_X(k) for k in self.terms}

    def degree(self):
        return sum((c for k, c in self.terms.items() if k == ("x",)), Fraction(0))

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, GradedPoly):
            return self.scale(other)
        if not isinstance(other, ClassX):
            return NotImplemented
        out = ClassX()
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                prod = _basis_product_X(k1, k2)
                if prod:
                    out = out + prod.scale(c1 * c2)
        return out

    def __rmul__(self, other):
        if _is_scalar(other) or isinstance(other, GradedPoly):
            return self.scale(other)
        return NotImplemented

    def __str__(self):
        return self._format(_name_X, _sort_key_X)


def _basis_product_X(k1, k2) -> ClassX:
    if k2[0] == "h" and k1[0] != "h":
        k1, k2 = k2, k1
    if _codim_X(k1) + _codim_X(k2) > TOP_DEGREE:
        return ClassX()
    if k1 == ("h", 0):
        return ClassX({k2: 1})
    if k1[0] == "h" and k2[0] == "h":
        return ClassX({("h", k1[1] + k2[1]): 1})
    if k1 == ("h", 1) and k2[0] == "line":
        return ClassX({("x",): 1})
    raise UnspecifiedProduct(f"no table entry for {_name_X(k1)} * {_name_X(k2)}")


X_UNIT = ClassX.unit()
H = ClassX({("h", 1): 1})
XPT = ClassX({("x",): 1})


def line(l) -> ClassX:
    return ClassX({("line", _point(l)): 1})


# cylinder maps

# Psi: CH^i(F) -> CH^{i-1}(X)
_PSI = {
    ("m", 0, 0): ClassX(),
    ("m", 1, 0): ClassX({("h", 0): 6}),
    ("m", 2, 0): ClassX({("h", 1): 21}),
    ("m", 3, 0): ClassX({("h", 2): 36}),
    ("o",): ClassX({("h", 3): Fraction(1, 3)}),
}

# Phi: CH^i(X) -> CH^{i-1}(F)
_PHI = {
    ("h", 0): TautClassF(),
    ("h", 1): F_UNIT,
    ("h", 2): G,
    ("h", 3): G * G - C,
    ("x",): CX,
}


def _linear(table, key_fn, out_type, name_fn, u):
    out = out_type()
    for k, c in u.terms.items():
        img = key_fn(k)
        if img is None:
            raise OutsideTable(f"{name_fn(k)} is outside the tabulated span")
        out = out + img.scale(c)
    return out


def psi(u: TautClassF) -> ClassX:
    def image(k):
        if k in _PSI:
            return _PSI[k]
        if k[0] == "pt":
            return ClassX({("line", k[1]): 1})
        return None
    return _linear(_PSI, image, ClassX, _name_F, u)


def phi(v: ClassX) -> TautClassF:
    def image(k):
        if k in _PHI:
            return _PHI[k]
        if k[0] == "line":
            return TautClassF({("S", k[1]): 1})
        return None
    return _linear(_PHI, image, TautClassF, _name_X, v)


def I_star(u: TautClassF) -> TautClassF:
    return phi(psi(u))


def gamma_h_pull(u: TautClassF) -> TautClassF:
    return phi(H * psi(u))


def gamma_h2_pull(u: TautClassF) -> TautClassF:
    return phi(H * H * psi(u))


def sigma2_class() -> TautClassF:
    return (G * G - C).scale(5)


def cylinder_table() -> list[tuple[str, str, object]]:
    """The sixteen cylinder identities, each computed through psi/phi.

    Returns ``(left side, expected, computed)`` triples, with the left side
    as a DSL expression string.
    """
    g2, g3, g4 = G ** 2, G ** 3, G ** 4
    rows = [
        ("Psi(g)", ClassX({("h", 0): 6}), psi(G)),
        ("Psi(g^2)", ClassX({("h", 1): 21}), psi(g2)),
        ("Psi(g^3)", ClassX({("h", 2): 36}), psi(g3)),
        ("Psi(g^4)", ClassX({("h", 3): 36}), psi(g4)),
        ("push(I, g^2)", F_UNIT.scale(21), I_star(g2)),
        ("push(I, g^3)", G.scale(36), I_star(g3)),
        ("push(I, g^4)", (g2 - C).scale(36), I_star(g4)),
        ("push(I, o)", (g2 - C).scale(Fraction(1, 3)), I_star(O)),
        ("pull(Gh, g)", F_UNIT.scale(6), gamma_h_pull(G)),
        ("pull(Gh, g^2)", G.scale(21), gamma_h_pull(g2)),
        ("pull(Gh, g^3)", (g2 - C).scale(36), gamma_h_pull(g3)),
        ("pull(Gh, g^4)", CX.scale(108), gamma_h_pull(g4)),
        ("pull(Gh2, g)", G.scale(6), gamma_h2_pull(G)),
        ("pull(Gh2, g^2)", (g2 - C).scale(21), gamma_h2_pull(g2)),
        ("pull(Gh2, g^3)", CX.scale(108), gamma_h2_pull(g3)),
        ("pull(Gh2, g^4)", TautClassF(), gamma_h2_pull(g4)),
    ]
    return rows


def s_product(triangle: Iterable, edges: Iterable) -> TautClassF:
    """Product ``S[e1] * S[e2]`` for two edges of a declared triangle.

    ``triangle`` lists three points (repeats allowed for degenerate
    triangles, e.g. ``(l, l, Point(l, 1))`` for a line of the first type
    whose residual line is its Voisin image).  The result is
    ``6 o + [third] - [e1] - [e2]``, always of degree 5.
    """
    tri = [_point(p) for p in triangle]
    e1, e2 = (_point(p) for p in edges)
    if len(tri) != 3:
        raise ValueError("a triangle has three edges")
    rest = list(tri)
    for e in (e1, e2):
        if e not in rest:
            raise ValueError(f"{e} is not an edge of the declared triangle {tuple(map(str, tri))}")
        rest.remove(e)
    third = rest[0]
    return O.scale(6) + pt(third) - pt(e1) - pt(e2)
