"""Free associative algebras over Q with a transpose involution, and
normal forms under a word-rewriting system.

Words are tuples of symbol names; the empty word is the unit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .polynomial import _frac, _is_scalar

__all__ = ["FreeAlgebra", "NCPoly", "RewriteSystem", "NormalizationError", "nc_normalize"]

Word = tuple


class NormalizationError(RuntimeError):
    """Rewriting did not reach a fixed point within the pass budget."""

    def __init__(self, message: str, term: Word | None = None, partial: "NCPoly | None" = None):
        super().__init__(message)
        self.term = term
        self.partial = partial


class FreeAlgebra:
    """Alphabet plus an involution on symbols (used for transposes).

    Symbols not mentioned in ``involution`` are treated as self-transpose.
    """

    def __init__(self, symbols: Sequence[str], involution: Mapping[str, str] | None = None):
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("repeated symbol in alphabet")
        inv = {s: s for s in self.symbols}
        for a, b in (involution or {}).items():
            if a not in inv or b not in inv:
                raise ValueError(f"involution pair ({a}, {b}) outside alphabet")
            inv[a] = b
            inv[b] = a
        for s, t in inv.items():
            if inv[t] != s:
                raise ValueError(f"involution is not an involution at {s}")
        self.involution = inv

    def gen(self, name: str) -> "NCPoly":
        if name not in self.involution:
            raise KeyError(f"unknown symbol {name}")
        return NCPoly(self, {(name,): 1})

    def gens(self) -> tuple["NCPoly", ...]:
        return tuple(self.gen(s) for s in self.symbols)

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): 1})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def scalar(self, c) -> "NCPoly":
        return NCPoly(self, {(): c})

    def __eq__(self, other):
        return (isinstance(other, FreeAlgebra) and self.symbols == other.symbols
                and self.involution == other.involution)

    def __hash__(self):
        return hash((self.symbols, tuple(sorted(self.involution.items()))))

    def __repr__(self):
        return f"FreeAlgebra({list(self.symbols)})"


class NCPoly:
    """Element of a free algebra: a finite Q-combination of words."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Iterable[str], object] | None = None):
        self.algebra = algebra
        clean: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            for s in w:
                if s not in algebra.involution:
                    raise KeyError(f"symbol {s} not in alphabet")
            c = _frac(c)
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @property
    def alphabet(self):
        return self.algebra.symbols

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            if other.algebra != self.algebra:
                raise ValueError("polynomials over different algebras")
            return other
        if _is_scalar(other):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for w, c in o.terms.items():
            t[w] = t.get(w, Fraction(0)) + c
        return NCPoly(self.algebra, t)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                t[w] = t.get(w, Fraction(0)) + c1 * c2
        return NCPoly(self.algebra, t)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def transpose(self) -> "NCPoly":
        inv = self.algebra.involution
        return NCPoly(self.algebra, {tuple(inv[s] for s in reversed(w)): c
                                     for w, c in self.terms.items()})

    @property
    def T(self) -> "NCPoly":
        return self.transpose()

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.algebra == other.algebra and self.terms == other.terms
        if _is_scalar(other):
            return self.terms == ({(): _frac(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"NCPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            word = "*".join(w)
            mag = abs(c)
            if not word:
                body = str(mag)
            elif mag == 1:
                body = word
            else:
                body = f"{mag}*{word}"
            out.append(("-" if c < 0 else "+", body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


class RewriteSystem:
    """Ordered rules ``left word -> NCPoly`` applied leftmost first.

    Every right-hand term must be no longer than its left word; this keeps
    normal forms inside a finite-dimensional span, though it does not by
    itself guarantee termination (``max_passes`` is the safety net).
    """

    def __init__(self, algebra: FreeAlgebra, rules: Sequence[tuple[Iterable[str], object]],
                 max_passes: int = 1000):
        if max_passes < 1:
            raise ValueError("max_passes must be positive")
        self.algebra = algebra
        self.max_passes = max_passes
        checked = []
        for left, right in rules:
            left = tuple(left)
            if not left:
                raise ValueError("rule with empty left side")
            if not isinstance(right, NCPoly):
                right = algebra.scalar(right)
            if right.algebra != algebra:
                raise ValueError("rule right side over a different algebra")
            if right.max_length() > len(left):
                raise ValueError(f"rule {left} -> {right} increases word length")
            checked.append((left, right))
        self.rules = tuple(checked)

    def reordered(self, order: Sequence[int]) -> "RewriteSystem":
        return RewriteSystem(self.algebra, [self.rules[i] for i in order], self.max_passes)

    def find_redex(self, word: Word):
        """Return ``(position, rule index)`` of the leftmost match, or None.

        Among rules matching at the same position the earliest rule wins.
        """
        for pos in range(len(word)):
            for k, (left, _) in enumerate(self.rules):
                if word[pos:pos + len(left)] == left:
                    return pos, k
        return None


def nc_normalize(p: NCPoly, system: RewriteSystem) -> NCPoly:
    """Rewrite ``p`` until no rule applies anywhere.

    Each pass rewrites the leftmost redex of every reducible term once.
    Raises ``NormalizationError`` naming a still-reducible term if the
    budget of passes runs out.
    """
    if p.algebra != system.algebra:
        raise ValueError("polynomial and rewrite system use different algebras")
    current = p
    for _ in range(system.max_passes):
        changed = False
        out: dict[Word, Fraction] = {}
        for w, c in current.terms.items():
            hit = system.find_redex(w)
            if hit is None:
                out[w] = out.get(w, Fraction(0)) + c
                continue
            changed = True
            pos, k = hit
            left, right = system.rules[k]
            pre, post = w[:pos], w[pos + len(left):]
            for rw, rc in right.terms.items():
                nw = pre + rw + post
                out[nw] = out.get(nw, Fraction(0)) + c * rc
        current = NCPoly(p.algebra, out)
        if not changed:
            return current
    for w in current.terms:
        if system.find_redex(w) is not None:
            raise NormalizationError(
                f"no normal form after {system.max_passes} passes; term {'*'.join(w)} still reducible",
                term=w, partial=current)
    return current
