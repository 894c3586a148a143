"""Graded commutative polynomials with exact rational coefficients.

Each variable carries a nonnegative weight.  Weight-zero variables behave as
parameters: they never count toward the truncation bound, so an identity can
be checked symbolically in a parameter before any value is substituted.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

__all__ = ["GradedPoly", "VariableMismatch"]


class VariableMismatch(ValueError):
    """Raised when two polynomials live over different variable tables."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, _RationalABC)) and not isinstance(x, bool)


class GradedPoly:
    """Sparse polynomial over ``variables``, a tuple of ``(name, weight)``.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    Terms whose weighted degree exceeds ``bound`` are discarded on
    construction.
    """

    __slots__ = ("variables", "terms", "bound", "_hash")

    def __init__(self, variables: Iterable[tuple[str, int]], terms: Mapping | None = None,
                 bound: int | None = None):
        self.variables = tuple((str(n), int(d)) for n, d in variables)
        names = [n for n, _ in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if any(d < 0 for _, d in self.variables):
            raise ValueError("variable weights must be nonnegative")
        self.bound = bound
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c = _frac(c)
            if c == 0:
                continue
            if bound is not None and self._weight(exps) > bound:
                continue
            clean[exps] = clean.get(exps, Fraction(0)) + c
            if clean[exps] == 0:
                del clean[exps]
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def var(cls, variables, name: str, bound: int | None = None) -> "GradedPoly":
        variables = tuple(variables)
        idx = [n for n, _ in variables].index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {exps: 1}, bound)

    @classmethod
    def constant(cls, variables, value, bound: int | None = None) -> "GradedPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value}, bound)

    @classmethod
    def gens(cls, variables, bound: int | None = None) -> tuple["GradedPoly", ...]:
        variables = tuple(variables)
        return tuple(cls.var(variables, n, bound) for n, _ in variables)

    @classmethod
    def univariate(cls, coeffs: Iterable, name: str = "x") -> "GradedPoly":
        """Build ``sum(coeffs[k] * name**k)``."""
        return cls(((name, 1),), {(k,): c for k, c in enumerate(coeffs)})

    @classmethod
    def from_roots(cls, roots: Iterable, name: str = "x") -> "GradedPoly":
        x = cls.var(((name, 1),), name)
        out = cls.constant(((name, 1),), 1)
        for r in roots:
            out = out * (x - r)
        return out

    # basic data

    def _weight(self, exps) -> int:
        return sum(e * d for e, (_, d) in zip(exps, self.variables))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    def weighted_degree(self, exps) -> int:
        return self._weight(exps)

    def degree(self) -> int:
        """Largest weighted degree of a term; -1 for the zero polynomial."""
        return max((self._weight(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {self._weight(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def coefficient(self, monomial: Mapping[str, int] | None = None, **kw) -> Fraction:
        mono = dict(monomial or {}, **kw)
        unknown = set(mono) - set(self.names)
        if unknown:
            raise KeyError(f"unknown variables {sorted(unknown)}")
        exps = tuple(mono.get(n, 0) for n in self.names)
        return self.terms.get(exps, Fraction(0))

    def coefficient_in(self, names: Iterable[str], monomial: Mapping[str, int]) -> "GradedPoly":
        """Coefficient of ``monomial`` in the variables ``names``, as a
        polynomial in the remaining variables (same table)."""
        names = set(names)
        idx = [i for i, n in enumerate(self.names) if n in names]
        target = {i: monomial.get(self.names[i], 0) for i in idx}
        out = {}
        for exps, c in self.terms.items():
            if all(exps[i] == target[i] for i in idx):
                key = tuple(0 if i in target else e for i, e in enumerate(exps))
                out[key] = out.get(key, Fraction(0)) + c
        return GradedPoly(self.variables, out, self.bound)

    def monomials(self):
        """Yield ``(exponent dict, coefficient)`` pairs in sorted order."""
        for exps in sorted(self.terms, reverse=True):
            yield dict(zip(self.names, exps)), self.terms[exps]

    # arithmetic

    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            if other.variables != self.variables:
                raise VariableMismatch(f"{self.names} vs {other.names}")
            return other
        if _is_scalar(other):
            return GradedPoly.constant(self.variables, other, self.bound)
        return NotImplemented

    def _bound_with(self, other: "GradedPoly"):
        bounds = [b for b in (self.bound, other.bound) if b is not None]
        return min(bounds) if bounds else None

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return GradedPoly(self.variables, terms, self._bound_with(o))

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.variables, {e: -c for e, c in self.terms.items()}, self.bound)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        bound = self._bound_with(o)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if bound is not None and self._weight(e) > bound:
                    continue
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return GradedPoly(self.variables, terms, bound)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = GradedPoly.constant(self.variables, 1, self.bound)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def subs(self, values: Mapping[str, object]) -> "GradedPoly":
        """Substitute scalars or polynomials (over this table) for variables."""
        unknown = set(values) - set(self.names)
        if unknown:
            raise KeyError(f"unknown variables {sorted(unknown)}")
        out = GradedPoly(self.variables, {}, self.bound)
        for exps, c in self.terms.items():
            term = GradedPoly.constant(self.variables, c, self.bound)
            keep = list(exps)
            for i, name in enumerate(self.names):
                if name in values and exps[i]:
                    v = values[name]
                    term = term * (v ** exps[i] if isinstance(v, GradedPoly) else _frac(v) ** exps[i])
                    keep[i] = 0
            mono = GradedPoly(self.variables, {tuple(keep): 1}, self.bound)
            out = out + term * mono
        return out

    def rename(self, variables, mapping: Mapping[str, str] | None = None) -> "GradedPoly":
        """Re-express over another table; ``mapping`` sends old names to new.

        Variables missing from the new table must not occur in any term.
        """
        mapping = dict(mapping or {})
        new_names = [n for n, _ in variables]
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(new_names)
            for name, e in zip(self.names, exps):
                if not e:
                    continue
                target = mapping.get(name, name)
                if target not in new_names:
                    raise VariableMismatch(f"variable {name} has no image in {new_names}")
                new[new_names.index(target)] += e
            out[tuple(new)] = out.get(tuple(new), Fraction(0)) + c
        return GradedPoly(variables, out)

    # comparison and display

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.variables == other.variables and self.terms == other.terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GradedPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        order = sorted(self.terms, key=lambda e: (-self._weight(e), tuple(-x for x in e)))
        for exps in order:
            c = self.terms[exps]
            factors = []
            for name, e in zip(self.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
