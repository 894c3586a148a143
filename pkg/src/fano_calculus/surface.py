"""The 27 lines on a smooth cubic surface, seen as the blow-up of the plane
in six points.

Classes live in the rank-7 lattice with basis (L; E1..E6) and form
``l*l' - sum(e_i*e_i')``.  Lines come in three families: the exceptional
curves ``E_i``, strict transforms ``L_ij`` of the line through two points,
and strict transforms ``C_i`` of the conic through five of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "SurfaceClass", "LineLabel", "Triangle", "PairCertificate", "HYPERPLANE",
    "enumerate_lines", "all_labels", "line_class", "meets", "enumerate_triangles",
    "is_triangle", "secant_lines", "verify_pair_decomposition", "find_triangle_partition",
    "disjoint_pairs", "permute_label", "reference_certificate", "DecompositionNotFound",
]

INDICES = range(1, 7)


@dataclass(frozen=True)
class SurfaceClass:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != 7:
            raise ValueError("surface classes have 7 coordinates (l; e1..e6)")

    @classmethod
    def of(cls, l: int, e: Sequence[int]) -> "SurfaceClass":
        return cls((int(l),) + tuple(int(x) for x in e))

    def dot(self, other: "SurfaceClass") -> int:
        a, b = self.coeffs, other.coeffs
        return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))

    def __add__(self, other: "SurfaceClass") -> "SurfaceClass":
        return SurfaceClass(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "SurfaceClass") -> "SurfaceClass":
        return SurfaceClass(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int) -> "SurfaceClass":
        return SurfaceClass(tuple(k * x for x in self.coeffs))

    def __str__(self):
        l, *e = self.coeffs
        return f"({l}; {', '.join(map(str, e))})"


ZERO = SurfaceClass((0,) * 7)
HYPERPLANE = SurfaceClass.of(3, [1] * 6)


def class_sum(classes: Iterable[SurfaceClass]) -> SurfaceClass:
    out = ZERO
    for c in classes:
        out = out + c
    return out


_KIND_ORDER = {"E": 0, "L": 1, "C": 2}


@dataclass(frozen=True, order=False)
class LineLabel:
    """``kind`` is 'E' (exceptional), 'L' (line through two points, i<j)
    or 'C' (conic missing point i)."""

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown line kind {self.kind!r}")
        if self.i not in INDICES:
            raise ValueError(f"index {self.i} out of range 1..6")
        if self.kind == "L":
            if not (self.j in INDICES and self.i < self.j):
                raise ValueError(f"join needs 1 <= i < j <= 6, got {self.i},{self.j}")
        elif self.j != 0:
            raise ValueError(f"{self.kind} lines take one index")

    @classmethod
    def parse(cls, text: str) -> "LineLabel":
        t = text.strip()
        kind = {"R": "E"}.get(t[:1].upper(), t[:1].upper())
        digits = t[1:].replace(",", "").replace("_", "")
        if kind == "L":
            if len(digits) != 2 or not digits.isdigit():
                raise ValueError(f"bad line label {text!r}")
            a, b = sorted((int(digits[0]), int(digits[1])))
            return cls("L", a, b)
        if not digits.isdigit():
            raise ValueError(f"bad line label {text!r}")
        return cls(kind, int(digits))

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.i, self.j)

    def __lt__(self, other: "LineLabel"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"L{self.i}{self.j}" if self.kind == "L" else f"{self.kind}{self.i}"


def line_class(label: LineLabel) -> SurfaceClass:
    if label.kind == "E":
        return SurfaceClass.of(0, [-1 if k == label.i else 0 for k in INDICES])
    if label.kind == "L":
        return SurfaceClass.of(1, [1 if k in (label.i, label.j) else 0 for k in INDICES])
    return SurfaceClass.of(2, [0 if k == label.i else 1 for k in INDICES])


@lru_cache(maxsize=None)
def all_labels() -> tuple[LineLabel, ...]:
    exc = [LineLabel("E", i) for i in INDICES]
    joins = [LineLabel("L", i, j) for i, j in itertools.combinations(INDICES, 2)]
    conics = [LineLabel("C", i) for i in INDICES]
    return tuple(exc + joins + conics)


def enumerate_lines() -> list[tuple[LineLabel, SurfaceClass]]:
    return [(lab, line_class(lab)) for lab in all_labels()]


def meets(x: LineLabel, y: LineLabel) -> bool:
    return x != y and line_class(x).dot(line_class(y)) == 1


def permute_label(label: LineLabel, perm: Sequence[int]) -> LineLabel:
    """Act by a permutation of the six points; ``perm[k-1]`` is the image of k."""
    if label.kind == "L":
        a, b = sorted((perm[label.i - 1], perm[label.j - 1]))
        return LineLabel("L", a, b)
    return LineLabel(label.kind, perm[label.i - 1])


@dataclass(frozen=True)
class Triangle:
    lines: tuple[LineLabel, LineLabel, LineLabel]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(sorted(self.lines)))
        if len(set(self.lines)) != 3:
            raise ValueError("a triangle has three distinct lines")

    @classmethod
    def of(cls, *labels) -> "Triangle":
        labs = [l if isinstance(l, LineLabel) else LineLabel.parse(l) for l in labels]
        return cls(tuple(labs))

    def class_sum(self) -> SurfaceClass:
        return class_sum(line_class(l) for l in self.lines)

    def is_valid(self) -> bool:
        a, b, c = self.lines
        return (self.class_sum() == HYPERPLANE
                and all(meets(p, q) for p, q in ((a, b), (a, c), (b, c))))

    def permuted(self, perm: Sequence[int]) -> "Triangle":
        return Triangle(tuple(permute_label(l, perm) for l in self.lines))

    def __contains__(self, label):
        return label in self.lines

    def __str__(self):
        return "(" + ", ".join(map(str, self.lines)) + ")"


def is_triangle(*labels: LineLabel) -> bool:
    try:
        return Triangle(tuple(labels)).is_valid()
    except ValueError:
        return False


@lru_cache(maxsize=None)
def _triangles() -> tuple[Triangle, ...]:
    found = []
    for i, j in itertools.permutations(INDICES, 2):
        a, b = sorted((i, j))
        found.append(Triangle((LineLabel("E", i), LineLabel("L", a, b), LineLabel("C", j))))
    # three joins whose index pairs partition {1..6}
    for p in itertools.combinations(INDICES, 2):
        rest = [k for k in INDICES if k not in p]
        for q in itertools.combinations(rest, 2):
            r = tuple(k for k in rest if k not in q)
            if p < q < r:
                found.append(Triangle(tuple(LineLabel("L", *s) for s in (p, q, r))))
    for t in found:
        if not t.is_valid():
            raise AssertionError(f"structural triangle {t} fails the lattice check")
    return tuple(sorted(set(found), key=lambda t: [l.sort_key() for l in t.lines]))


def enumerate_triangles() -> list[Triangle]:
    return list(_triangles())


def secant_lines(x: LineLabel, y: LineLabel) -> list[LineLabel]:
    if x == y:
        raise ValueError("secant lines need two distinct lines")
    cx, cy = line_class(x), line_class(y)
    out = []
    for z in all_labels():
        if z in (x, y):
            continue
        cz = line_class(z)
        dx, dy = cz.dot(cx), cz.dot(cy)
        if dx >= 1 and dy >= 1:
            if dx > 1 or dy > 1:
                raise AssertionError(f"lines {z} and {x}/{y} meet with multiplicity > 1")
            out.append(z)
    return out


def disjoint_pairs() -> list[tuple[LineLabel, LineLabel]]:
    labs = all_labels()
    return [(x, y) for x, y in itertools.combinations(labs, 2) if line_class(x).dot(line_class(y)) == 0]


class DecompositionNotFound(RuntimeError):
    pass


@dataclass
class PairCertificate:
    """Signed triangle combination reproducing ``2x + 2y + sum(secants)``
    as a formal combination of line symbols."""

    pair: tuple[LineLabel, LineLabel]
    coefficients: dict[Triangle, int]
    source: str = "search"
    target: dict[LineLabel, int] = field(default_factory=dict)

    def symbol_sum(self) -> dict[LineLabel, int]:
        out: dict[LineLabel, int] = {}
        for t, k in self.coefficients.items():
            for l in t.lines:
                out[l] = out.get(l, 0) + k
        return {l: k for l, k in out.items() if k}

    def class_sum(self) -> SurfaceClass:
        out = ZERO
        for t, k in self.coefficients.items():
            out = out + k * t.class_sum()
        return out

    def is_valid(self) -> bool:
        return (all(t.is_valid() for t in self.coefficients)
                and self.symbol_sum() == self.target)

    def max_abs(self) -> int:
        return max((abs(k) for k in self.coefficients.values()), default=0)

    def to_json(self) -> dict:
        return {
            "pair": [str(l) for l in self.pair],
            "source": self.source,
            "terms": [{"coefficient": k, "triangle": [str(l) for l in t.lines]}
                      for t, k in sorted(self.coefficients.items(),
                                         key=lambda kv: [l.sort_key() for l in kv[0].lines])],
        }


def pair_target(x: LineLabel, y: LineLabel) -> dict[LineLabel, int]:
    out = {x: 2, y: 2}
    for z in secant_lines(x, y):
        out[z] = out.get(z, 0) + 1
    return out


def reference_certificate() -> PairCertificate:
    """The seven-triangle combination for (E1, E2) written out by hand."""
    t = Triangle.of
    coeffs = {
        t("E1", "L13", "C3"): 1,
        t("E1", "L14", "C4"): 1,
        t("E2", "L25", "C5"): 1,
        t("E2", "L26", "C6"): 1,
        t("L12", "L46", "L35"): 1,
        t("L13", "L25", "L46"): -1,
        t("L14", "L26", "L35"): -1,
    }
    x, y = LineLabel("E", 1), LineLabel("E", 2)
    return PairCertificate((x, y), coeffs, "reference", pair_target(x, y))


def _transport_reference(x: LineLabel, y: LineLabel) -> PairCertificate | None:
    if x.kind != "E" or y.kind != "E":
        return None
    ref = reference_certificate()
    rest = [k for k in INDICES if k not in (x.i, y.i)]
    perm = [x.i, y.i] + rest  # sends 1 -> x.i, 2 -> y.i, 3..6 -> the rest
    coeffs = {t.permuted(perm): k for t, k in ref.coefficients.items()}
    return PairCertificate((x, y), coeffs, "reference-transported", pair_target(x, y))


def _search(x: LineLabel, y: LineLabel, bound: int) -> PairCertificate | None:
    target = pair_target(x, y)
    tris = enumerate_triangles()
    labs = all_labels()
    by_line = {l: [k for k, t in enumerate(tris) if l in t] for l in labs}
    value = [None] * len(tris)
    partial = {l: 0 for l in labs}
    order = [0, 1, -1, 2, -2]
    order = [v for v in order if abs(v) <= bound]

    def open_vars(l):
        return [k for k in by_line[l] if value[k] is None]

    def consistent(l):
        need = target.get(l, 0) - partial[l]
        return abs(need) <= bound * len(open_vars(l))

    def assign(k, v):
        value[k] = v
        for l in tris[k].lines:
            partial[l] += v

    def unassign(k):
        for l in tris[k].lines:
            partial[l] -= value[k]
        value[k] = None

    def dfs():
        best, best_open = None, None
        for l in labs:
            ov = open_vars(l)
            if not ov:
                if partial[l] != target.get(l, 0):
                    return False
                continue
            if best is None or len(ov) < len(best_open):
                best, best_open = l, ov
        if best is None:
            return True
        k = best_open[0]
        if len(best_open) == 1:
            forced = target.get(best, 0) - partial[best]
            candidates = [forced] if abs(forced) <= bound else []
        else:
            candidates = order
        for v in candidates:
            assign(k, v)
            if all(consistent(l) for l in tris[k].lines) and dfs():
                return True
            unassign(k)
        return False

    if not dfs():
        return None
    coeffs = {tris[k]: v for k, v in enumerate(value) if v}
    return PairCertificate((x, y), coeffs, "search", target)


def verify_pair_decomposition(x: LineLabel, y: LineLabel, bound: int = 2,
                              use_reference: bool = True) -> PairCertificate:
    if line_class(x).dot(line_class(y)) != 0 or x == y:
        raise ValueError(f"{x} and {y} are not a disjoint pair")
    if use_reference:
        for a, b in ((x, y), (y, x)):
            cert = _transport_reference(a, b)
            if cert is not None and cert.is_valid():
                cert.pair = (x, y)
                return cert
    cert = _search(x, y, bound)
    if cert is None or not cert.is_valid():
        raise DecompositionNotFound(f"no triangle combination with |coefficient| <= {bound} for ({x}, {y})")
    return cert


def find_triangle_partition() -> list[Triangle]:
    """First exact cover of the 27 lines by triangles (Algorithm X)."""
    tris = enumerate_triangles()
    labs = all_labels()
    cols = {l: {k for k, t in enumerate(tris) if l in t} for l in labs}
    rows = {k: list(t.lines) for k, t in enumerate(tris)}

    def select(k):
        removed = []
        for l in rows[k]:
            for r in cols[l]:
                for other in rows[r]:
                    if other != l:
                        cols[other].discard(r)
            removed.append(cols.pop(l))
        return removed

    def deselect(k, removed):
        for l in reversed(rows[k]):
            cols[l] = removed.pop()
            for r in cols[l]:
                for other in rows[r]:
                    if other != l:
                        cols[other].add(r)

    def solve(chosen):
        if not cols:
            return list(chosen)
        l = min(cols, key=lambda c: (len(cols[c]), c.sort_key()))
        for k in sorted(cols[l]):
            chosen.append(k)
            removed = select(k)
            sol = solve(chosen)
            deselect(k, removed)
            chosen.pop()
            if sol is not None:
                return sol
        return None

    sol = solve([])
    if sol is None:
        raise AssertionError("no exact cover of the 27 lines by triangles")
    return sorted((tris[k] for k in sol), key=lambda t: [l.sort_key() for l in t.lines])
