"""Dense matrices over Q with exact arithmetic."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .polynomial import GradedPoly, _frac, _is_scalar

__all__ = ["ExactMatrix", "minimal_polynomial", "evaluate_at", "rational_roots"]


class ExactMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Iterable[Iterable], rows: int | None = None, cols: int | None = None):
        entries = tuple(tuple(_frac(x) for x in row) for row in data)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("ragged or mis-sized matrix data")
        self.rows, self.cols, self.entries = rows, cols, entries

    # constructors

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def scalar(cls, n: int, value) -> "ExactMatrix":
        return cls.diag([value] * n)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["ExactMatrix"]]) -> "ExactMatrix":
        """Assemble a block matrix; row heights and column widths must agree."""
        if not blocks:
            return cls.zeros(0, 0)
        heights = [row[0].rows for row in blocks]
        widths = [b.cols for b in blocks[0]]
        for i, row in enumerate(blocks):
            if len(row) != len(widths):
                raise ValueError("block row lengths differ")
            for j, b in enumerate(row):
                if b.rows != heights[i] or b.cols != widths[j]:
                    raise ValueError(f"block ({i},{j}) has shape {b.shape}")
        data = []
        for i, row in enumerate(blocks):
            for r in range(heights[i]):
                line = []
                for b in row:
                    line.extend(b.entries[r])
                data.append(line)
        return cls(data, sum(heights), sum(widths))

    @classmethod
    def block_diag(cls, *blocks: "ExactMatrix") -> "ExactMatrix":
        grid = []
        for i, bi in enumerate(blocks):
            grid.append([bi if i == j else cls.zeros(bi.rows, bj.cols) for j, bj in enumerate(blocks)])
        return cls.from_blocks(grid)

    @classmethod
    def column(cls, values: Sequence) -> "ExactMatrix":
        return cls([[v] for v in values], len(values), 1)

    # shape and access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def col(self, j: int) -> list[Fraction]:
        return [self.entries[i][j] for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols))

    # arithmetic

    def _same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if _is_scalar(other):
            other = ExactMatrix.scalar(self.rows, other) if self.is_square() else None
            if other is None:
                raise ValueError("scalar plus non-square matrix")
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._same_shape(other)
        return ExactMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                           self.rows, self.cols)

    __radd__ = __add__

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        if _is_scalar(other):
            return self + (-_frac(other))
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = _frac(other)
            return ExactMatrix([[c * a for a in r] for r in self.entries], self.rows, self.cols)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (Fraction(1) / _frac(other))
        return NotImplemented

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        data = []
        for r in self.entries:
            data.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols])
        return ExactMatrix(data, self.rows, other.cols)

    def __pow__(self, n: int):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                           self.cols, self.rows)

    def apply(self, vector: Sequence) -> list[Fraction]:
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        v = [_frac(x) for x in vector]
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.entries]

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return ExactMatrix([list(a) + list(b) for a, b in zip(self.entries, other.entries)],
                           self.rows, self.cols + other.cols)

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return ExactMatrix(list(self.entries) + list(other.entries), self.rows + other.rows, self.cols)

    # elimination

    def rref(self) -> tuple["ExactMatrix", list[int]]:
        m = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return ExactMatrix(m, self.rows, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the right kernel, one list per vector."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -red.entries[i][f]
            basis.append(v)
        return basis

    def column_space(self) -> list[list[Fraction]]:
        _, pivots = self.rref()
        return [self.col(j) for j in pivots]

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        red, pivots = self.hstack(ExactMatrix.identity(n)).rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def same_column_space(self, other: "ExactMatrix") -> bool:
        if self.rows != other.rows:
            return False
        r = self.rank()
        return r == other.rank() == self.hstack(other).rank()

    # comparison

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.shape == other.shape and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def evaluate_at(poly: GradedPoly, m: ExactMatrix) -> ExactMatrix:
    """Evaluate a univariate polynomial at a square matrix (Horner)."""
    if len(poly.variables) != 1:
        raise ValueError("expected a univariate polynomial")
    if not m.is_square():
        raise ValueError("matrix must be square")
    deg = max((e[0] for e in poly.terms), default=0)
    out = ExactMatrix.zeros(m.rows)
    for k in range(deg, -1, -1):
        out = out @ m + poly.terms.get((k,), Fraction(0))
    return out


def minimal_polynomial(m: ExactMatrix, name: str = "x") -> GradedPoly:
    """Monic polynomial of least degree killing ``m``.

    Finds the first power of ``m`` that is a linear combination of the
    lower ones, working with flattened matrices as vectors.
    """
    if not m.is_square():
        raise ValueError(f"minimal polynomial of non-square {m.shape} matrix")
    n = m.rows
    powers = [ExactMatrix.identity(n)]
    if n == 0:
        return GradedPoly.univariate([1], name)
    while True:
        nxt = powers[-1] @ m
        # columns are flattened powers I, m, ..., m^{k-1}; solve against m^k
        cols = [[x for r in p.entries for x in r] for p in powers]
        target = [x for r in nxt.entries for x in r]
        system = ExactMatrix([list(row) + [t] for row, t in zip(zip(*cols), target)])
        red, pivots = system.rref()
        k = len(powers)
        if k not in pivots:
            coeffs = [Fraction(0)] * k
            for i, p in enumerate(pivots):
                coeffs[p] = red.entries[i][k]
            return GradedPoly.univariate([-c for c in coeffs] + [1], name)
        powers.append(nxt)


def rational_roots(poly: GradedPoly) -> list[Fraction]:
    """Distinct rational roots of a univariate polynomial (rational root test)."""
    if len(poly.variables) != 1:
        raise ValueError("expected a univariate polynomial")
    if not poly:
        raise ValueError("zero polynomial has every root")
    coeffs = {e[0]: c for e, c in poly.terms.items()}
    low = min(coeffs)
    roots = [Fraction(0)] if low > 0 else []
    deg = max(coeffs)
    cs = [coeffs.get(k, Fraction(0)) for k in range(low, deg + 1)]
    den = lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(k):
        return [d for d in range(1, k + 1) if k % d == 0]

    def value(x):
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * x + c
        return acc

    seen = set()
    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in seen and value(cand) == 0:
                    seen.add(cand)
                    roots.append(cand)
    return sorted(roots)
