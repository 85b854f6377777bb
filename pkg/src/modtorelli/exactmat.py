"""Exact integer and modular matrices, Smith normal form and cokernels.

Everything here works on Python ints, so entries never overflow. Matrices are
immutable; all operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NotInvertibleMod, ShapeMismatch


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ShapeMismatch("ragged matrix rows")
        self._rows = data
        self.rows = len(data)
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        out = []
        for block_row in blocks:
            for r in range(block_row[0].rows):
                out.append([x for b in block_row for x in b._rows[r]])
        return cls(out)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def entries(self) -> list[int]:
        """Row-major flat entry list."""
        return [x for r in self._rows for x in r]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._rows == other._rows and self.cols == other.cols

    def __hash__(self) -> int:
        return hash((self._rows, self.cols))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.cols
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.cols
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._rows], self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows)) if other.rows else [()] * other.cols
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows], other.cols
        )

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self._rows], self.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ShapeMismatch("vector length does not match matrix")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._rows)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([list(c) for c in zip(*self._rows)], self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def mod(self, d: int) -> "IntMatrix":
        return IntMatrix([[a % d for a in r] for r in self._rows], self.cols)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        return IntMatrix([r[c0:c1] for r in self._rows[r0:r1]], c1 - c0)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} != {other.shape}")


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]


@dataclass(frozen=True)
class AbelianFactors:
    """Z^free_rank plus Z/t_1 x ... x Z/t_k, with t_i | t_{i+1} and t_i >= 2."""

    torsion: tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> float | int:
        if self.free_rank:
            return float("inf")
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def smith_normal_form(A: IntMatrix) -> SnfResult:
    """Smith normal form A = U S V with U, V unimodular.

    Gcd-pivot elimination: the smallest nonzero entry of the trailing block is
    moved to the pivot, its row and column are cleared by Euclidean steps, and
    a row is folded in whenever the pivot fails to divide the rest of the block.
    """
    m, n = A.shape
    S = A.tolist()
    # Invariant: A = U * S * V throughout.
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        V[i], V[j] = V[j], V[i]

    def add_row(dst, src, c):
        # S <- E S with E = I + c e_{dst,src}; U <- U E^{-1}
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
        for r in U:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        # S <- S F with F = I + c e_{src,dst}; V <- F^{-1} V
        for r in S:
            r[dst] += c * r[src]
        V[src] = [a - c * b for a, b in zip(V[src], V[dst])]

    def negate_row(i):
        S[i] = [-a for a in S[i]]
        for r in U:
            r[i] = -r[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = S[i][j]
                    if x and (best is None or abs(x) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = S[t][t]
            done = True
            for i in range(t + 1, m):
                q = S[i][t] // piv
                if q:
                    add_row(i, t, -q)
                if S[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = S[t][j] // piv
                if q:
                    add_col(j, t, -q)
                if S[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and S[t][t] < 0:
            negate_row(t)

    Sm = IntMatrix(S, n)
    factors = tuple(S[i][i] for i in range(min(m, n)) if S[i][i] != 0)
    return SnfResult(IntMatrix(U, m), Sm, IntMatrix(V, n), factors)


def cokernel_factors(A: IntMatrix) -> AbelianFactors:
    """Invariant factors of Z^n / A Z^n for square A."""
    if not A.is_square:
        raise ShapeMismatch("cokernel_factors expects a square matrix")
    snf = smith_normal_form(A)
    torsion = tuple(f for f in snf.factors if f > 1)
    return AbelianFactors(torsion, A.rows - len(snf.factors))


def det(A: IntMatrix) -> int:
    """Exact determinant via Bareiss fraction-free elimination."""
    if not A.is_square:
        raise ShapeMismatch("det expects a square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_rational(A: IntMatrix) -> list[list[Fraction]]:
    """Inverse over Q by Gauss-Jordan on Fractions; raises on singular input."""
    n = A.rows
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def adjugate(A: IntMatrix) -> IntMatrix:
    """adj(A), so that A adj(A) = det(A) Id."""
    n = A.rows
    if n == 1:
        return IntMatrix([[1]])
    out = [[0] * n for _ in range(n)]
    rows = A.tolist()
    for i in range(n):
        for j in range(n):
            minor = IntMatrix([r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i], n - 1)
            out[j][i] = (-1) ** (i + j) * det(minor)
    return IntMatrix(out, n)


def inverse_int(A: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix."""
    D = det(A)
    if D not in (1, -1):
        raise NotInvertibleMod(f"det = {D} is not a unit in Z")
    return adjugate(A).scale(D)


def inverse_mod(A: IntMatrix, d: int) -> IntMatrix:
    """Inverse modulo d, entries in [0, d). Works for composite d."""
    if not A.is_square:
        raise ShapeMismatch("inverse_mod expects a square matrix")
    if d < 2:
        raise ValueError("modulus must be >= 2")
    D = det(A) % d
    if gcd(D, d) != 1:
        raise NotInvertibleMod(f"det = {D} (mod {d}) is not a unit")
    return adjugate(A).scale(pow(D, -1, d)).mod(d)
