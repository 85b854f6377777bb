"""Symplectic representation layer.

Homology classes are integer vectors in the basis a_1..a_g, b_1..b_g, with the
intersection pairing fixed by omega(b_i, a_i) = 1 = -omega(a_i, b_i).
Matrices act on column vectors and a twist word [(c_1, k_1), ..., (c_n, k_n)]
maps to T_1 T_2 ... T_n, so the rightmost twist is applied first.

Mod-d Torelli membership is decided on the symplectic shadow alone: a gluing
is treated as mod-d Torelli when its matrix reduces to the identity mod d.
Every invariant computed here factors through that matrix, so nothing is lost.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .errors import (
    GenusMismatch,
    NotCongruentToIdentity,
    NotSymplectic,
    ShapeMismatch,
)
from .exactmat import IntMatrix, det, inverse_int, inverse_mod

_LETTER = re.compile(r"^([abAB])(\d+)$")


def omega(g: int) -> IntMatrix:
    """The 2g x 2g matrix (0, Id; -Id, 0)."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    I, Z = IntMatrix.identity(g), IntMatrix.zeros(g, g)
    return IntMatrix.from_blocks([[Z, I], [-I, Z]])


@dataclass(frozen=True)
class HomologyClass:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) == 0 or len(self.coeffs) % 2:
            raise ShapeMismatch("a homology class needs 2g coefficients")

    @property
    def g(self) -> int:
        return len(self.coeffs) // 2

    @classmethod
    def zero(cls, g: int) -> "HomologyClass":
        return cls((0,) * (2 * g))

    @classmethod
    def basis(cls, g: int, name: str) -> "HomologyClass":
        """Basis class from a name such as ``"a1"`` or ``"B3"``."""
        idx = letter_index(g, name)
        return cls(tuple(int(i == idx) for i in range(2 * g)))

    @classmethod
    def parse(cls, g: int, text: str) -> "HomologyClass":
        """Parse a signed sum like ``"a1 + b2 - 2b1"``."""
        coeffs = [0] * (2 * g)
        for sign, mult, name in re.findall(r"([+-]?)\s*(\d*)\s*([abAB]\d+)", text):
            k = int(mult) if mult else 1
            coeffs[letter_index(g, name)] += -k if sign == "-" else k
        return cls(tuple(coeffs))

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        _check_genus(self, other)
        return HomologyClass(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        _check_genus(self, other)
        return HomologyClass(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-x for x in self.coeffs))

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(tuple(k * x for x in self.coeffs))

    def mod(self, d: int) -> "HomologyClass":
        return HomologyClass(tuple(x % d for x in self.coeffs))

    def __str__(self) -> str:
        g = self.g
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                name = f"{'ab'[i >= g]}{i % g + 1}"
                terms.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def letter_index(g: int, name: str) -> int:
    m = _LETTER.match(name.strip())
    if not m:
        raise ValueError(f"bad basis letter {name!r}")
    i = int(m.group(2))
    if not 1 <= i <= g:
        raise ValueError(f"index of {name!r} outside 1..{g}")
    return i - 1 + (g if m.group(1) in "bB" else 0)


def letter_name(g: int, idx: int) -> str:
    return f"{'ab'[idx >= g]}{idx % g + 1}"


def _check_genus(u: HomologyClass, v: HomologyClass) -> None:
    if u.g != v.g:
        raise GenusMismatch(f"genus {u.g} vs {v.g}")


def pairing_omega(u: HomologyClass, v: HomologyClass) -> int:
    """Intersection pairing with omega(b_i, a_i) = 1."""
    _check_genus(u, v)
    g = u.g
    x, y = u.coeffs, v.coeffs
    return sum(x[g + i] * y[i] - x[i] * y[g + i] for i in range(g))


def omega_vec(x: Sequence[int], y: Sequence[int]) -> int:
    """pairing_omega on raw coefficient sequences."""
    g = len(x) // 2
    return sum(x[g + i] * y[i] - x[i] * y[g + i] for i in range(g))


def is_symplectic(M: IntMatrix, d: int | None = None) -> bool:
    """M Omega M^t == Omega, over Z or modulo d."""
    if not M.is_square or M.rows % 2:
        return False
    W = omega(M.rows // 2)
    lhs = M @ W @ M.T
    if d is None:
        return lhs == W
    return lhs.mod(d) == W.mod(d)


@dataclass(frozen=True)
class SpMatrixZ:
    M: IntMatrix
    g: int = field(default=0)

    def __post_init__(self):
        if not self.M.is_square or self.M.rows % 2:
            raise ShapeMismatch("symplectic matrices are 2g x 2g")
        object.__setattr__(self, "g", self.M.rows // 2)
        if not is_symplectic(self.M):
            raise NotSymplectic("M Omega M^t != Omega")

    @classmethod
    def identity(cls, g: int) -> "SpMatrixZ":
        return cls(IntMatrix.identity(2 * g))

    def __matmul__(self, other: "SpMatrixZ") -> "SpMatrixZ":
        return SpMatrixZ(self.M @ other.M)

    def inverse(self) -> "SpMatrixZ":
        # M^{-1} = -Omega M^t Omega for symplectic M
        W = omega(self.g)
        return SpMatrixZ(-(W @ self.M.T @ W))

    def act(self, c: HomologyClass) -> HomologyClass:
        return HomologyClass(self.M.apply(c.coeffs))

    def blocks(self) -> "BlockDecomp":
        return block_decomp(self.M)


@dataclass(frozen=True)
class SpMatrixMod:
    M: IntMatrix
    d: int
    g: int = field(default=0)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("modulus must be >= 2")
        if not self.M.is_square or self.M.rows % 2:
            raise ShapeMismatch("symplectic matrices are 2g x 2g")
        object.__setattr__(self, "M", self.M.mod(self.d))
        object.__setattr__(self, "g", self.M.rows // 2)
        if not is_symplectic(self.M, self.d):
            raise NotSymplectic(f"not symplectic modulo {self.d}")

    @classmethod
    def identity(cls, g: int, d: int) -> "SpMatrixMod":
        return cls(IntMatrix.identity(2 * g), d)

    def is_identity(self) -> bool:
        return self.M == IntMatrix.identity(2 * self.g)

    def __matmul__(self, other: "SpMatrixMod") -> "SpMatrixMod":
        if self.d != other.d:
            raise ValueError("moduli differ")
        return SpMatrixMod(self.M @ other.M, self.d)

    def inverse(self) -> "SpMatrixMod":
        return SpMatrixMod(inverse_mod(self.M, self.d), self.d)

    def act(self, c: HomologyClass) -> HomologyClass:
        return HomologyClass(self.M.apply(c.coeffs)).mod(self.d)

    def blocks(self) -> "BlockDecomp":
        return block_decomp(self.M)


@dataclass(frozen=True)
class BlockDecomp:
    E: IntMatrix
    F: IntMatrix
    G: IntMatrix
    H: IntMatrix

    def assemble(self) -> IntMatrix:
        return IntMatrix.from_blocks([[self.E, self.F], [self.G, self.H]])


def block_decomp(M: IntMatrix) -> BlockDecomp:
    g = M.rows // 2
    n = 2 * g
    return BlockDecomp(
        M.block(0, g, 0, g), M.block(0, g, g, n), M.block(g, n, 0, g), M.block(g, n, g, n)
    )


@dataclass(frozen=True)
class TwistWord:
    g: int
    letters: tuple[tuple[HomologyClass, int], ...] = ()

    def __post_init__(self):
        letters = tuple((c, int(k)) for c, k in self.letters)
        for c, _ in letters:
            if c.g != self.g:
                raise GenusMismatch(f"curve of genus {c.g} in a genus-{self.g} word")
        object.__setattr__(self, "letters", letters)

    def inverse(self) -> "TwistWord":
        return TwistWord(self.g, tuple((c, -k) for c, k in reversed(self.letters)))

    def __add__(self, other: "TwistWord") -> "TwistWord":
        if self.g != other.g:
            raise GenusMismatch("cannot concatenate words of different genus")
        return TwistWord(self.g, self.letters + other.letters)


def transvection(c: HomologyClass, k: int = 1) -> SpMatrixZ:
    """Homology action of T_c^k: v -> v + k omega(v, c) c."""
    g = c.g
    n = 2 * g
    # omega(v, c) = row . v with row_j = omega(e_j, c)
    row = [omega_vec([int(i == j) for i in range(n)], c.coeffs) for j in range(n)]
    M = [[int(i == j) + k * c.coeffs[i] * row[j] for j in range(n)] for i in range(n)]
    return SpMatrixZ(IntMatrix(M, n))


def word_image(w: TwistWord) -> SpMatrixZ:
    out = IntMatrix.identity(2 * w.g)
    for c, k in w.letters:
        out = out @ transvection(c, k).M
    return SpMatrixZ(out)


def reduce_mod(M: SpMatrixZ, d: int) -> SpMatrixMod:
    return SpMatrixMod(M.M, d)


Lagrangian = Literal["A", "B", "AB"]


def block_factor(M: SpMatrixZ | SpMatrixMod, lagrangian: Lagrangian):
    """Coordinates of M in the block subgroup preserving a Lagrangian.

    ``"B"``: (G, 0; N, K) -> (G, G^t N), the second entry symmetric.
    ``"A"``: (H, N; 0, K) -> (H, H^{-1} N), the second entry symmetric.
    ``"AB"``: (G, 0; 0, K) -> G.
    """
    d = getattr(M, "d", None)
    blk = M.blocks()
    g = M.g
    I = IntMatrix.identity(g)

    def inv(X):
        return inverse_mod(X, d) if d else inverse_int(X)

    def norm(X):
        return X.mod(d) if d else X

    if lagrangian == "B":
        if not norm(blk.F).is_zero():
            raise ShapeMismatch("top-right block must vanish for the B Lagrangian")
        S = norm(blk.E.T @ blk.G)
        if S != S.T:
            raise NotSymplectic("G^t N is not symmetric")
        return norm(blk.E), S
    if lagrangian == "A":
        if not norm(blk.G).is_zero():
            raise ShapeMismatch("bottom-left block must vanish for the A Lagrangian")
        S = norm(inv(blk.E) @ blk.F)
        if S != S.T:
            raise NotSymplectic("H^{-1} N is not symmetric")
        return norm(blk.E), S
    if lagrangian == "AB":
        if not (norm(blk.F).is_zero() and norm(blk.G).is_zero()):
            raise ShapeMismatch("off-diagonal blocks must vanish for the AB Lagrangian")
        if norm(blk.E.T @ blk.H) != norm(I):
            raise NotSymplectic("bottom-right block is not the inverse transpose")
        return norm(blk.E)
    raise ValueError(f"unknown Lagrangian {lagrangian!r}")


def block_diagonal(G: IntMatrix, d: int | None = None) -> IntMatrix:
    """(G, 0; 0, G^{-t}) for G invertible over Z (or mod d)."""
    g = G.rows
    Gi = inverse_mod(G, d) if d else inverse_int(G)
    Z = IntMatrix.zeros(g, g)
    out = IntMatrix.from_blocks([[G, Z], [Z, Gi.T]])
    return out.mod(d) if d else out


@dataclass(frozen=True)
class SpLieElem:
    """Element (alpha, beta; gamma, -alpha^t) of sp_2g(Z/d)."""

    d: int
    alpha: IntMatrix
    beta: IntMatrix
    gamma: IntMatrix

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, getattr(self, name).mod(self.d))
        if self.beta != self.beta.T or self.gamma != self.gamma.T:
            raise NotSymplectic("beta and gamma must be symmetric mod d")

    @property
    def g(self) -> int:
        return self.alpha.rows

    @classmethod
    def zero(cls, g: int, d: int) -> "SpLieElem":
        Z = IntMatrix.zeros(g, g)
        return cls(d, Z, Z, Z)

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_blocks(
            [[self.alpha, self.beta], [self.gamma, (-self.alpha.T).mod(self.d)]]
        ).mod(self.d)

    def __add__(self, other: "SpLieElem") -> "SpLieElem":
        return SpLieElem(
            self.d, self.alpha + other.alpha, self.beta + other.beta, self.gamma + other.gamma
        )

    def in_sp(self) -> bool:
        X = self.matrix()
        W = omega(self.g)
        return (X.T @ W + W @ X).mod(self.d).is_zero()


def abel(M: SpMatrixZ, d: int) -> SpLieElem:
    """Id + d A -> A mod d, for M congruent to the identity mod d."""
    n = 2 * M.g
    diff = M.M - IntMatrix.identity(n)
    if not diff.mod(d).is_zero():
        raise NotCongruentToIdentity(f"matrix is not the identity modulo {d}")
    A = IntMatrix([[x // d for x in row] for row in diff], n).mod(d)
    blk = block_decomp(A)
    if (blk.H + blk.E.T).mod(d) != IntMatrix.zeros(M.g, M.g):
        raise NotSymplectic("bottom-right block is not -alpha^t")
    return SpLieElem(d, blk.E, blk.F, blk.G)


def trace_alpha(X: SpLieElem) -> int:
    return sum(X.alpha[i, i] for i in range(X.g)) % X.d


def symplectic_det(M: SpMatrixZ) -> int:
    return det(M.M)


def twist_word(g: int, letters: Iterable[tuple[str | Sequence[int] | HomologyClass, int]]) -> TwistWord:
    """Convenience constructor accepting class names, coefficient lists or classes."""
    out = []
    for c, k in letters:
        if isinstance(c, str):
            c = HomologyClass.parse(g, c)
        elif not isinstance(c, HomologyClass):
            c = HomologyClass(tuple(c))
        out.append((c, k))
    return TwistWord(g, tuple(out))


def trefoil_word() -> TwistWord:
    """Genus-2 word T_{a2} T_{a1} T_c, c = b1 - b2, whose image is Psi(T^{-1})
    for the right-handed trefoil surgery description of the Poincare sphere."""
    return twist_word(2, [("a2", 1), ("a1", 1), ("b1 - b2", 1)])
