"""Homology of Heegaard splittings, the d | n -+ 1 criterion and the trace invariant.

A gluing is recorded by its symplectic image (E, F; G, H). The first homology
of the glued 3-manifold is the cokernel of the H block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CriterionFails, NotCoprime, NotModDTorelli
from .exactmat import AbelianFactors, IntMatrix, cokernel_factors, det, inverse_mod
from .symplectic import (
    SpMatrixMod,
    SpMatrixZ,
    TwistWord,
    abel,
    block_decomp,
    reduce_mod,
    trace_alpha,
    word_image,
)

INFINITE = math.inf


@dataclass(frozen=True)
class HeegaardGluing:
    sp: SpMatrixZ

    @property
    def g(self) -> int:
        return self.sp.g

    @classmethod
    def from_word(cls, w: TwistWord) -> "HeegaardGluing":
        return cls(word_image(w))

    @property
    def H(self) -> IntMatrix:
        return block_decomp(self.sp.M).H


@dataclass(frozen=True)
class LensSpec:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("lens spaces need p >= 1")
        if math.gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.q}) != 1")


def splitting_homology(h: HeegaardGluing) -> AbelianFactors:
    return cokernel_factors(h.H)


def h1_order(h: HeegaardGluing) -> int | float:
    """|H_1| = |det H|, or INFINITE when H is singular."""
    n = abs(det(h.H))
    return n if n else INFINITE


def mod_d_splitting_exists(n: int, d: int) -> bool:
    """Whether |H_1| = n admits a gluing in the mod-d Torelli group."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    return (n - 1) % d == 0 or (n + 1) % d == 0


def _divisors(m: int) -> list[int]:
    return [k for k in range(1, m + 1) if m % k == 0]


def admissible_moduli(n: int) -> list[int]:
    """Divisors >= 2 of n - 1 and n + 1.

    For n = 1 every d is admissible (d | 0); the enumeration only lists the
    divisors coming from n + 1 = 2.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    out = set(_divisors(n + 1))
    if n > 1:
        out |= set(_divisors(n - 1))
    return sorted(k for k in out if k >= 2)


def trivialize(h: HeegaardGluing, d: int) -> tuple[SpMatrixMod, SpMatrixMod]:
    """X, Y with X Psi_d(f) Y = Id, X upper and Y lower block-triangular."""
    P = reduce_mod(h.sp, d)
    blk = block_decomp(P.M)
    u = det(blk.H) % d
    if u not in (1, d - 1):
        raise CriterionFails(f"det H = {u} (mod {d}) is not +-1")
    g = h.g
    I, Z = IntMatrix.identity(g), IntMatrix.zeros(g, g)
    A = (-(blk.F @ inverse_mod(blk.H, d))).mod(d)
    X = SpMatrixMod(IntMatrix.from_blocks([[I, A], [Z, I]]), d)
    lower = IntMatrix.from_blocks([[blk.E + A @ blk.G, Z], [blk.G, blk.H]])
    Y = SpMatrixMod(inverse_mod(lower, d), d)
    return X, Y


def _bezout(p: int, q: int) -> tuple[int, int]:
    """(a, b) with a p + b q = 1 and a the least nonnegative choice."""
    m = abs(q)
    if m == 0:
        return 1, 0  # p = 1
    if m == 1:
        return 0, q
    a = pow(p, -1, m)
    b = (1 - a * p) // q
    return a, b


def lens_gluing(spec: LensSpec) -> HeegaardGluing:
    """Genus-1 gluing (a, b; -q, p) of L(p, q), with Bezout top row."""
    a, b = _bezout(spec.p, spec.q)
    return HeegaardGluing(SpMatrixZ(IntMatrix([[a, b], [-spec.q, spec.p]])))


def lens_gluing_mod_d(p: int, q: int, d: int) -> HeegaardGluing:
    """Genus-1 gluing of L(p, q) congruent to the identity mod d.

    The bottom row is (c, p') with p' = +-p chosen so that p' = 1 (mod d), and
    c = 0 (mod d), c = -q (mod p). The top row solves a p' - b c = 1 with
    b = 0 (mod d); then a = 1 (mod d) follows from the determinant.
    """
    spec = LensSpec(p, q)
    if d < 2:
        raise ValueError("modulus must be >= 2")
    if p % d == 1 % d:
        pp = p
    elif p % d == (-1) % d:
        pp = -p
    else:
        raise CriterionFails(f"p = {p} is not +-1 modulo {d}")
    # CRT, gcd(d, p) = 1 because p = +-1 mod d
    c = (-spec.q % p) * d * pow(d, -1, p) % (d * p) if p > 1 else 0
    # a pp - b c = 1
    if c == 0:
        a0, b0 = pp, 0  # pp = +-1 here
    else:
        a0, mb = _bezout(pp, c)
        b0 = -mb
    t = (-b0 * pow(pp, -1, d)) % d
    a, b = a0 + t * c, b0 + t * pp
    M = IntMatrix([[a, b], [c, pp]])
    return HeegaardGluing(SpMatrixZ(M))


def phi_invariant(h: HeegaardGluing, d: int, x: int = 1) -> int:
    """tr(alpha(abel(Psi(f)))) * x mod d for a mod-d Torelli gluing."""
    if not reduce_mod(h.sp, d).is_identity():
        raise NotModDTorelli(f"gluing is not the identity modulo {d}")
    return trace_alpha(abel(h.sp, d)) * x % d
