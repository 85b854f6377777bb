"""Exterior cube and symmetric square of the exterior square of H_p, and the
bilinear forms on them.

Basis letters are indexed 0..2g-1 in the order a_1..a_g, b_1..b_g. Wedge
monomials are strictly increasing index tuples. A Sym2Elem key (S, T) with
S <= T stands for the generator e_S <-> e_T = e_S (x) e_T + e_T (x) e_S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..errors import GenusMismatch
from ..symplectic import HomologyClass, letter_index, letter_name


def omega_e(g: int, i: int, j: int) -> int:
    """omega on basis letters: omega(b_k, a_k) = 1, omega(a_k, b_k) = -1."""
    if j == i - g and i >= g:
        return 1
    if i == j - g and j >= g:
        return -1
    return 0


def varpi_e(g: int, i: int, j: int) -> int:
    """Symmetric form with matrix (0, Id; Id, 0)."""
    return int(abs(i - j) == g)


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def _parse_letter(g: int, x) -> int:
    return letter_index(g, x) if isinstance(x, str) else int(x)


def wedge_of_vectors(vectors: Sequence[Sequence[int]], p: int) -> dict[tuple[int, ...], int]:
    """Coefficients of v_1 ^ ... ^ v_k in the sorted monomial basis."""
    out: dict[tuple[int, ...], int] = {}
    supports = [[(i, c) for i, c in enumerate(v) if c % p] for v in vectors]
    for combo in itertools.product(*supports):
        sign, key = sort_sign([i for i, _ in combo])
        if not sign:
            continue
        c = sign
        for _, x in combo:
            c *= x
        out[key] = (out.get(key, 0) + c) % p
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class WedgeVector3:
    g: int
    p: int
    coeffs: Mapping[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.coeffs).items():
            sign, key = sort_sign(k)
            if len(key) != 3 and sign:
                raise ValueError("wedge-3 monomials have three letters")
            v = v * sign % self.p
            if sign and v:
                clean[key] = (clean.get(key, 0) + v) % self.p
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(clean.items()) if v})

    @classmethod
    def monomial(cls, g: int, p: int, letters: Sequence[int | str], coeff: int = 1) -> "WedgeVector3":
        idx = tuple(_parse_letter(g, x) for x in letters)
        return cls(g, p, {idx: coeff})

    @classmethod
    def from_vectors(cls, u, v, w, p: int) -> "WedgeVector3":
        vecs = [x.coeffs if isinstance(x, HomologyClass) else tuple(x) for x in (u, v, w)]
        return cls(len(vecs[0]) // 2, p, wedge_of_vectors(vecs, p))

    @classmethod
    def zero(cls, g: int, p: int) -> "WedgeVector3":
        return cls(g, p, {})

    def _check(self, other: "WedgeVector3") -> None:
        if (self.g, self.p) != (other.g, other.p):
            raise GenusMismatch("wedge vectors over different (g, p)")

    def __add__(self, other: "WedgeVector3") -> "WedgeVector3":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return WedgeVector3(self.g, self.p, out)

    def __neg__(self) -> "WedgeVector3":
        return WedgeVector3(self.g, self.p, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "WedgeVector3") -> "WedgeVector3":
        return self + (-other)

    def __rmul__(self, k: int) -> "WedgeVector3":
        return WedgeVector3(self.g, self.p, {m: k * v for m, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WedgeVector3):
            return NotImplemented
        return (self.g, self.p, self.coeffs) == (other.g, other.p, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.g, self.p, tuple(self.coeffs.items())))

    def block(self, key: tuple[int, int, int]) -> str:
        """'A', 'B' or 'AB' according to the Lagrangian split of a monomial."""
        n_b = sum(i >= self.g for i in key)
        return "A" if n_b == 0 else "B" if n_b == 3 else "AB"

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
        terms = []
        for key, c in self.coeffs.items():
            mono = "∧".join(letter_name(self.g, i).translate(sub) for i in key)
            terms.append(mono if c == 1 else f"{c}·{mono}")
        return " + ".join(terms)


@dataclass(frozen=True)
class Sym2Elem:
    g: int
    p: int
    coeffs: Mapping[tuple[tuple[int, int], tuple[int, int]], int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict = {}
        for (S, T), v in dict(self.coeffs).items():
            s1, S = sort_sign(S)
            s2, T = sort_sign(T)
            if not (s1 and s2):
                continue
            key = (S, T) if S <= T else (T, S)
            clean[key] = (clean.get(key, 0) + s1 * s2 * v) % self.p
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(clean.items()) if v})

    @classmethod
    def gen(cls, g: int, p: int, left: Sequence, right: Sequence, coeff: int = 1) -> "Sym2Elem":
        """a ^ b <-> c ^ d for basis letters (indices or names)."""
        S = tuple(_parse_letter(g, x) for x in left)
        T = tuple(_parse_letter(g, x) for x in right)
        return cls(g, p, {(S, T): coeff})

    @classmethod
    def from_vectors(cls, a, b, c, d, p: int) -> "Sym2Elem":
        """a ^ b <-> c ^ d for arbitrary homology vectors."""
        vecs = [x.coeffs if isinstance(x, HomologyClass) else tuple(x) for x in (a, b, c, d)]
        g = len(vecs[0]) // 2
        left = wedge_of_vectors(vecs[:2], p)
        right = wedge_of_vectors(vecs[2:], p)
        out: dict = {}
        for S, x in left.items():
            for T, y in right.items():
                key = (S, T) if S <= T else (T, S)
                out[key] = out.get(key, 0) + x * y
        return cls(g, p, out)

    @classmethod
    def zero(cls, g: int, p: int) -> "Sym2Elem":
        return cls(g, p, {})

    def __add__(self, other: "Sym2Elem") -> "Sym2Elem":
        if (self.g, self.p) != (other.g, other.p):
            raise GenusMismatch("Sym2 elements over different (g, p)")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Sym2Elem(self.g, self.p, out)

    def __neg__(self) -> "Sym2Elem":
        return Sym2Elem(self.g, self.p, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Sym2Elem") -> "Sym2Elem":
        return self + (-other)

    def __rmul__(self, k: int) -> "Sym2Elem":
        return Sym2Elem(self.g, self.p, {m: k * v for m, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sym2Elem):
            return NotImplemented
        return (self.g, self.p, self.coeffs) == (other.g, other.p, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.g, self.p, tuple(self.coeffs.items())))

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")

        def mono(t):
            return "∧".join(letter_name(self.g, i).translate(sub) for i in t)

        terms = []
        for (S, T), c in self.coeffs.items():
            body = f"{mono(S)}↔{mono(T)}"
            terms.append(body if c == 1 else f"{c}·{body}")
        return " + ".join(terms)


def contraction_C(xi: WedgeVector3) -> HomologyClass:
    """C(a^b^c) = 2[omega(b,c) a + omega(c,a) b + omega(a,b) c], mod p."""
    g, p = xi.g, xi.p
    out = [0] * (2 * g)
    for (a, b, c), k in xi.coeffs.items():
        out[a] += 2 * k * omega_e(g, b, c)
        out[b] += 2 * k * omega_e(g, c, a)
        out[c] += 2 * k * omega_e(g, a, b)
    return HomologyClass(tuple(x % p for x in out))


def map_u(x: HomologyClass | Sequence[int], p: int) -> WedgeVector3:
    """u(x) = x ^ (sum_i b_i ^ a_i)."""
    coeffs = x.coeffs if isinstance(x, HomologyClass) else tuple(x)
    g = len(coeffs) // 2
    out: dict = {}
    for j, c in enumerate(coeffs):
        if c % p == 0:
            continue
        for i in range(g):
            sign, key = sort_sign((j, g + i, i))
            if sign:
                out[key] = out.get(key, 0) + sign * c
    return WedgeVector3(g, p, out)


def _pair_check(xi: WedgeVector3, eta: WedgeVector3) -> None:
    if (xi.g, xi.p) != (eta.g, eta.p):
        raise GenusMismatch("wedge vectors over different (g, p)")


def form_J(xi: WedgeVector3, eta: WedgeVector3) -> int:
    """Identity pairing W_A x W_B: a_i^a_j^a_k against b_i^b_j^b_k; zero elsewhere."""
    _pair_check(xi, eta)
    g = xi.g
    total = 0
    for key, c in xi.coeffs.items():
        if key[2] < g:
            total += c * eta.coeffs.get(tuple(i + g for i in key), 0)
    return total % xi.p


def form_Jt(xi: WedgeVector3, eta: WedgeVector3) -> int:
    return form_J(eta, xi)


def theta_monomials(g: int, S: Sequence[int], T: Sequence[int]) -> int:
    """det of the 3x3 matrix omega(S_i, T_j)."""
    m = [[omega_e(g, s, t) for t in T] for s in S]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def form_Theta(xi: WedgeVector3, eta: WedgeVector3) -> int:
    _pair_check(xi, eta)
    g = xi.g
    total = 0
    for S, x in xi.coeffs.items():
        for T, y in eta.coeffs.items():
            total += x * y * theta_monomials(g, S, T)
    return total % xi.p


def form_Q(xi: WedgeVector3, eta: WedgeVector3) -> int:
    """omega(C xi, C eta)."""
    _pair_check(xi, eta)
    u, v = contraction_C(xi), contraction_C(eta)
    g = xi.g
    total = sum(u.coeffs[g + i] * v.coeffs[i] - u.coeffs[i] * v.coeffs[g + i] for i in range(g))
    return total % xi.p


def d_on_generator(i: int, g: int, a: int, b: int, c: int, d: int) -> int:
    if i == 1:
        return omega_e(g, a, b) * omega_e(g, c, d)
    if i == 2:
        return omega_e(g, a, c) * omega_e(g, b, d) - omega_e(g, a, d) * omega_e(g, b, c)
    if i == 3:
        return varpi_e(g, a, c) * varpi_e(g, b, d) - varpi_e(g, a, d) * varpi_e(g, b, c)
    raise ValueError("d_i is defined for i = 1, 2, 3")


def form_d(i: int, s: Sym2Elem) -> int:
    total = 0
    for ((a, b), (c, d)), k in s.coeffs.items():
        total += k * d_on_generator(i, s.g, a, b, c, d)
    return total % s.p


def chi(xi: WedgeVector3, eta: WedgeVector3) -> Sym2Elem:
    """Morita's nine-term map from pairs of wedge-3 vectors to S^2 of wedge-2."""
    _pair_check(xi, eta)
    g, p = xi.g, xi.p
    out: dict = {}
    for (a, b, c), x in xi.coeffs.items():
        rest_l = {a: (b, c), b: (c, a), c: (a, b)}
        for (d, e, f), y in eta.coeffs.items():
            rest_r = {d: (e, f), e: (f, d), f: (d, e)}
            for s, left in rest_l.items():
                for t, right in rest_r.items():
                    w = omega_e(g, s, t)
                    if w:
                        out[(left, right)] = out.get((left, right), 0) - x * y * w
    return Sym2Elem(g, p, out)


def wedge3_basis(g: int) -> list[tuple[int, int, int]]:
    return list(itertools.combinations(range(2 * g), 3))


def wedge2_basis(g: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(2 * g), 2))


def sym2_basis(g: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    return list(itertools.combinations_with_replacement(wedge2_basis(g), 2))


def bilinear_matrix(form, g: int, p: int):
    """Gram matrix of a bilinear form on wedge-3 monomials, as nested lists."""
    basis = wedge3_basis(g)
    vecs = [WedgeVector3(g, p, {k: 1}) for k in basis]
    return [[form(x, y) for y in vecs] for x in vecs]


def d_functional(i: int, g: int, p: int) -> list[int]:
    """Coordinates of d_i on the S^2 basis from ``sym2_basis``."""
    return [d_on_generator(i, g, a, b, c, d) % p for (a, b), (c, d) in sym2_basis(g)]
