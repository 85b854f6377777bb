"""H (x) L_3 inside the tensor cube, and Morita's map pi on S^2 of wedge-2.

Lie elements are stored through their bracket expansion [x, y] = x y - y x,
so a degree-3 Lie element is a linear combination of letter triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

import numpy as np

from ..errors import GenusMismatch
from ..kernels import rank_mod, rref_mod
from .wedge import Sym2Elem

Tensor = dict  # word tuple -> integer coefficient


def letter(i: int) -> Tensor:
    return {(i,): 1}


def tensor_add(x: Tensor, y: Tensor, k: int = 1) -> Tensor:
    out = dict(x)
    for w, c in y.items():
        out[w] = out.get(w, 0) + k * c
    return {w: c for w, c in out.items() if c}


def tensor_mul(x: Tensor, y: Tensor) -> Tensor:
    out: Tensor = {}
    for u, a in x.items():
        for v, b in y.items():
            out[u + v] = out.get(u + v, 0) + a * b
    return {w: c for w, c in out.items() if c}


def bracket(x: Tensor, y: Tensor) -> Tensor:
    return tensor_add(tensor_mul(x, y), tensor_mul(y, x), -1)


def nested(a: int, b: int, c: int) -> Tensor:
    """Expansion of [a, [b, c]]."""
    return bracket(letter(a), bracket(letter(b), letter(c)))


@dataclass(frozen=True)
class TensorHL3:
    g: int
    p: int
    coeffs: Mapping[tuple[int, int, int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v % self.p for k, v in dict(self.coeffs).items() if v % self.p}
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __add__(self, other: "TensorHL3") -> "TensorHL3":
        if (self.g, self.p) != (other.g, other.p):
            raise GenusMismatch("tensors over different (g, p)")
        return TensorHL3(self.g, self.p, tensor_add(self.coeffs, other.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorHL3):
            return NotImplemented
        return (self.g, self.p, self.coeffs) == (other.g, other.p, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.g, self.p, tuple(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def slices(self) -> dict[int, dict[tuple[int, int, int], int]]:
        """First-slot decomposition sum_i e_i (x) t_i."""
        out: dict = {}
        for (i, *rest), c in self.coeffs.items():
            out.setdefault(i, {})[tuple(rest)] = c
        return out

    def is_lie(self) -> bool:
        """Whether every slice t_i lies in the span of expanded [x, [y, z]]."""
        n = 2 * self.g
        base, r0 = _l3_span(n, self.p)
        for t in self.slices().values():
            v = np.zeros((1, n ** 3), dtype=np.int64)
            for (a, b, c), k in t.items():
                v[0, (a * n + b) * n + c] = k
            if rank_mod(np.vstack([base, v]), self.p) > r0:
                return False
        return True


@lru_cache(maxsize=None)
def _l3_span(n: int, p: int) -> tuple[np.ndarray, int]:
    """Row basis (reduced) of the expanded [x, [y, z]] and its rank."""
    rows = []
    for a, b, c in itertools.product(range(n), repeat=3):
        v = np.zeros(n ** 3, dtype=np.int64)
        for (x, y, z), k in nested(a, b, c).items():
            v[(x * n + y) * n + z] = k % p
        rows.append(v)
    R, pivots = rref_mod(np.array(rows, dtype=np.int64), p)
    return R[: len(pivots)].copy(), len(pivots)


def pi_generator(a: int, b: int, c: int, d: int) -> Tensor:
    """a(x)[b,[c,d]] - b(x)[a,[c,d]] + c(x)[d,[a,b]] - d(x)[c,[a,b]]."""
    out: Tensor = {}
    for head, body, sign in (
        (a, nested(b, c, d), 1),
        (b, nested(a, c, d), -1),
        (c, nested(d, a, b), 1),
        (d, nested(c, a, b), -1),
    ):
        out = tensor_add(out, tensor_mul(letter(head), body), sign)
    return out


def pi_map(s: Sym2Elem) -> TensorHL3:
    out: Tensor = {}
    for ((a, b), (c, d)), k in s.coeffs.items():
        out = tensor_add(out, pi_generator(a, b, c, d), k)
    return TensorHL3(s.g, s.p, out)


def jacobi_element(g: int, p: int, a: int, b: int, c: int, d: int) -> Sym2Elem:
    """a^b<->c^d - a^c<->b^d + a^d<->b^c, a generator of the kernel of pi."""
    return (
        Sym2Elem.gen(g, p, (a, b), (c, d))
        - Sym2Elem.gen(g, p, (a, c), (b, d))
        + Sym2Elem.gen(g, p, (a, d), (b, c))
    )
