"""Invariant linear functionals on finite modules over Z/p.

A module is given by the matrices of a generating set of the acting group. A
functional f (a row vector) is invariant when f M = f for every generator M,
i.e. f lies in the common kernel of M^T - Id. Intersections are taken one
generator at a time, so the working space shrinks quickly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import ShapeMismatch, UnsupportedCombination
from ..kernels import matmul_mod, nullspace_mod, rref_mod
from .wedge import sym2_basis, wedge2_basis, wedge3_basis

MODULES = ("B2", "B3", "Wedge3", "SpLie", "Sym2Wedge2", "Wedge2OfWedge3")
GROUPS = ("GL", "Sp")


@dataclass(frozen=True)
class InvariantProblem:
    dim: int
    p: int
    generators: tuple = ()
    labels: tuple = field(default=())

    def __post_init__(self):
        gens = []
        for G in self.generators:
            G = np.asarray(G, dtype=np.int64) % self.p
            if G.shape != (self.dim, self.dim):
                raise ShapeMismatch(f"generator of shape {G.shape}, expected {(self.dim,) * 2}")
            gens.append(G)
        object.__setattr__(self, "generators", tuple(gens))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.dim)))


def invariant_space(prob: InvariantProblem) -> np.ndarray:
    """Reduced row basis of the invariant functionals, one functional per row."""
    p, n = prob.p, prob.dim
    V = np.eye(n, dtype=np.int64)
    for G in prob.generators:
        if V.shape[1] == 0:
            break
        C = matmul_mod(G.T, V, p) - V
        N = nullspace_mod(C % p, p)
        V = matmul_mod(V, N, p)
    if V.shape[1] == 0:
        return np.zeros((0, n), dtype=np.int64)
    R, pivots = rref_mod(V.T.copy(), p)
    return R[: len(pivots)].copy()


# ---------------------------------------------------------------- generators


def _embed_gl(G: np.ndarray, p: int) -> np.ndarray:
    g = G.shape[0]
    Ginv = np.rint(np.linalg.inv(G)).astype(np.int64)
    M = np.zeros((2 * g, 2 * g), dtype=np.int64)
    M[:g, :g] = G
    M[g:, g:] = Ginv.T
    return M % p


def gl_generators(g: int, p: int) -> list[np.ndarray]:
    gens = []
    for i in range(g - 1):
        P = np.eye(g, dtype=np.int64)
        P[[i, i + 1]] = P[[i + 1, i]]
        gens.append(P)
    E = np.eye(g, dtype=np.int64)
    E[1, 0] = 1
    gens.append(E)
    D = np.eye(g, dtype=np.int64)
    D[0, 0] = -1
    gens.append(D)
    return [_embed_gl(G, p) for G in gens]


def sp_generators(g: int, p: int) -> list[np.ndarray]:
    gens = gl_generators(g, p)
    E11 = np.zeros((g, g), dtype=np.int64)
    E11[0, 0] = 1
    S12 = np.zeros((g, g), dtype=np.int64)
    S12[0, 1] = S12[1, 0] = 1
    for S in (E11, S12):
        up = np.eye(2 * g, dtype=np.int64)
        up[:g, g:] = S
        lo = np.eye(2 * g, dtype=np.int64)
        lo[g:, :g] = S
        gens += [up % p, lo % p]
    return gens


# ---------------------------------------------------------------- module actions


def exterior_power(M: np.ndarray, k: int, p: int) -> np.ndarray:
    """Matrix of wedge^k M on sorted k-subsets: entry (S, T) = det M[S, T]."""
    n = M.shape[0]
    subsets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
    rows = subsets[:, None, :]  # S
    cols = subsets[None, :, :]  # T
    if k == 2:
        m = lambda i, j: M[rows[..., i], cols[..., j]]  # noqa: E731
        out = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)
    elif k == 3:
        m = lambda i, j: M[rows[..., i], cols[..., j]]  # noqa: E731
        out = (
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        )
    else:
        raise ValueError("only k = 2, 3 are needed")
    return out % p


def sym2_power(W: np.ndarray, p: int) -> np.ndarray:
    """Action on unordered pairs {S <= T}: e_S<->e_T goes to (W e_S)<->(W e_T)."""
    n = W.shape[0]
    pairs = np.array(list(itertools.combinations_with_replacement(range(n), 2)), dtype=np.int64)
    U, V = pairs[:, 0][:, None], pairs[:, 1][:, None]
    S, T = pairs[:, 0][None, :], pairs[:, 1][None, :]
    out = W[U, S] * W[V, T] + W[V, S] * W[U, T]
    diag = (pairs[:, 0] == pairs[:, 1])
    out[diag, :] = (W[U, S] * W[U, T])[diag, :]
    return out % p


def _sp_inverse(M: np.ndarray, p: int) -> np.ndarray:
    g = M.shape[0] // 2
    Om = np.zeros_like(M)
    Om[:g, g:] = np.eye(g, dtype=np.int64)
    Om[g:, :g] = -np.eye(g, dtype=np.int64)
    return (-(Om @ M.T @ Om)) % p


def splie_basis(g: int) -> list[tuple[str, int, int]]:
    alpha = [("alpha", i, j) for i in range(g) for j in range(g)]
    beta = [("beta", i, j) for i in range(g) for j in range(i, g)]
    gamma = [("gamma", i, j) for i in range(g) for j in range(i, g)]
    return alpha + beta + gamma


def _splie_matrix(label: tuple[str, int, int], g: int) -> np.ndarray:
    kind, i, j = label
    X = np.zeros((2 * g, 2 * g), dtype=np.int64)
    if kind == "alpha":
        X[i, j] = 1
        X[g + j, g + i] = -1
    elif kind == "beta":
        X[i, g + j] = X[j, g + i] = 1
    else:
        X[g + i, j] = X[g + j, i] = 1
    return X


def splie_action(M: np.ndarray, g: int, p: int) -> np.ndarray:
    basis = splie_basis(g)
    Minv = _sp_inverse(M, p)
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for col, label in enumerate(basis):
        Y = (M @ _splie_matrix(label, g) @ Minv) % p
        for row, (kind, i, j) in enumerate(basis):
            if kind == "alpha":
                out[row, col] = Y[i, j]
            elif kind == "beta":
                out[row, col] = Y[i, g + j]
            else:
                out[row, col] = Y[g + i, j]
    return out


def boolean_basis(g: int, k: int) -> list[tuple[int, ...]]:
    return [m for r in range(k + 1) for m in itertools.combinations(range(2 * g), r)]


def boolean_action(M: np.ndarray, g: int, k: int) -> np.ndarray:
    from ..bcj import BooleanPoly, sp2_act
    from ..exactmat import IntMatrix
    from ..symplectic import SpMatrixMod

    basis = boolean_basis(g, k)
    index = {m: i for i, m in enumerate(basis)}
    S = SpMatrixMod(IntMatrix(M.tolist()), 2)
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for col, mono in enumerate(basis):
        img = sp2_act(S, BooleanPoly(g, frozenset([frozenset(mono)])))
        for m in img.sorted_monomials():
            out[index[m], col] = 1
    return out


def module_basis(module: str, g: int) -> list:
    if module in ("B2", "B3"):
        return boolean_basis(g, int(module[1]))
    if module == "Wedge3":
        return wedge3_basis(g)
    if module == "SpLie":
        return splie_basis(g)
    if module == "Sym2Wedge2":
        return sym2_basis(g)
    if module == "Wedge2OfWedge3":
        return list(itertools.combinations(wedge3_basis(g), 2))
    raise UnsupportedCombination(f"unknown module {module!r}")


def module_action(module: str, M: np.ndarray, g: int, p: int) -> np.ndarray:
    if module in ("B2", "B3"):
        return boolean_action(M, g, int(module[1]))
    if module == "Wedge3":
        return exterior_power(M, 3, p)
    if module == "SpLie":
        return splie_action(M, g, p)
    if module == "Sym2Wedge2":
        return sym2_power(exterior_power(M, 2, p), p)
    if module == "Wedge2OfWedge3":
        return exterior_power(exterior_power(M, 3, p), 2, p)
    raise UnsupportedCombination(f"unknown module {module!r}")


def builtin_action(module: str, group: str, g: int, p: int) -> InvariantProblem:
    if module not in MODULES:
        raise UnsupportedCombination(f"unknown module {module!r}; choose from {MODULES}")
    if group not in GROUPS:
        raise UnsupportedCombination(f"unknown group {group!r}; choose GL or Sp")
    if g < 3:
        raise UnsupportedCombination("the built-in modules need g >= 3")
    if module in ("B2", "B3") and p != 2:
        raise UnsupportedCombination("the Boolean modules live over Z/2")
    if module not in ("B2", "B3") and (p < 3 or p % 2 == 0):
        raise UnsupportedCombination(f"{module} needs an odd prime modulus")
    gens = gl_generators(g, p) if group == "GL" else sp_generators(g, p)
    labels = tuple(str(b) for b in module_basis(module, g))
    return InvariantProblem(
        dim=len(labels),
        p=p,
        generators=tuple(module_action(module, M, g, p) for M in gens),
        labels=labels,
    )


def functional_in_span(f: Sequence[int], basis: np.ndarray, p: int) -> bool:
    """Whether the row vector f lies in the row span of basis."""
    from ..kernels import rank_mod

    f = np.asarray(f, dtype=np.int64).reshape(1, -1) % p
    if basis.shape[0] == 0:
        return not f.any()
    return rank_mod(np.vstack([basis, f]), p) == rank_mod(basis, p)
