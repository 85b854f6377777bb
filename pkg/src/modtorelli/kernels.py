"""Backend selection for the hot loops, plus modular linear algebra built on them.

The compiled extension ``_kernels`` is used when it imports; otherwise the
numpy fallback ``_kernels_py`` is used. Setting ``MODTORELLI_PURE_PYTHON=1``
forces the fallback.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("MODTORELLI_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

BACKENDS = {"python": _kernels_py}
if BACKEND == "cython":
    BACKENDS["cython"] = _impl


def rref_mod(A, p):
    return _impl.rref_mod(A, p)


def series_mul(a, b, r, N, p):
    return _impl.series_mul(a, b, r, N, p)


def mul_letter(a, gen, sign, r, N, p):
    return _impl.mul_letter(a, gen, sign, r, N, p)


def matmul_mod(A, B, p):
    """Exact product mod p; goes through float64 BLAS when it cannot lose bits."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    inner = A.shape[1] if A.ndim == 2 else A.shape[0]
    if inner * (p - 1) ** 2 < 2**52:
        out = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
        return np.rint(out).astype(np.int64) % p
    if inner * (p - 1) ** 2 < 2**63:
        return (A @ B) % p
    return ((A.astype(object) @ B.astype(object)) % p).astype(np.int64)


def nullspace_mod(A, p):
    """Basis of {x : A x = 0} over Z/p, as the columns of the returned array."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref_mod(A, p)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    basis[free, np.arange(len(free))] = 1
    if pivots and free:
        basis[pivots, :] = (-R[: len(pivots)][:, free]) % p
    return basis


def rank_mod(A, p):
    return len(rref_mod(A, p)[1])
