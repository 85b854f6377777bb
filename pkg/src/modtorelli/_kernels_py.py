"""Pure-Python (numpy) versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def rref_mod(A, p):
    """Reduced row echelon form of ``A`` over Z/p (p prime). Returns (R, pivots)."""
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv], col:] = R[[piv, row], col:]
        inv = pow(int(R[row, col]), -1, p)
        R[row, col:] = (R[row, col:] * inv) % p
        f = R[:, col].copy()
        f[row] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            R[np.ix_(rows, range(col, n))] = (
                R[rows, col:] - np.outer(f[rows], R[row, col:])
            ) % p
        pivots.append(col)
        row += 1
    return R, pivots


def _offsets(r, N):
    offs = [0]
    for k in range(N + 1):
        offs.append(offs[-1] + r**k)
    return offs


def series_mul(a, b, r, N, p):
    """Truncated product of two flat noncommutative series over Z/p."""
    offs = _offsets(r, N)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros(offs[-1], dtype=np.int64)
    blocks_b = [b[offs[j]:offs[j + 1]] for j in range(N + 1)]
    nonzero_b = [bool(blk.any()) for blk in blocks_b]
    for i in range(N + 1):
        ai = a[offs[i]:offs[i + 1]]
        if not ai.any():
            continue
        for j in range(N - i + 1):
            if nonzero_b[j]:
                out[offs[i + j]:offs[i + j + 1]] += np.outer(ai, blocks_b[j]).ravel()
    return out % p


def mul_letter(a, gen, sign, r, N, p):
    """Right-multiply a flat series by the expansion of x_gen**sign."""
    offs = _offsets(r, N)
    out = np.array(a, dtype=np.int64, copy=True)
    term = out.copy()
    coef = 1 if sign > 0 else p - 1
    for _ in range(N):
        nxt = np.zeros_like(term)
        for k in range(N):
            src = term[offs[k]:offs[k + 1]]
            nxt[offs[k + 1] + gen:offs[k + 2]:r] = (src * coef) % p
        term = nxt
        out = (out + term) % p
        if sign > 0:
            break
    return out
