# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: modular row reduction and truncated series products.

Mirrors ``_kernels_py`` function for function; ``kernels`` picks one at import.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef long long i64


cdef inline i64 _inv_mod(i64 a, i64 p):
    # extended Euclid; a is a unit mod p
    cdef i64 t = 0, new_t = 1, r = p, new_r = a % p, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_mod(A, i64 p):
    """Reduced row echelon form of ``A`` over Z/p (p prime). Returns (R, pivots)."""
    arr = np.ascontiguousarray(np.asarray(A, dtype=np.int64) % p)
    cdef i64[:, ::1] R = arr
    cdef Py_ssize_t m = R.shape[0], n = R.shape[1]
    cdef Py_ssize_t row = 0, col, r, c, piv, k, nnz
    cdef i64 inv, f, tmp
    cdef i64[::1] nzcols = np.empty(n, dtype=np.int64)
    pivots = []
    for col in range(n):
        if row == m:
            break
        piv = -1
        for r in range(row, m):
            if R[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            for c in range(col, n):
                tmp = R[row, c]
                R[row, c] = R[piv, c]
                R[piv, c] = tmp
        inv = _inv_mod(R[row, col], p)
        nnz = 0
        for c in range(col, n):
            if R[row, c] != 0:
                R[row, c] = (R[row, c] * inv) % p
                nzcols[nnz] = c
                nnz += 1
        for r in range(m):
            if r == row:
                continue
            f = R[r, col]
            if f == 0:
                continue
            f = p - f
            for k in range(nnz):
                c = nzcols[k]
                R[r, c] = (R[r, c] + f * R[row, c]) % p
        pivots.append(col)
        row += 1
    return arr, pivots


cdef list _offsets(int r, int N):
    cdef list offs = [0]
    cdef i64 size = 1, total = 0
    cdef int k
    for k in range(N + 1):
        total += size
        offs.append(total)
        size *= r
    return offs


def series_mul(a, b, int r, int N, i64 p):
    """Truncated product of two flat noncommutative series over Z/p."""
    offs = _offsets(r, N)
    cdef i64[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef i64[::1] bv = np.ascontiguousarray(b, dtype=np.int64)
    out = np.zeros(offs[N + 1], dtype=np.int64)
    cdef i64[::1] cv = out
    cdef i64[::1] off = np.asarray(offs, dtype=np.int64)
    cdef i64[::1] pw = np.asarray([r ** k for k in range(N + 1)], dtype=np.int64)
    cdef int i, j
    cdef i64 ia, jb, x, base, boff
    for i in range(N + 1):
        for ia in range(pw[i]):
            x = av[off[i] + ia]
            if x == 0:
                continue
            for j in range(N - i + 1):
                base = off[i + j] + ia * pw[j]
                boff = off[j]
                for jb in range(pw[j]):
                    if bv[boff + jb] != 0:
                        cv[base + jb] = (cv[base + jb] + x * bv[boff + jb]) % p
    return out


def mul_letter(a, int gen, int sign, int r, int N, i64 p):
    """Right-multiply a flat series by the expansion of x_gen**sign."""
    offs = _offsets(r, N)
    cdef i64[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    out = np.array(a, dtype=np.int64, copy=True)
    cdef i64[::1] cv = out
    term_arr = np.array(a, dtype=np.int64, copy=True)
    cdef i64[::1] t = term_arr
    cdef i64[::1] nxt
    cdef i64[::1] off = np.asarray(offs, dtype=np.int64)
    cdef int m, k
    cdef i64 idx, size
    cdef i64 coef = 1 if sign > 0 else p - 1
    for m in range(1, N + 1):
        nxt_arr = np.zeros(offs[N + 1], dtype=np.int64)
        nxt = nxt_arr
        size = 1
        for k in range(N):
            for idx in range(size):
                if t[off[k] + idx] != 0:
                    nxt[off[k + 1] + idx * r + gen] = (t[off[k] + idx] * coef) % p
            size *= r
        t = nxt
        for idx in range(off[N + 1]):
            if t[idx] != 0:
                cv[idx] = (cv[idx] + t[idx]) % p
        if sign > 0:
            break
    return out
