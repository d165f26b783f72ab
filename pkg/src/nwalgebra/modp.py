"""Dense prime-field kernels used by the graded construction in fast mode.

Everything here works on ``numpy`` int64 arrays holding residues in
``[0, p)`` with ``p < 2**31``, so a single product never overflows int64
and every intermediate is reduced immediately.  The hot loops compile
with numba when available; setting the environment variable
``NWALGEBRA_NO_NUMBA=1`` (or a failed numba import) selects the pure
numpy fallback with identical semantics.  Results of both paths are
bit-identical.  ``benchmarks/bench_modp.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("NWALGEBRA_NO_NUMBA", "") == ""
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if not USE_NUMBA:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _modinv(a, p):
    """Inverse of a mod p by Fermat exponentiation (p prime)."""
    r = np.int64(1)
    b = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


@njit(cache=True)
def _greedy_solve_kernel(a, p):
    """Greedy left-to-right column selection with full coordinates.

    Columns of ``a`` are offered in order; independent ones are selected.
    Returns (nsel, sel, coords) where sel[:nsel] are the selected column
    indices and coords[:nsel, c] are the coefficients of column c over
    the selected columns.
    """
    m, ncols = a.shape
    maxr = m if m < ncols else ncols
    ech = np.zeros((maxr, m), dtype=np.int64)
    expr = np.zeros((maxr, maxr), dtype=np.int64)
    piv = np.zeros(maxr, dtype=np.int64)
    sel = np.zeros(maxr, dtype=np.int64)
    coords = np.zeros((maxr, ncols), dtype=np.int64)
    cf = np.zeros(maxr, dtype=np.int64)
    r = 0
    for c in range(ncols):
        v = a[:, c] % p
        for k in range(r):
            f = v[piv[k]]
            cf[k] = f
            if f != 0:
                for i in range(m):
                    v[i] = (v[i] - f * ech[k, i]) % p
        q = -1
        for i in range(m):
            if v[i] != 0:
                q = i
                break
        if q < 0:
            for k in range(r):
                f = cf[k]
                if f != 0:
                    for j in range(r):
                        coords[j, c] = (coords[j, c] + f * expr[k, j]) % p
        else:
            pinv = _modinv(v[q], p)
            for i in range(m):
                ech[r, i] = (v[i] * pinv) % p
            # echelon row r = pinv * (column c - sum_k cf[k] * ech[k])
            expr[r, r] = pinv
            for k in range(r):
                f = (cf[k] * pinv) % p
                if f != 0:
                    for j in range(r):
                        expr[r, j] = (expr[r, j] - f * expr[k, j]) % p
            piv[r] = q
            sel[r] = c
            coords[r, c] = 1
            r += 1
    return r, sel, coords


def _greedy_solve_numpy(a, p):
    """Pure numpy fallback with the same contract as the kernel."""
    a = np.asarray(a, dtype=np.int64)
    m, ncols = a.shape
    maxr = min(m, ncols)
    ech = np.zeros((maxr, m), dtype=np.int64)
    expr = np.zeros((maxr, maxr), dtype=np.int64)
    piv = np.zeros(maxr, dtype=np.int64)
    sel = np.zeros(maxr, dtype=np.int64)
    coords = np.zeros((maxr, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        v = a[:, c] % p
        cf = np.zeros(maxr, dtype=np.int64)
        for k in range(r):
            f = v[piv[k]]
            if f:
                cf[k] = f
                v = (v - f * ech[k]) % p
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            for k in range(r):
                f = cf[k]
                if f:
                    coords[:r, c] = (coords[:r, c] + f * expr[k, :r]) % p
        else:
            q = int(nz[0])
            pinv = pow(int(v[q]), p - 2, p)
            ech[r] = (v * pinv) % p
            expr[r, r] = pinv
            for k in range(r):
                f = (int(cf[k]) * pinv) % p
                if f:
                    expr[r, :r] = (expr[r, :r] - f * expr[k, :r]) % p
            piv[r] = q
            sel[r] = c
            coords[r, c] = 1
            r += 1
    return r, sel, coords


def greedy_solve(a, p):
    """Select independent columns greedily and express every column.

    Returns (selected_indices, coords) with coords of shape
    (len(selected), ncols); column c of coords gives the exact
    coefficients of a[:, c] over the selected columns, all mod p.
    """
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros(0, dtype=np.int64), np.zeros((0, a.shape[1]), dtype=np.int64)
    if USE_NUMBA:
        r, sel, coords = _greedy_solve_kernel(a, np.int64(p))
    else:
        r, sel, coords = _greedy_solve_numpy(a, p)
    return sel[:r].copy(), coords[:r].copy()


def matmul_mod(a, b, p):
    """Exact (a @ b) mod p for int64 residue matrices."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    # accumulate one rank-1 update at a time; products stay below 2**62
    for k in range(a.shape[1]):
        col = a[:, k]
        if not col.any():
            continue
        out = (out + np.outer(col, b[k])) % p
    return out


def matvec_mod(a, v, p):
    a = np.asarray(a, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    out = np.zeros(a.shape[0], dtype=np.int64)
    for k in range(a.shape[1]):
        x = v[k]
        if x:
            out = (out + a[:, k] * x) % p
    return out
