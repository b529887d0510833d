"""Dense row reduction over a prime field.

Two interchangeable implementations: a numba ``@njit`` kernel and a pure numpy
one.  ``SAGALG_DISABLE_JIT=1`` (or numba being unavailable) selects numpy.
Both return bit-identical results.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SAGALG_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes")

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False


def _rref_mod_p_numpy(mat: np.ndarray, p: int):
    m = np.array(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots = np.full(min(nrows, ncols), -1, dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            m[rows] = (m[rows] - np.outer(col[rows], m[r]) % p) % p
        pivots[r] = c
        r += 1
    return m, pivots[:r].copy()


if HAS_NUMBA:

    @njit(cache=True)
    def _inv_mod(a, p):
        t, new_t = 0, 1
        r, new_r = p, a % p
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_mod_p_jit(mat, p):
        m = mat.copy()
        nrows, ncols = m.shape
        for i in range(nrows):
            for j in range(ncols):
                m[i, j] = m[i, j] % p
                if m[i, j] < 0:
                    m[i, j] += p
        pivots = np.full(min(nrows, ncols), -1, dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            k = -1
            for i in range(r, nrows):
                if m[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(ncols):
                    tmp = m[r, j]
                    m[r, j] = m[k, j]
                    m[k, j] = tmp
            inv = _inv_mod(m[r, c], p)
            for j in range(ncols):
                m[r, j] = (m[r, j] * inv) % p
            for i in range(nrows):
                if i != r and m[i, c] != 0:
                    f = m[i, c]
                    for j in range(ncols):
                        if m[r, j] != 0:
                            m[i, j] = (m[i, j] - f * m[r, j]) % p
            pivots[r] = c
            r += 1
        return m, pivots[:r].copy()


def jit_active() -> bool:
    return HAS_NUMBA and not _DISABLED


def rref_mod_p(mat, p: int, use_jit: bool | None = None):
    """Reduced row echelon form of an integer matrix modulo ``p``.

    Returns ``(reduced, pivot_columns)``; ``p`` must be a prime below 2**31 so
    that every intermediate product fits in int64.
    """
    a = np.ascontiguousarray(np.asarray(mat, dtype=np.int64))
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    if use_jit is None:
        use_jit = jit_active()
    if a.size == 0:
        return a.copy(), np.zeros(0, dtype=np.int64)
    if use_jit and HAS_NUMBA:
        return _rref_mod_p_jit(a, np.int64(p))
    return _rref_mod_p_numpy(a, p)


def rank_mod_p(mat, p: int, use_jit: bool | None = None) -> int:
    return int(rref_mod_p(mat, p, use_jit)[1].size)
