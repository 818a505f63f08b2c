"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Two kernels dominate runtime: the associated Laguerre recurrence evaluated on
sample grids, and the long partition sums of the vector sector (up to ~3e7
terms at gamma = 0.01). Both exist twice; ``laguerre_array`` and
``weighted_exp_sqrt_sum`` dispatch on ``_accel.BACKEND``.
"""
import math

import numpy as np

from dkpo_lab import _accel
from dkpo_lab._accel import njit

BACKEND = _accel.BACKEND


# --------------------------------------------------------------------------
# Associated Laguerre polynomials, upward recurrence in the degree
# --------------------------------------------------------------------------


def laguerre_numpy(n, k, x):
    x = np.asarray(x, dtype=np.float64)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + k - x
    for m in range(2, n + 1):
        prev, cur = cur, ((2 * m - 1 + k - x) * cur - (m - 1 + k) * prev) / m
    return cur


@njit(cache=True)
def laguerre_numba(n, k, x):
    out = np.empty(x.shape[0])
    for j in range(x.shape[0]):
        xj = x[j]
        prev = 1.0
        if n == 0:
            out[j] = prev
            continue
        cur = 1.0 + k - xj
        for m in range(2, n + 1):
            nxt = ((2 * m - 1 + k - xj) * cur - (m - 1 + k) * prev) / m
            prev = cur
            cur = nxt
        out[j] = cur
    return out


def laguerre_array(n, k, x):
    """L_n^(k)(x) elementwise; ``x`` may be a scalar or any-shaped array."""
    x = np.asarray(x, dtype=np.float64)
    if _accel.USE_NUMBA:
        flat = np.ascontiguousarray(x.reshape(-1))
        return laguerre_numba(int(n), float(k), flat).reshape(x.shape)
    return laguerre_numpy(int(n), float(k), x)


# --------------------------------------------------------------------------
# Partial sums  sum_{n0 <= j < n1} (j + shift) * exp(-gamma * sqrt(a*j + b))
# --------------------------------------------------------------------------


def weighted_exp_sqrt_numpy(gamma, a, b, shift, n0, n1, chunk=1 << 20):
    total = 0.0
    last = 0.0
    parts = []
    for start in range(n0, n1, chunk):
        j = np.arange(start, min(start + chunk, n1), dtype=np.float64)
        terms = (j + shift) * np.exp(-gamma * np.sqrt(a * j + b))
        parts.append(float(np.sum(terms)))
        last = float(terms[-1])
    if parts:
        total = math.fsum(parts)
    return total, last


@njit(cache=True)
def weighted_exp_sqrt_numba(gamma, a, b, shift, n0, n1):
    # Neumaier-compensated accumulation
    s = 0.0
    c = 0.0
    term = 0.0
    for j in range(n0, n1):
        term = (j + shift) * math.exp(-gamma * math.sqrt(a * j + b))
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        s = t
    return s + c, term


def weighted_exp_sqrt_sum(gamma, a, b, shift, n0, n1):
    """Return ``(block_sum, last_term)`` over the integer range [n0, n1)."""
    if n1 <= n0:
        return 0.0, 0.0
    if _accel.USE_NUMBA:
        s, last = weighted_exp_sqrt_numba(float(gamma), float(a), float(b),
                                          float(shift), int(n0), int(n1))
        return float(s), float(last)
    return weighted_exp_sqrt_numpy(gamma, a, b, shift, n0, n1)
