"""Pure-NumPy kernels. Same signatures as the compiled ``_core`` module.

Every function takes and returns contiguous float64 arrays.
"""
import numpy as np

# below this, x*log(x) is treated as its limit 0
XLOGX_FLOOR = 1e-300


def laguerre(n, alpha, x):
    x = np.asarray(x, dtype=np.float64)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def hermite(m, x):
    x = np.asarray(x, dtype=np.float64)
    prev = np.ones_like(x)
    if m == 0:
        return prev
    cur = 2.0 * x
    for k in range(1, m):
        prev, cur = cur, 2.0 * x * cur - 2.0 * k * prev
    return cur


def rakhmanov(n, alpha, log_pref, lam):
    """exp(log_pref - lam) * lam**alpha * L_n^(alpha)(lam)**2 for integer alpha >= 0."""
    lam = np.asarray(lam, dtype=np.float64)
    lag = laguerre(n, alpha, lam)
    with np.errstate(divide="ignore"):
        expo = log_pref - lam + (alpha * np.log(lam) if alpha else 0.0)
    return np.exp(expo) * lag * lag


def exp_poly(coeffs, rate, lam):
    """exp(-rate * lam) * sum_k coeffs[k] * lam**k via Horner."""
    lam = np.asarray(lam, dtype=np.float64)
    acc = np.zeros_like(lam)
    for c in coeffs[::-1]:
        acc = acc * lam + c
    return np.exp(-rate * lam) * acc


def neg_xlogx(q):
    q = np.asarray(q, dtype=np.float64)
    out = np.zeros_like(q)
    live = q > XLOGX_FLOOR
    out[live] = -q[live] * np.log(q[live])
    return out
