"""Special-function kernel.

Orthogonal polynomials (generalized Laguerre, physicists' Hermite), gamma
family functions, terminating Gauss hypergeometric sums and partial Bell
polynomials. Array arguments are evaluated through the compiled kernels when
available.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import _kernels
from .errors import NumericalFailure, ZeroPochhammerError

EULER_GAMMA = 0.57721566490153286061

# largest n with n! finite in double precision
MAX_FACTORIAL = 170

_RESCALE = 1e150


def _evaluate(kernel, *args):
    x = args[-1]
    if np.ndim(x) == 0:
        return float(kernel(*args[:-1], np.array([x], dtype=np.float64))[0])
    return kernel(*args[:-1], np.asarray(x, dtype=np.float64))


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x) by three-term recurrence.

    Accepts a scalar or an array for ``x``; negative arguments are fine.
    """
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return _evaluate(_kernels.laguerre, int(n), float(alpha), x)


def hermite(m: int, x):
    """Physicists' Hermite polynomial H_m(x)."""
    if m < 0:
        raise ValueError(f"degree must be nonnegative, got {m}")
    return _evaluate(_kernels.hermite, int(m), x)


def _laguerre_scaled(n, alpha, x):
    """Return (L_n, L_{n-1}, log_scale) with the true values ``exp(log_scale)`` times larger.

    Rescales during the recurrence so large degrees at large arguments do not
    overflow. ``x`` is a 1-d array.
    """
    x = np.asarray(x, dtype=np.float64)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    scale = np.zeros_like(x)
    for k in range(n):
        nxt = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if big.any():
            s = np.where(big, np.abs(cur), 1.0)
            cur = cur / s
            prev = prev / s
            scale = scale + np.log(s)
    return cur, prev, scale


def _laguerre_derivative_scaled(n, alpha, x):
    ln, lnm1, scale = _laguerre_scaled(n, alpha, x)
    deriv = (n * ln - (n + alpha) * lnm1) / x
    return ln, deriv, scale


def laguerre_zeros(n: int, alpha: float = 0.0) -> np.ndarray:
    """Zeros of L_n^(alpha), ascending.

    Golub-Welsch eigenvalues of the symmetric Jacobi matrix, then Newton
    polishing with the recurrence.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if alpha <= -1:
        raise ValueError(f"need alpha > -1, got {alpha}")
    k = np.arange(n, dtype=np.float64)
    diag = 2.0 * k + alpha + 1.0
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    try:
        x = eigvalsh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"Jacobi eigenvalues failed for n={n}", index=n) from exc
    x = np.sort(x)
    rel_step = np.inf
    for _ in range(20):
        ln, dln, _scale = _laguerre_derivative_scaled(n, alpha, x)
        step = ln / dln
        x = x - step
        rel_step = np.max(np.abs(step) / x)
        if rel_step <= 1e-15:
            break
    # steps stall at a few ulps once rounding dominates
    if not rel_step <= 1e-12:
        raise NumericalFailure(f"Newton polishing of Laguerre zeros did not settle (n={n})", index=n)
    if not (np.all(x > 0) and np.all(np.diff(x) > 0)):
        raise NumericalFailure(f"Laguerre zeros not simple and positive (n={n})", index=n)
    return x


def log_gamma(x: float) -> float:
    if x <= 0:
        raise ValueError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


# B_2k / (2k) for the asymptotic digamma series, k = 1..7
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x: float) -> float:
    """psi(x) for x > 0: recurrence shift to x >= 8, then the Stirling-type series.

    Small integer arguments use the harmonic sum, which avoids the cancellation
    in the shift.
    """
    if x <= 0:
        raise ValueError(f"digamma needs x > 0, got {x}")
    if x < 8.0 and float(x).is_integer():
        return harmonic_digamma(int(x) - 1)
    shift = 0.0
    while x < 8.0:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    for coef in reversed(_DIGAMMA_ASYMPTOTIC):
        series = series * inv2 + coef
    return shift + math.log(x) - 0.5 / x - series * inv2


def harmonic_digamma(j: int) -> float:
    """psi(j + 1) = -gamma + H_j, exact summation for integer j >= 0."""
    return -EULER_GAMMA + math.fsum(1.0 / k for k in range(1, j + 1))


def factorial(n: int) -> float:
    if n < 0:
        raise ValueError(f"factorial of negative {n}")
    if n > MAX_FACTORIAL:
        raise OverflowError(f"{n}! exceeds double range; use log_factorial")
    return float(math.factorial(n))


def log_factorial(n: int) -> float:
    if n < 0:
        raise ValueError(f"factorial of negative {n}")
    return math.lgamma(n + 1.0)


def binomial(n: float, k: int) -> float:
    """Generalized binomial coefficient C(n, k) for real n and integer k."""
    if k < 0:
        return 0.0
    if float(n).is_integer() and n >= 0:
        n = int(n)
        if k > n:
            return 0.0
        value = math.comb(n, k)
        if value.bit_length() > 1023:
            raise OverflowError(f"C({n}, {k}) exceeds double range")
        return float(value)
    out = 1.0
    for i in range(k):
        out *= (n - i) / (i + 1)
    return out


def log_binomial(n: int, k: int) -> float:
    return math.lgamma(n + 1.0) - math.lgamma(k + 1.0) - math.lgamma(n - k + 1.0)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0:
        raise ValueError(f"negative Pochhammer length {k}")
    out = 1.0
    for i in range(k):
        out *= a + i
    if math.isinf(out):
        raise OverflowError(f"({a})_{k} exceeds double range")
    return out


def hyp2f1_terminating(m: int, j: int, c: float, z: float) -> float:
    """2F1(-m, -j; c; z) summed exactly up to k = min(m, j).

    Raises ZeroPochhammerError if (c)_k vanishes inside that range.
    """
    if m < 0 or j < 0:
        raise ValueError("upper parameters must be nonpositive integers -m, -j")
    top = min(m, j)
    term = 1.0
    total = 1.0
    for k in range(top):
        denom = (c + k) * (k + 1)
        if c + k == 0:
            raise ZeroPochhammerError(f"(c)_{k + 1} = 0 for c={c}")
        term *= (-m + k) * (-j + k) / denom * z
        total += term
    return total


def partial_bell(s: int, l: int, a: Sequence[float]) -> float:
    """Partial Bell polynomial B_{s,l}(a_1, ..., a_{s-l+1}).

    Uses B_{s,l} = sum_i C(s-1, i-1) a_i B_{s-i, l-1} with B_{0,0} = 1.
    """
    if s < 0 or l < 0 or l > s:
        raise ValueError(f"invalid Bell indices s={s}, l={l}")
    if len(a) != s - l + 1:
        raise ValueError(f"B_{{{s},{l}}} takes {s - l + 1} arguments, got {len(a)}")
    return _bell_table(s, l, tuple(float(v) for v in a))[s][l]


@lru_cache(maxsize=256)
def _bell_table(s, l, a):
    # table[p][r] = B_{p,r}; only r <= l and p - r <= s - l are ever needed
    table = [[0.0] * (l + 1) for _ in range(s + 1)]
    table[0][0] = 1.0
    for r in range(1, l + 1):
        for p in range(r, s - l + r + 1):
            acc = 0.0
            for i in range(1, p - r + 2):
                if p - i < r - 1:
                    break
                acc += math.comb(p - 1, i - 1) * a[i - 1] * table[p - i][r - 1]
            table[p][r] = acc
    return table
