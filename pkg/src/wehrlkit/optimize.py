"""One-dimensional search: golden-section extremum and safeguarded Newton.

Golden-section only ever compares two objective values, so it takes a
``difference(x1, x2) = f(x1) - f(x2)`` callable. Objectives that can form that
difference without cancellation locate their extremum far below the usual
sqrt(eps) floor.
"""
from __future__ import annotations

import math
from typing import Callable

from .errors import NumericalFailure

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def plain_difference(f: Callable[[float], float]) -> Callable[[float, float], float]:
    return lambda x1, x2: f(x1) - f(x2)


def golden_section_max(
    difference: Callable[[float, float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-14,
    max_iter: int = 500,
) -> float:
    """Maximizer of a unimodal function on [lo, hi]."""
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    for _ in range(max_iter):
        if hi - lo <= xtol * max(1.0, abs(lo), abs(hi)):
            break
        if difference(c, d) > 0:
            hi, d = d, c
            c = hi - _INVPHI * (hi - lo)
        else:
            lo, c = c, d
            d = lo + _INVPHI * (hi - lo)
    return 0.5 * (lo + hi)


def golden_section_min(difference, lo, hi, xtol=1e-14, max_iter=500):
    return golden_section_max(lambda a, b: -difference(a, b), lo, hi, xtol, max_iter)


def safeguarded_newton(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    lo: float,
    hi: float,
    x0: float | None = None,
    tol: float = 1e-15,
    max_iter: int = 200,
) -> float:
    """Root of f in [lo, hi] where f(lo) and f(hi) differ in sign.

    Newton steps that leave the current bracket are replaced by bisection.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("root is not bracketed")
    x = 0.5 * (lo + hi) if x0 is None else x0
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
        else:
            hi = x
        dfx = fprime(x)
        step_ok = dfx != 0.0
        if step_ok:
            nxt = x - fx / dfx
            step_ok = lo < nxt < hi
        if not step_ok:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= tol * max(1.0, abs(x)):
            return nxt
        x = nxt
    raise NumericalFailure("safeguarded Newton did not converge", best_estimate=x)
