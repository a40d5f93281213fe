"""Numerical integration and series summation used as independent oracles.

Two engines that share nothing: a Gauss-Laguerre rule (exact for
``exp(-t) * polynomial`` integrands) and a globally adaptive Gauss-Kronrod
7/15 panel integrator for everything else.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import NumericalFailure
from .specfun import _laguerre_derivative_scaled, laguerre_zeros


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_subdivisions: int = 4000
    split_points: tuple = ()

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")
        pts = tuple(float(p) for p in self.split_points)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("split_points must be strictly increasing")
        object.__setattr__(self, "split_points", pts)

    def with_splits(self, points: Sequence[float]) -> "QuadratureSpec":
        merged = sorted(set(self.split_points) | {float(p) for p in points})
        return QuadratureSpec(self.abs_tol, self.rel_tol, self.max_subdivisions, tuple(merged))


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int = field(default=0)


def gauss_laguerre_rule(n: int, alpha: float = 0.0):
    """Nodes and weights of the n-point rule for the weight t**alpha * exp(-t) on [0, inf).

    Weights come from w_i = Gamma(n+alpha+1) / (n! x_i L_n'(x_i)^2), evaluated in
    log form so n up to 200 does not overflow.
    """
    if not 1 <= n <= 200:
        raise ValueError(f"rule size must be in [1, 200], got {n}")
    nodes = laguerre_zeros(n, alpha)
    _, deriv, scale = _laguerre_derivative_scaled(n, alpha, nodes)
    log_w = (
        math.lgamma(n + alpha + 1.0)
        - math.lgamma(n + 1.0)
        - np.log(nodes)
        - 2.0 * (np.log(np.abs(deriv)) + scale)
    )
    return nodes, np.exp(log_w)


# Kronrod 15-point abscissae on [-1, 1] (nonnegative half); odd indices are the Gauss 7 nodes
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES15 = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS7 = np.zeros(15)
_GAUSS7[1:7:2] = _WG[:3]
_GAUSS7[7] = _WG[3]
_GAUSS7[9:14:2] = _WG[:3][::-1]


def _panel(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.asarray(f(mid + half * _NODES15), dtype=np.float64)
    k = half * float(vals @ _KRONROD15)
    g = half * float(vals @ _GAUSS7)
    return k, abs(k - g)


def integrate_interval(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    initial_width: float | None = None,
    abs_tol: float | None = None,
) -> IntegralResult:
    """Globally adaptive G7/K15 integration of a vectorized ``f`` over [a, b].

    Panels start at the spec's split points (and at ``initial_width`` spacing
    if given); the worst panel is bisected until the summed error estimate
    falls below max(abs_tol, rel_tol * |value|).
    """
    if abs_tol is None:
        abs_tol = spec.abs_tol
    edges = [a] + [p for p in spec.split_points if a < p < b] + [b]
    if initial_width:
        refined = [edges[0]]
        for lo, hi in zip(edges, edges[1:]):
            pieces = max(1, math.ceil((hi - lo) / initial_width))
            refined.extend(lo + (hi - lo) * np.arange(1, pieces + 1) / pieces)
        edges = refined
        edges[-1] = b

    heap = []
    evaluations = 0
    total = 0.0
    error = 0.0
    for lo, hi in zip(edges, edges[1:]):
        val, err = _panel(f, lo, hi)
        evaluations += 15
        total += val
        error += err
        heapq.heappush(heap, (-err, lo, hi, val))
    settled = []
    subdivisions = 0
    while error > max(abs_tol, spec.rel_tol * abs(total)) and heap:
        if subdivisions >= spec.max_subdivisions:
            break
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or (hi - lo) <= 1e-14 * max(abs(lo), abs(hi), 1.0):
            # rounding floor: keep the panel but stop refining it
            settled.append((val, -neg_err))
            continue
        total -= val
        error += neg_err
        for l2, h2 in ((lo, mid), (mid, hi)):
            v2, e2 = _panel(f, l2, h2)
            evaluations += 15
            total += v2
            error += e2
            heapq.heappush(heap, (-e2, l2, h2, v2))
        subdivisions += 1
    pieces = [(item[3], -item[0]) for item in heap] + settled
    total = math.fsum(v for v, _ in pieces)
    error = math.fsum(e for _, e in pieces)
    if error > max(abs_tol, spec.rel_tol * abs(total)):
        raise NumericalFailure(
            f"subdivision budget {spec.max_subdivisions} exhausted (error {error:.3g})",
            index=subdivisions,
            best_estimate=IntegralResult(total, error, evaluations),
        )
    return IntegralResult(total, error, evaluations)


def _truncation_point(f, decay_rate, abs_tol, start):
    """Upper limit U with a tail bound below abs_tol / 2.

    Samples g(t) = |f(t)| exp(c t / 2) until the largest value over the last
    quarter of the grid is 1e-3 of the peak, then bounds |f(t)| <= M exp(-c t / 2)
    with M = 1e3 * max g. The half rate absorbs polynomial prefactors; the
    quarter-window max tolerates oscillating integrands.
    """
    c = decay_rate
    h = 0.5 / c
    t = np.arange(0.0, max(start, 1.0 / c) + 40.0 / c + h, h)
    while True:
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_g = np.log(np.abs(np.asarray(f(t), dtype=np.float64))) + 0.5 * c * t
        log_g = np.where(np.isnan(log_g), -np.inf, log_g)
        peak = float(log_g.max())
        if peak == -np.inf:
            return float(max(start, t[-1]))
        window = log_g[3 * len(t) // 4:]
        if window.max() <= peak - math.log(1e3):
            break
        if t[-1] * c > 5000:
            raise NumericalFailure("integrand does not decay at the declared rate")
        t = np.arange(0.0, 2.0 * t[-1] + h, h)
    log_bound = math.log(1e3) + peak
    upper = (2.0 / c) * (log_bound + math.log(4.0 / (c * abs_tol)))
    return float(max(upper, start, t[-1]))


def integrate_halfline(
    f: Callable[[np.ndarray], np.ndarray],
    spec: QuadratureSpec = DEFAULT_SPEC,
    decay_rate: float = 1.0,
) -> IntegralResult:
    """Integral of ``f`` over [0, inf) for integrands decaying like poly(t) exp(-decay_rate t).

    ``f`` must accept a NumPy array.
    """
    if decay_rate <= 0:
        raise ValueError("decay_rate must be positive")
    start = spec.split_points[-1] if spec.split_points else 0.0
    upper = _truncation_point(f, decay_rate, spec.abs_tol, start)
    res = integrate_interval(
        f, 0.0, upper, spec, initial_width=2.0 / decay_rate, abs_tol=0.5 * spec.abs_tol
    )
    return IntegralResult(res.value, res.error_estimate + 0.5 * spec.abs_tol, res.evaluations)


def entropy_integral(
    q: Callable[[np.ndarray], np.ndarray],
    zeros: Sequence[float] = (),
    spec: QuadratureSpec = DEFAULT_SPEC,
    decay_rate: float = 1.0,
) -> IntegralResult:
    """-int_0^inf q ln q, with 0 ln 0 = 0 and panels split at the zeros of q."""

    def integrand(t):
        return _kernels.neg_xlogx(np.asarray(q(t), dtype=np.float64))

    return integrate_halfline(integrand, spec.with_splits(zeros), decay_rate)


def series_sum(
    term: Callable[[int], float],
    tail_bound: Callable[[int], float],
    tol: float = 1e-14,
    max_terms: int = 100_000,
    start: int = 0,
) -> float:
    """Sum term(j) for j >= start, stopping at the first J with tail_bound(J) <= tol.

    ``tail_bound(J)`` must bound |sum_{j > J} term(j)|.
    """
    terms = []
    for j in range(start, start + max_terms):
        terms.append(term(j))
        if tail_bound(j) <= tol:
            return math.fsum(terms)
    raise NumericalFailure(
        f"series tail bound not met after {max_terms} terms", index=max_terms, best_estimate=math.fsum(terms)
    )
