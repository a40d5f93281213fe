"""Characteristic functions, moments, large deviations and photon-count laws.

Each closed form has a numerical counterpart here or in the tests:
quadrature characteristic functions, Gauss-Laguerre moments, golden-section
Legendre transforms and summed probability mass functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import NumericalFailure
from .optimize import golden_section_max
from .phase_space import (
    BetaLike,
    RadialDensity,
    ThermalParams,
    as_thermal,
    husimi_pure,
)
from .quadrature import QuadratureSpec, integrate_halfline
from .specfun import hyp2f1_terminating, laguerre

MomentSource = Literal["closed_form_paper", "cf_cumulant", "quadrature"]


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    source: MomentSource


@dataclass(frozen=True)
class RateEvaluation:
    xi: float
    u_star: float
    value: float


# ---------------------------------------------------------------- pure states


def cf_pure(m: int, j: int, u: float) -> complex:
    """E exp(iu Q_j^(m)) = C(m+j, m) (1 - iu)^-(m+j+1) 2F1(-m, -j; -m-j; 1 + u^2)."""
    prefactor = float(math.comb(m + j, m))
    hyp = hyp2f1_terminating(m, j, -float(m + j), 1.0 + u * u)
    return prefactor * hyp * (1.0 - 1j * u) ** (-(m + j + 1))


def moments_pure(m: int, j: int) -> MomentSummary:
    return MomentSummary(float(m + j + 1), float(2 * m * j + m + j + 1), "closed_form_paper")


def cf_numeric(d: RadialDensity, u: float, spec: QuadratureSpec | None = None) -> complex:
    """Characteristic function of a density by adaptive quadrature of exp(iu lambda) d(lambda)."""
    spec = spec or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12)
    spec = spec.with_splits(d.zero_set)
    re = integrate_halfline(lambda t: np.cos(u * t) * d(t), spec, d.decay_rate)
    im = integrate_halfline(lambda t: np.sin(u * t) * d(t), spec, d.decay_rate)
    return complex(re.value, im.value)


def moments_numeric(d: RadialDensity, method: str = "gauss-laguerre") -> MomentSummary:
    """Mean and variance by integrating lambda and lambda^2 against the density."""
    if method == "gauss-laguerre":
        mean = d.expect(lambda t: t, extra_degree=1)
        second = d.expect(lambda t: t * t, extra_degree=2)
    elif method == "adaptive":
        spec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-13).with_splits(d.zero_set)
        mean = integrate_halfline(lambda t: t * d(t), spec, d.decay_rate).value
        second = integrate_halfline(lambda t: t * t * d(t), spec, d.decay_rate).value
    else:
        raise ValueError(f"unknown method {method!r}")
    return MomentSummary(mean, second - mean * mean, "quadrature")


# ------------------------------------------------------------- thermal state


def cf_thermal(m: int, th: BetaLike, u) -> complex:
    """eta (eta - iu e^-beta)^m / (eta - iu)^(m+1)."""
    th = as_thermal(th)
    eta, a = th.eta, th.boltzmann
    return eta * (eta - 1j * u * a) ** m / (eta - 1j * u) ** (m + 1)


def moments_thermal(m: int, th: BetaLike) -> MomentSummary:
    """Mean m + 1/eta and the second cumulant of cf_thermal, (m + 1 - m e^-2beta) / eta^2."""
    th = as_thermal(th)
    eta, a = th.eta, th.boltzmann
    return MomentSummary(m + 1.0 / eta, (m + 1.0 - m * a * a) / eta**2, "cf_cumulant")


def paper_stated_variance(m: int, th: BetaLike) -> float:
    """(m + 1 - e^-2beta) / eta^2, kept verbatim for the discrepancy records."""
    th = as_thermal(th)
    return (m + 1.0 - th.boltzmann**2) / th.eta**2


def log_mgf_thermal(m: int, th: BetaLike, u: float) -> float:
    """log E exp(u Q_beta^(m)) for real u < eta (cf_thermal continued to iu -> u)."""
    th = as_thermal(th)
    eta, a = th.eta, th.boltzmann
    if not u < eta:
        raise ValueError(f"moment generating function diverges for u >= eta = {eta}")
    return math.log(eta) + m * math.log(eta - u * a) - (m + 1) * math.log(eta - u)


def log_mgf_limit(th: BetaLike, u: float) -> float:
    """lim (1/m) log E exp(u Q_beta^(m)) = log((eta - u e^-beta) / (eta - u)), u < eta."""
    th = as_thermal(th)
    eta, a = th.eta, th.boltzmann
    if not u < eta:
        raise ValueError(f"limit is infinite for u >= eta = {eta}")
    return math.log1p(-u * a / eta) - math.log1p(-u / eta)


def _lambda_difference(th, xi):
    """(u1, u2) -> [xi u1 - Lambda(u1)] - [xi u2 - Lambda(u2)] without cancellation."""
    eta, a = th.eta, th.boltzmann

    def diff(u1, u2):
        du = u1 - u2
        d_lambda = math.log1p(-a * du / (eta - a * u2)) - math.log1p(-du / (eta - u2))
        return xi * du - d_lambda

    return diff


def rate_thermal(th: BetaLike, xi: float) -> RateEvaluation:
    """Legendre transform sup_{u < eta} [xi u - Lambda_beta(u)] via the stationarity quadratic.

    Setting the derivative to zero gives xi a u^2 - xi eta (1+a) u + (xi-1) eta^2 = 0
    (a = e^-beta); the root below eta is the maximizer.
    """
    th = as_thermal(th)
    if not xi > 0:
        raise ValueError(f"xi must be positive, got {xi}")
    eta, a = th.eta, th.boltzmann
    A = xi * a
    Bq = -xi * eta * (1.0 + a)
    C = (xi - 1.0) * eta * eta
    disc = math.sqrt(eta * eta * xi * (xi * eta * eta + 4.0 * a))
    # smaller root, written to avoid cancellation in -B - sqrt(D)
    u = 2.0 * C / (-Bq + disc) if A > 0 else -C / Bq
    value = xi * u - log_mgf_limit(th, u)
    return RateEvaluation(xi, u, value)


def rate_thermal_numeric(th: BetaLike, xi: float, lo: float = -50.0) -> RateEvaluation:
    """Golden-section maximization of xi u - Lambda_beta(u) over [lo, eta - 1e-12]."""
    th = as_thermal(th)
    hi = th.eta - 1e-12
    u = golden_section_max(_lambda_difference(th, xi), lo, hi, xtol=1e-15)
    return RateEvaluation(xi, u, xi * u - log_mgf_limit(th, u))


def paper_u_xi(th: BetaLike, xi: float) -> float:
    """The stated maximizer expression, expanded powers of e^-beta included."""
    th = as_thermal(th)
    a = th.boltzmann
    eta = 1.0 - a
    radicand = xi**2 * (1 - 4 * a + 6 * a**2 - 4 * a**3 + a**4) + xi * (4 * a - 8 * a**2 + 4 * a**3)
    return (xi * eta - math.sqrt(radicand)) / (2.0 * xi * a)


def rate_pure_limit(xi: float) -> float:
    """xi - 1 - log xi, the transform of -log(1 - u)."""
    if not xi > 0:
        raise ValueError(f"xi must be positive, got {xi}")
    return xi - 1.0 - math.log(xi)


def legendre_numeric(
    xi: float, log_mgf: Callable[[float], float], lo: float, hi: float
) -> tuple[float, float]:
    """(maximizer, value) of xi u - log_mgf(u) on [lo, hi] by golden section."""
    objective = lambda u: xi * u - log_mgf(u)
    u = golden_section_max(lambda u1, u2: objective(u1) - objective(u2), lo, hi, xtol=1e-15)
    return u, objective(u)


# ------------------------------------------------------- photon-count laws


def pmf_X(m: int, lam: float, j: int) -> float:
    """Pr(X = j) = Q_j^(m)(lambda)."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    return float(husimi_pure(m, j, float(lam)))


def pmf_Y(m: int, lam: float, th: BetaLike) -> float:
    """Laguerre photon-count law with mean thermal photon number N_T and coherent strength lambda.

    N_T^m / (1+N_T)^(m+1) exp(-lambda/(1+N_T)) L_m(-lambda / (N_T (1+N_T))), with the
    Laguerre sum multiplied through by N_T^m term by term.
    """
    th = as_thermal(th)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    n_t = th.N_T
    p = 1.0 + n_t
    y = lam / p
    # N_T^m L_m(-lam/(N_T p)) = sum_k C(m,k) y^k N_T^(m-k) / k!
    if lam == 0.0:
        poly = n_t**m
    else:
        log_y, log_n = math.log(y), math.log(n_t)
        terms = [
            math.exp(
                math.lgamma(m + 1.0) - 2.0 * math.lgamma(k + 1.0) - math.lgamma(m - k + 1.0)
                + k * log_y + (m - k) * log_n
            )
            for k in range(m + 1)
        ]
        poly = math.fsum(terms)
    return poly * math.exp(-y - (m + 1) * math.log(p))


def pmf_Y_literal(m: int, lam: float, th: BetaLike) -> float:
    """The same law evaluated in its stated form; overflows for large m at low temperature."""
    th = as_thermal(th)
    n_t = th.N_T
    return n_t**m / (1 + n_t) ** (m + 1) * math.exp(-lam / (1 + n_t)) * laguerre(m, 0.0, -lam / (n_t * (1 + n_t)))


def pmf_table(pmf: Callable[[int], float], cutoff: float = 1e-12, start_tail: int = 0, max_index: int = 100_000):
    """Masses p(0), p(1), ... up to the first J >= start_tail with CDF >= 1 - cutoff and p decreasing."""
    masses = []
    cdf = 0.0
    for k in range(max_index):
        p = pmf(k)
        if p < 0:
            raise NumericalFailure(f"negative mass {p} at {k}", index=k)
        masses.append(p)
        cdf += p
        if k >= start_tail and cdf >= 1.0 - cutoff and (k == 0 or p <= masses[-2]):
            return np.array(masses)
    raise NumericalFailure("mass function did not reach its cutoff", index=max_index, best_estimate=cdf)


def pmf_X_table(m: int, lam: float, cutoff: float = 1e-12) -> np.ndarray:
    return pmf_table(lambda j: pmf_X(m, lam, j), cutoff, start_tail=int(m + lam) + 1)


def pmf_Y_table(lam: float, th: BetaLike, cutoff: float = 1e-12) -> np.ndarray:
    th = as_thermal(th)
    mean = th.N_T + lam
    return pmf_table(lambda m: pmf_Y(m, lam, th), cutoff, start_tail=int(mean) + 1)


def sample_pmf(pmf: Callable[[int], float], n: int, seed: int, cutoff: float = 1e-12) -> np.ndarray:
    """Inverse-CDF sampling; the table ends where the CDF first reaches 1 - cutoff."""
    masses = []
    cdf = 0.0
    k = 0
    while cdf < 1.0 - cutoff:
        p = pmf(k)
        masses.append(p)
        cdf += p
        k += 1
        if k > 1_000_000:
            raise NumericalFailure("mass function does not sum to one", best_estimate=cdf)
    cum = np.cumsum(masses)
    rng = np.random.default_rng(np.random.PCG64(seed))
    u = rng.random(n) * cum[-1]
    idx = np.searchsorted(cum, u, side="right")
    return np.minimum(idx, len(masses) - 1)
