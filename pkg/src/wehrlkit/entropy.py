"""Wehrl, Renyi and von Neumann entropies.

Closed forms sit next to their quadrature counterparts. The thermal closed
form ``wehrl_thermal_paper`` is kept exactly as published (it is the object
whose minimum ``min_entropy`` locates) and is reported side by side with the
integrated entropy rather than trusted on its own.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import NumericalFailure
from .optimize import golden_section_min, safeguarded_newton
from .phase_space import (
    BetaLike,
    Pure,
    RadialDensity,
    Thermal,
    as_thermal,
    make_density,
)
from .quadrature import QuadratureSpec, entropy_integral, integrate_halfline
from .specfun import digamma, partial_bell

ENTROPY_SPEC = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-13, max_subdivisions=8000)


@dataclass(frozen=True)
class EntropyReport:
    subject: Union[Pure, Thermal]
    numeric_value: float
    paper_value: Optional[float]
    formula_id: str
    abs_diff: Optional[float]


@dataclass(frozen=True)
class MinimumSolution:
    m: int
    tau: float
    beta_min: float
    T_min: float
    S_min: float
    tau_closed_form: float
    residual: float
    beta_golden: float
    numerical_failure: bool


def wehrl_numeric(d: RadialDensity, spec: QuadratureSpec = ENTROPY_SPEC) -> float:
    """-int q ln q over [0, inf) for a radial Husimi density."""
    return entropy_integral(d, d.zero_set, spec, d.decay_rate).value


def wehrl_pure_m0(j: int) -> float:
    """1 + j + log j! - j psi(j + 1): entropy of the Gamma(j+1) law."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return 1.0 + j + math.lgamma(j + 1.0) - j * digamma(j + 1.0)


def wehrl_pure_asymptotic(m: int, j: int) -> tuple[float, float]:
    """Leading term and upper bound of the large-index pure-state entropy.

    Returns (log(2pi/e * n^(a+1) / (N+1)^a), log(2pi/e * n)) with n = min, N = max,
    a = |m - j|. The neglected o(1) is not quantified.
    """
    n, big, a = min(m, j), max(m, j), abs(m - j)
    if n < 1:
        raise ValueError("asymptotic form needs min(m, j) >= 1")
    base = math.log(2.0 * math.pi) - 1.0
    value = base + (a + 1) * math.log(n) - a * math.log(big + 1.0)
    return value, base + math.log(n)


def wehrl_thermal_paper(m: int, th: BetaLike) -> float:
    """1 - log(1 - e^-beta) + m (beta + e^-beta - e^-2beta), in its stated form."""
    th = as_thermal(th)
    a = th.boltzmann
    return 1.0 - math.log(th.eta) + m * (th.beta + a - a * a)


def wehrl_thermal_verify(m: int, th: BetaLike, spec: QuadratureSpec = ENTROPY_SPEC) -> EntropyReport:
    th = as_thermal(th)
    numeric = wehrl_numeric(make_density(Thermal(m, th.beta)), spec)
    closed = wehrl_thermal_paper(m, th)
    return EntropyReport(Thermal(m, th.beta), numeric, closed, "thermal-closed-form", abs(numeric - closed))


def _closed_form_difference(m):
    """(b1, b2) -> S(b1) - S(b2) for the thermal closed form, free of cancellation."""

    def diff(b1, b2):
        db = b1 - b2
        e2 = math.exp(-b2)
        d_exp = e2 * math.expm1(-db)  # e^-b1 - e^-b2
        d_exp2 = e2 * e2 * math.expm1(-2.0 * db)
        d_log = math.log1p(-d_exp / -math.expm1(-b2))  # log((1-e^-b1)/(1-e^-b2))
        return -d_log + m * (db + d_exp - d_exp2)

    return diff


def tau_closed_form(m: int) -> float:
    """Cardano-type expression for the minimizing e^-beta, in its stated form."""
    root = math.sqrt(28.0 + 8.0 / m**3 + 39.0 / m**2 - 48.0 / m)
    w = (root / (24.0 * math.sqrt(3.0)) + (m - 1.0) / (8.0 * m)) ** (1.0 / 3.0)
    return 0.5 + w - (2.0 + m) / (12.0 * m * w)


def _cubic(m):
    f = lambda t: ((2.0 * m * t - 3.0 * m) * t + (2.0 * m + 1.0)) * t - m
    df = lambda t: (6.0 * m * t - 6.0 * m) * t + 2.0 * m + 1.0
    return f, df


def min_entropy(m: int) -> MinimumSolution:
    """Minimum over beta of the thermal closed-form entropy.

    Stationarity in tau = e^-beta is the cubic 2m tau^3 - 3m tau^2 + (2m+1) tau - m = 0,
    which is increasing on (0, 1) with a single root there.
    """
    if m < 1:
        raise ValueError("the formula has an interior minimum only for m >= 1")
    f, df = _cubic(m)
    closed = tau_closed_form(m)
    tau = safeguarded_newton(f, df, 0.0, 1.0, x0=0.5)
    beta = -math.log(tau)
    beta_golden = golden_section_min(_closed_form_difference(m), 1e-6, 60.0, xtol=1e-15)
    return MinimumSolution(
        m=m,
        tau=tau,
        beta_min=beta,
        T_min=1.0 / beta,
        S_min=wehrl_thermal_paper(m, beta),
        tau_closed_form=closed,
        residual=abs(f(tau)),
        beta_golden=beta_golden,
        numerical_failure=abs(closed - tau) > 1e-8,
    )


def wehrl_thermal_paper_derivative(m: int, beta: float) -> float:
    a = math.exp(-beta)
    return -a / -math.expm1(-beta) + m * (1.0 - a + 2.0 * a * a)


def renyi_numeric(d: RadialDensity, q: float, spec: QuadratureSpec = ENTROPY_SPEC) -> float:
    """(1 / (1 - q)) log int d^q."""
    if not q > 0 or q == 1:
        raise ValueError(f"Renyi order must be positive and != 1, got {q}")
    spec = spec.with_splits(d.zero_set)
    res = integrate_halfline(lambda t: d(t) ** q, spec, q * d.decay_rate)
    if not res.value > 0:
        raise NumericalFailure(f"nonpositive power integral {res.value}", best_estimate=res)
    return math.log(res.value) / (1.0 - q)


def renyi_coefficient(n: int, alpha: int, k: int) -> float:
    """Expansion coefficient c_k^(n, alpha) in its stated form (zero for k > n)."""
    if k > n or k < 0:
        return 0.0
    return (
        math.sqrt(math.exp(math.lgamma(n + k + 1.0) - math.lgamma(n + 1.0)))
        * (-1) ** k
        / math.factorial(alpha + k)
        * math.comb(n, k)
    )


def laguerre_coefficient(n: int, alpha: int, k: int) -> float:
    """Coefficient of lambda^k in sqrt(n!/(n+alpha)!) L_n^(alpha)(lambda), so Q = e^-lambda lambda^alpha P^2."""
    if k > n or k < 0:
        return 0.0
    log_mag = (
        0.5 * (math.lgamma(n + 1.0) - math.lgamma(n + alpha + 1.0))
        + math.lgamma(n + alpha + 1.0)
        - math.lgamma(n - k + 1.0)
        - math.lgamma(alpha + k + 1.0)
        - math.lgamma(k + 1.0)
    )
    return (-1) ** k * math.exp(log_mag)


def renyi_bell(m: int, j: int, q: float, coefficients: str = "stated") -> float:
    """Renyi entropy from the Bell-polynomial sum, for 2q a positive integer, q != 1.

    ``coefficients="stated"`` uses ``renyi_coefficient``; ``"laguerre"`` uses the
    actual polynomial coefficients, which makes the sum exact whenever P^(2q) = |P|^(2q)
    (q an integer, or min(m, j) = 0).
    """
    two_q = 2.0 * q
    if not (two_q > 0 and float(two_q).is_integer()) or q == 1:
        raise ValueError(f"need 2q a positive integer and q != 1, got q={q}")
    coef = {"stated": renyi_coefficient, "laguerre": laguerre_coefficient}.get(coefficients)
    if coef is None:
        raise ValueError(f"unknown coefficient set {coefficients!r}")
    l = int(two_q)
    n, alpha = min(m, j), abs(m - j)
    args = [math.factorial(i + 1) * coef(n, alpha, i) for i in range(n * l + 1)]
    terms = []
    for k in range(0, n * l + 1):
        bell = partial_bell(k + l, l, args[: k + 1])
        if bell == 0.0:
            continue
        log_mag = (
            math.lgamma(alpha * q + k + 1.0)
            - (alpha * q + k + 1.0) * math.log(q)
            + math.lgamma(l + 1.0)
            - math.lgamma(k + l + 1.0)
            + math.log(abs(bell))
        )
        terms.append(math.copysign(math.exp(log_mag), bell))
    total = math.fsum(terms)
    if not total > 0:
        raise NumericalFailure(f"Bell sum is nonpositive ({total}); logarithm undefined", best_estimate=total)
    return math.log(total) / (1.0 - q)


def von_neumann_thermal(th: BetaLike) -> float:
    """-log(2 sinh(beta/2)) + (beta/2) coth(beta/2), in a form stable at large beta."""
    th = as_thermal(th)
    b = th.beta
    return -math.log1p(-math.exp(-b)) + b * math.exp(-b) / -math.expm1(-b)


def von_neumann_thermal_hyperbolic(th: BetaLike) -> float:
    """Same quantity coded with sinh and cosh directly."""
    th = as_thermal(th)
    h = 0.5 * th.beta
    return -math.log(2.0 * math.sinh(h)) + h * math.cosh(h) / math.sinh(h)
