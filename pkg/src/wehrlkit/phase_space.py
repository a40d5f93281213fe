"""Husimi densities for the Landau-level coherent states |(x,y),B,m>.

Everything depends on the phase-space point only through
lambda = B (x^2 + y^2) / 2, so densities are functions on [0, inf). The
wavefunction overlap oracle works directly on the real line instead and
shares no code with the closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from . import _kernels
from .errors import NumericalFailure
from .quadrature import QuadratureSpec, gauss_laguerre_rule, integrate_interval, series_sum
from .specfun import hermite, laguerre_zeros


@dataclass(frozen=True)
class LevelParams:
    B: float
    m: int

    def __post_init__(self):
        if not self.B > 0:
            raise ValueError(f"magnetic field must be positive, got {self.B}")
        if self.m < 0:
            raise ValueError(f"Landau index must be nonnegative, got {self.m}")


@dataclass(frozen=True)
class ThermalParams:
    """Inverse temperature beta (k = 1) and the derived quantities."""

    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    @classmethod
    def from_temperature(cls, T: float) -> "ThermalParams":
        if not T > 0:
            raise ValueError(f"temperature must be positive, got {T}")
        return cls(1.0 / T)

    @property
    def T(self) -> float:
        return 1.0 / self.beta

    @property
    def eta(self) -> float:
        return -math.expm1(-self.beta)

    @property
    def boltzmann(self) -> float:
        """exp(-beta)."""
        return math.exp(-self.beta)

    @property
    def N_T(self) -> float:
        """Mean thermal photon number 1 / (exp(1/T) - 1)."""
        return 1.0 / math.expm1(self.beta)

    @property
    def Z(self) -> float:
        """Oscillator partition function 1 / (2 sinh(beta/2))."""
        return 0.5 / math.sinh(0.5 * self.beta)


BetaLike = Union[ThermalParams, float]


def as_thermal(th: BetaLike) -> ThermalParams:
    return th if isinstance(th, ThermalParams) else ThermalParams(float(th))


def lambda_of(B: float, x, y):
    if not B > 0:
        raise ValueError(f"magnetic field must be positive, got {B}")
    return 0.5 * B * (np.square(x) + np.square(y))


def landau_energy(p: LevelParams) -> float:
    return (p.m + 0.5) * p.B


def _scalar_or_array(kernel_out, lam):
    if np.ndim(lam) == 0:
        return float(kernel_out[0])
    return kernel_out


def _pure_log_prefactor(m, j):
    n, a = min(m, j), abs(m - j)
    return math.lgamma(n + 1.0) - math.lgamma(n + a + 1.0)


def husimi_pure(m: int, j: int, lam):
    """Q_j^(m)(lambda) = (m^j)!/(m v j)! e^-lambda lambda^|m-j| (L_{m^j}^(|m-j|)(lambda))^2."""
    if m < 0 or j < 0:
        raise ValueError("Landau and Fock indices must be nonnegative")
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=np.float64))
    if np.any(lam_arr < 0):
        raise ValueError("lambda must be nonnegative")
    out = _kernels.rakhmanov(min(m, j), abs(m - j), _pure_log_prefactor(m, j), lam_arr)
    return _scalar_or_array(out, lam)


def husimi_pure_xy(m: int, j: int, B: float, x: float, y: float) -> float:
    return husimi_pure(m, j, float(lambda_of(B, x, y)))


def _thermal_coefficients(m, th):
    """Polynomial coefficients c_k with Q_beta^(m)(lambda) = exp(-eta lambda) sum_k c_k lambda^k.

    c_k = eta C(m,k) eta^(2k) exp(-(m-k) beta) / k!, built in log form so
    exp(beta) is never formed on its own.
    """
    eta = th.eta
    log_eta = math.log(eta)
    k = np.arange(m + 1)
    log_binom = np.array([math.lgamma(m + 1.0) - math.lgamma(i + 1.0) - math.lgamma(m - i + 1.0) for i in k])
    log_fact = np.array([math.lgamma(i + 1.0) for i in k])
    return np.exp(log_eta + log_binom + 2.0 * k * log_eta - (m - k) * th.beta - log_fact)


def husimi_thermal(m: int, th: BetaLike, lam):
    """Husimi density of the oscillator Gibbs state in the m-th level coherent states.

    eta exp(-eta lambda) exp(-m beta) L_m(-lambda eta^2 e^beta), expanded
    term by term.
    """
    th = as_thermal(th)
    if m < 0:
        raise ValueError("Landau index must be nonnegative")
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=np.float64))
    if np.any(lam_arr < 0):
        raise ValueError("lambda must be nonnegative")
    out = _kernels.exp_poly(_thermal_coefficients(m, th), th.eta, lam_arr)
    return _scalar_or_array(out, lam)


def husimi_thermal_series(m: int, th: BetaLike, lam: float, tol: float = 1e-16) -> float:
    """Thermal Husimi value by summing (1 - e^-beta) e^(-beta j) Q_j^(m)(lambda) over Fock states.

    Each Q_j^(m) is a squared overlap of unit vectors, so the tail after J is
    at most exp(-beta (J + 1)).
    """
    th = as_thermal(th)
    eta, beta = th.eta, th.beta
    return series_sum(
        lambda j: eta * math.exp(-beta * j) * husimi_pure(m, j, lam),
        lambda j: math.exp(-beta * (j + 1)),
        tol=tol,
    )


def husimi_zero_radii(m: int, j: int, B: float) -> np.ndarray:
    """Radii of the circles on which Q_j^(m) vanishes (excluding the origin)."""
    n = min(m, j)
    if n == 0:
        return np.empty(0)
    return np.sqrt(2.0 * laguerre_zeros(n, abs(m - j)) / B)


def _hermite_normalizer_log(m):
    return -0.5 * (0.5 * math.log(math.pi) + m * math.log(2.0) + math.lgamma(m + 1.0))


def coherent_wavefunction(m: int, B: float, x: float, y: float, xi):
    """<xi | (x,y), B, m> on the real line."""
    if not B > 0:
        raise ValueError(f"magnetic field must be positive, got {B}")
    xi = np.asarray(xi, dtype=np.float64)
    rb = math.sqrt(B)
    shifted = xi - rb * x
    log_mod = _hermite_normalizer_log(m) - 0.5 * shifted**2
    phase = -rb * xi * y + 0.5 * B * x * y
    return np.exp(log_mod + 1j * phase) * hermite(m, shifted)


def hermite_function(j: int, xi):
    """Normalized oscillator eigenfunction phi_j(xi)."""
    xi = np.asarray(xi, dtype=np.float64)
    return np.exp(_hermite_normalizer_log(j) - 0.5 * xi**2) * hermite(j, xi)


def overlap_oracle(m: int, j: int, B: float, x: float, y: float, tol: float = 1e-10) -> float:
    """|<(x,y),B,m | phi_j>|^2 by adaptive quadrature of the wavefunction product."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    R = math.sqrt(B) * max(abs(x), 1.0) + math.sqrt(2 * j + 2 * m + 40)
    spec = QuadratureSpec(abs_tol=min(tol, 1e-8) * 1e-2, rel_tol=1e-13, max_subdivisions=2000)

    def product(xi):
        return np.conj(coherent_wavefunction(m, B, x, y, xi)) * hermite_function(j, xi)

    re = integrate_interval(lambda s: product(s).real, -R, R, spec, initial_width=1.0)
    im = integrate_interval(lambda s: product(s).imag, -R, R, spec, initial_width=1.0)
    return re.value**2 + im.value**2


@dataclass(frozen=True)
class Pure:
    m: int
    j: int


@dataclass(frozen=True)
class Thermal:
    m: int
    beta: float


@dataclass(frozen=True)
class RadialDensity:
    """A probability density on [0, inf) with its zero set and exponential decay rate."""

    kind: Union[Pure, Thermal]
    zero_set: tuple
    decay_rate: float
    _pdf: Callable = field(repr=False, compare=False)
    _poly: Callable = field(repr=False, compare=False)
    poly_degree: int = 0

    def __call__(self, lam):
        return self._pdf(lam)

    def expect(self, g: Callable[[np.ndarray], np.ndarray] = None, extra_degree: int = 2) -> float:
        """int g(lambda) density(lambda) dlambda by Gauss-Laguerre after lambda = t / decay_rate.

        Exact (up to rounding) when g is a polynomial of degree <= extra_degree.
        """
        c = self.decay_rate
        n = min(200, (self.poly_degree + extra_degree) // 2 + 4)
        t, w = gauss_laguerre_rule(n)
        lam = t / c
        vals = self._poly(lam)
        if g is not None:
            vals = vals * g(lam)
        return math.fsum(w * vals) / c


def make_density(kind: Union[Pure, Thermal], check: bool = True, tol: float = 1e-10) -> RadialDensity:
    if isinstance(kind, Pure):
        m, j = kind.m, kind.j
        n, a = min(m, j), abs(m - j)
        zeros = tuple(laguerre_zeros(n, a)) if n else ()
        log_pref = _pure_log_prefactor(m, j)

        def poly(lam):
            lam = np.asarray(lam, dtype=np.float64)
            lag = _kernels.laguerre(n, float(a), lam)
            return np.exp(log_pref) * lam**a * lag * lag

        d = RadialDensity(kind, zeros, 1.0, lambda lam: husimi_pure(m, j, lam), poly, m + j)
    elif isinstance(kind, Thermal):
        th = ThermalParams(kind.beta)
        coeffs = _thermal_coefficients(kind.m, th)

        def poly(lam):
            return _kernels.exp_poly(coeffs, 0.0, np.asarray(lam, dtype=np.float64))

        d = RadialDensity(kind, (), th.eta, lambda lam: husimi_thermal(kind.m, th, lam), poly, kind.m)
    else:
        raise TypeError(f"unknown density kind {kind!r}")
    if check:
        total = d.expect(extra_degree=0)
        if abs(total - 1.0) > tol:
            raise NumericalFailure(f"{kind} integrates to {total!r}", best_estimate=total)
    return d
