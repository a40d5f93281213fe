import math

import numpy as np
import pytest
from scipy import stats

from wehrlkit.phase_space import Pure, Thermal, ThermalParams, husimi_thermal, make_density
from wehrlkit.statistics import (
    cf_numeric,
    cf_pure,
    cf_thermal,
    legendre_numeric,
    log_mgf_limit,
    log_mgf_thermal,
    moments_numeric,
    moments_pure,
    moments_thermal,
    paper_stated_variance,
    paper_u_xi,
    pmf_X,
    pmf_X_table,
    pmf_Y,
    pmf_Y_literal,
    pmf_Y_table,
    rate_pure_limit,
    rate_thermal,
    rate_thermal_numeric,
    sample_pmf,
)


def test_cf_pure_closed_forms():
    for u in (-1.5, 0.0, 0.4, 3.0):
        assert cf_pure(0, 0, u) == pytest.approx(1 / (1 - 1j * u), abs=1e-15)
    for m in range(6):
        for j in range(6):
            assert cf_pure(m, j, 0.0) == pytest.approx(1.0, abs=1e-13)


def test_cf_pure_against_quadrature():
    d = make_density(Pure(1, 1))
    assert abs(cf_pure(1, 1, 0.7) - cf_numeric(d, 0.7)) <= 1e-10
    d = make_density(Pure(3, 5))
    for u in (-2.0, 0.3, 5.0):
        assert abs(cf_pure(3, 5, u) - cf_numeric(d, u)) <= 1e-8


def test_cf_pure_modulus_and_conjugation():
    for m, j, u in [(2, 3, 0.8), (4, 1, -2.5), (6, 6, 1.1)]:
        z = cf_pure(m, j, u)
        assert abs(z) <= 1 + 1e-14
        assert cf_pure(m, j, -u) == pytest.approx(z.conjugate(), abs=1e-14)


def test_moments_pure():
    s = moments_pure(0, 4)
    assert (s.mean, s.variance) == (5.0, 5.0)
    assert moments_pure(0, 0).variance == 1.0
    q = moments_numeric(make_density(Pure(2, 3)))
    assert q.mean == pytest.approx(6.0, abs=1e-8)
    assert q.variance == pytest.approx(2 * 2 * 3 + 2 + 3 + 1, abs=1e-8)
    q2 = moments_numeric(make_density(Pure(2, 3)), method="adaptive")
    assert q2.variance == pytest.approx(q.variance, abs=1e-8)
    with pytest.raises(ValueError):
        moments_numeric(make_density(Pure(0, 0)), method="simpson")


def test_cf_thermal():
    for beta in (0.5, 2.0):
        th = ThermalParams(beta)
        assert cf_thermal(3, th, 0.0) == pytest.approx(1.0)
        assert cf_thermal(0, th, 0.9) == pytest.approx(th.eta / (th.eta - 0.9j))
        for u in np.linspace(-10, 10, 41):
            assert abs(cf_thermal(4, th, u)) <= 1 + 1e-14
    d = make_density(Thermal(2, 1.0))
    assert abs(cf_thermal(2, 1.0, 0.5) - cf_numeric(d, 0.5)) <= 1e-8


def test_thermal_moments():
    for beta in (0.5, 1.0):
        th = ThermalParams(beta)
        s0 = moments_thermal(0, th)
        assert s0.mean == pytest.approx(1 / th.eta) and s0.variance == pytest.approx(1 / th.eta**2)
        assert moments_thermal(1, th).variance == pytest.approx(paper_stated_variance(1, th), rel=1e-14)
        for m in (0, 2, 3):
            gap = moments_thermal(m, th).variance - paper_stated_variance(m, th)
            assert gap == pytest.approx((1 - m) * th.boltzmann**2 / th.eta**2, rel=1e-10, abs=1e-14)
    q = moments_numeric(make_density(Thermal(3, 1.0)))
    assert q.variance == pytest.approx(moments_thermal(3, 1.0).variance, abs=1e-8)
    assert q.mean == pytest.approx(moments_thermal(3, 1.0).mean, abs=1e-8)


def test_log_mgf():
    th = ThermalParams(1.0)
    assert log_mgf_limit(th, 0.0) == 0.0
    assert log_mgf_limit(th, th.eta - 1e-6) > 10
    us = np.linspace(-3, 0.9 * th.eta, 30)
    vals = [log_mgf_limit(th, u) for u in us]
    assert np.all(np.diff(vals) > 0)
    with pytest.raises(ValueError):
        log_mgf_limit(th, th.eta)
    with pytest.raises(ValueError):
        log_mgf_thermal(2, th, 1.0)


def test_finite_m_mgf_gap_is_exact():
    # (1/m) log E e^{uQ} - Lambda(u) = log(eta / (eta - u)) / m
    th = ThermalParams(0.5)
    for m in (10, 200, 2000):
        for u in (-1.0, 0.3):
            gap = log_mgf_thermal(m, th, u) / m - log_mgf_limit(th, u)
            assert gap == pytest.approx(math.log(th.eta / (th.eta - u)) / m, rel=1e-8)


def test_rate_thermal():
    for beta in (0.5, 1.0, 2.0):
        r = rate_thermal(beta, 1.0)
        assert r.u_star == 0.0 and abs(r.value) <= 1e-15
        for xi in (0.1, 0.5, 2.0, 5.0, 40.0):
            r, n = rate_thermal(beta, xi), rate_thermal_numeric(beta, xi)
            assert r.u_star == pytest.approx(n.u_star, abs=1e-8)
            assert r.value == pytest.approx(n.value, abs=1e-8)
            assert r.value >= 0 and r.u_star < ThermalParams(beta).eta
    with pytest.raises(ValueError):
        rate_thermal(1.0, 0.0)


def test_rate_thermal_convex():
    xs = np.linspace(0.2, 6.0, 30)
    vals = np.array([rate_thermal(1.0, x).value for x in xs])
    assert np.all(vals[:-2] + vals[2:] - 2 * vals[1:-1] >= -1e-13)


def test_paper_u_xi_fails_sanity_at_mean():
    th = ThermalParams(1.0)
    assert paper_u_xi(th, 1.0) == pytest.approx(-th.eta / 2, rel=1e-13)


def test_pure_limit_rate():
    assert rate_pure_limit(1.0) == 0.0
    assert rate_pure_limit(math.e) == pytest.approx(math.e - 2)
    for xi in (0.3, 2.0, 7.0):
        _, v = legendre_numeric(xi, lambda u: -math.log1p(-u), -50.0, 1 - 1e-12)
        assert v == pytest.approx(rate_pure_limit(xi), abs=1e-10)
    with pytest.raises(ValueError):
        rate_pure_limit(-1.0)


def test_pmf_x():
    for j in range(10):
        assert pmf_X(0, 2.0, j) == pytest.approx(stats.poisson.pmf(j, 2.0), rel=1e-13)
    for j in range(6):
        assert pmf_X(3, 0.0, j) == (1.0 if j == 3 else 0.0)
    masses = pmf_X_table(2, 1.5)
    assert math.fsum(masses) == pytest.approx(1.0, abs=1e-10)
    assert np.all(masses >= 0)


def test_pmf_y():
    th = ThermalParams(1.0)
    for m in range(9):
        be = th.N_T**m / (1 + th.N_T) ** (m + 1)
        assert pmf_Y(m, 0.0, th) == pytest.approx(be, rel=1e-14)
    assert pmf_Y(3, 2.0, th) == pytest.approx(husimi_thermal(3, th, 2.0), abs=1e-12)
    for m in range(6):
        assert pmf_Y(m, 1.3, 0.7) == pytest.approx(pmf_Y_literal(m, 1.3, 0.7), rel=1e-12)
    assert math.fsum(pmf_Y_table(1.0, th)) == pytest.approx(1.0, abs=1e-10)


def test_pmf_y_poisson_limit():
    cold = ThermalParams.from_temperature(0.05)
    masses = pmf_Y_table(1.0, cold)
    tv = 0.5 * sum(abs(p - stats.poisson.pmf(k, 1.0)) for k, p in enumerate(masses))
    assert tv <= 1e-2


def test_sampler():
    draws = sample_pmf(lambda k: 1.0 if k == 4 else 0.0, 1000, seed=1)
    assert np.all(draws == 4)
    n = 100_000
    draws = sample_pmf(lambda j: pmf_X(0, 2.0, j), n, seed=12345)
    assert abs(draws.mean() - 2.0) <= 4 * math.sqrt(2.0 / n)
    again = sample_pmf(lambda j: pmf_X(0, 2.0, j), n, seed=12345)
    assert np.array_equal(draws, again)
