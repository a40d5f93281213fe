import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from wehrlkit import _core_py
from wehrlkit.entropy import min_entropy, von_neumann_thermal
from wehrlkit.optimize import golden_section_max
from wehrlkit.phase_space import ThermalParams, husimi_pure, husimi_thermal
from wehrlkit.specfun import digamma, laguerre, log_gamma, partial_bell
from wehrlkit.statistics import cf_pure, cf_thermal, pmf_Y, rate_thermal, rate_thermal_numeric

idx = st.integers(min_value=0, max_value=20)
lam = st.floats(min_value=0.0, max_value=80.0, allow_nan=False)
beta = st.floats(min_value=0.05, max_value=30.0)
small = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)

fast = settings(max_examples=60, deadline=None)


@fast
@given(idx, idx, lam)
def test_husimi_pure_symmetric_and_bounded(m, j, x):
    q = husimi_pure(m, j, x)
    assert q == husimi_pure(j, m, x)
    assert 0.0 <= q <= 1.0


@fast
@given(st.integers(0, 12), beta, lam)
def test_husimi_thermal_positive_and_dual(m, b, x):
    q = husimi_thermal(m, b, x)
    assert q >= 0.0 and q <= ThermalParams(b).eta * (1 + 1e-12)
    assert pmf_Y(m, x, b) == pytest.approx(q, rel=1e-11, abs=1e-300)


@fast
@given(st.integers(0, 30), st.floats(0.0, 6.0), st.floats(-10.0, 50.0))
def test_laguerre_agrees_with_scipy(n, alpha, x):
    ref = special.eval_genlaguerre(n, alpha, x)
    scale = max(1.0, abs(special.eval_genlaguerre(n, alpha, abs(x) + 1)))
    assert laguerre(n, alpha, x) == pytest.approx(ref, rel=1e-10, abs=1e-11 * scale)


@fast
@given(st.floats(0.01, 200.0))
def test_digamma_recurrence(x):
    assert digamma(x + 1) - digamma(x) == pytest.approx(1 / x, rel=1e-12, abs=1e-13)
    assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-15, abs=1e-15)


@fast
@given(st.integers(1, 8), st.integers(1, 8), st.floats(-2, 2), st.lists(small, min_size=8, max_size=8))
def test_bell_scaling(s, l, b, a):
    if l > s:
        s, l = l, s
    a = a[: s - l + 1]
    lhs = partial_bell(s, l, [b ** (i + 1) * v for i, v in enumerate(a)])
    rhs = b**s * partial_bell(s, l, a)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


@fast
@given(st.integers(0, 8), st.integers(0, 8), st.floats(-20, 20))
def test_cf_pure_bounded_and_hermitian(m, j, u):
    z = cf_pure(m, j, u)
    assert abs(z) <= 1 + 1e-10
    assert cf_pure(m, j, -u) == pytest.approx(z.conjugate(), abs=1e-12)


@fast
@given(st.integers(0, 10), beta, st.floats(-50, 50))
def test_cf_thermal_bounded(m, b, u):
    assert abs(cf_thermal(m, b, u)) <= 1 + 1e-12


@fast
@given(st.floats(0.2, 5.0), st.floats(0.05, 30.0))
def test_rate_nonnegative_and_confirmed(b, xi):
    r = rate_thermal(b, xi)
    assert r.value >= -1e-15 and r.u_star < ThermalParams(b).eta
    assert r.u_star == pytest.approx(rate_thermal_numeric(b, xi).u_star, abs=1e-8)


@fast
@given(st.integers(1, 300))
def test_min_entropy_cubic(m):
    s = min_entropy(m)
    assert s.residual <= 1e-10 and 0 < s.tau < 1
    assert s.beta_min == pytest.approx(-math.log(s.tau)) and s.T_min == pytest.approx(1 / s.beta_min)


@fast
@given(st.floats(0.01, 50.0), st.floats(1.01, 3.0))
def test_von_neumann_decreasing(b, factor):
    assert von_neumann_thermal(b) >= von_neumann_thermal(b * factor) >= 0.0


@fast
@given(st.floats(-5, 5), st.floats(0.1, 10))
def test_golden_section_quadratic(c, w):
    diff = lambda a, b: -(a - b) * (a + b - 2 * c)
    assert golden_section_max(diff, c - w, c + 1.3 * w, xtol=1e-15) == pytest.approx(c, abs=1e-13 * max(1, abs(c) + w))


@fast
@given(st.integers(0, 25), st.floats(0.0, 5.0), st.lists(st.floats(0, 60), min_size=1, max_size=20))
def test_kernel_backends_agree(n, alpha, xs):
    core = pytest.importorskip("wehrlkit._core")
    x = np.array(xs)
    assert np.allclose(core.laguerre(n, alpha, x), _core_py.laguerre(n, alpha, x), rtol=1e-13, atol=1e-13)
    a = core.rakhmanov(n, int(alpha), -1.0, x)
    b = _core_py.rakhmanov(n, int(alpha), -1.0, x)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-300)
