import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hahn_asym import equilibrium as eq
from hahn_asym.quadrature import quad_complex

C_GRID = (0.2, 0.5, 0.8)
cs = st.floats(0.05, 0.95)


def test_mrs_example():
    a, b = eq.mrs_endpoints(0.5)
    assert a == pytest.approx(0.0669872981077807, abs=1e-15)
    assert b == pytest.approx(0.9330127018922193, abs=1e-15)


def test_mrs_limit_c_to_one():
    a, b = eq.mrs_endpoints(1 - 1e-12)
    assert abs(a - 0.5) < 1e-5 and abs(b - 0.5) < 1e-5


def test_mrs_rejects_bad_c():
    for c in (0, 1, -0.1, 1.5):
        with pytest.raises(ValueError):
            eq.mrs_endpoints(c)


@given(cs)
def test_mrs_identities(c):
    a, b = eq.mrs_endpoints(c)
    assert abs(a + b - 1) <= 4e-16
    assert abs(a * b - c * c / 4) <= 4e-16
    assert 0 < a < 0.5 < b < 1


def test_density_examples():
    c = 0.5
    a, b = eq.mrs_endpoints(c)
    assert eq.density_mu(c, a) == 1 / c and eq.density_mu(c, b) == 1 / c
    assert eq.density_mu(c, 0.5) == pytest.approx(4 / math.pi * math.asin(0.5), rel=1e-15)
    assert eq.density_mu(c, 0.5) == pytest.approx(2 / 3, rel=1e-15)


@pytest.mark.parametrize("c", C_GRID)
def test_density_normalized_and_constrained(c):
    a, b = eq.mrs_endpoints(c)
    assert abs(quad_complex(lambda s: eq.density_mu(c, s), 0, 1, points=[a, b]).real - 1) < 1e-10
    vals = np.array([eq.density_mu(c, float(x)) for x in np.linspace(0, 1, 10_000)])
    assert vals.min() >= 0 and vals.max() <= 1 / c


@pytest.mark.parametrize("c", C_GRID)
def test_band_mass(c):
    a, b = eq.mrs_endpoints(c)
    q = quad_complex(lambda s: eq.density_mu(c, s), a, b).real
    assert abs(q - eq.band_mass(c)) < 1e-10


@given(cs, st.floats(0.05, 0.95))
def test_density_derivative_matches_differences(c, t):
    a, b = eq.mrs_endpoints(c)
    x = a + (b - a) * t
    h = 1e-6 * (b - a)
    fd = (eq.density_mu(c, x + h) - eq.density_mu(c, x - h)) / (2 * h)
    d = eq.density_mu_prime(c, x)
    assert abs(fd - d) <= 1e-4 * max(1, abs(d))


def test_external_field_examples():
    assert eq.external_field_V(0.5) == pytest.approx(1 + math.log(2), rel=1e-15)
    assert eq.external_field_V(0.3) == pytest.approx(eq.external_field_V(0.7), rel=1e-15)
    assert abs(eq.external_field_V(1e-12) - 1) < 1e-10


def test_g_at_infinity():
    for t in (0.3, 2.0, -2.5):
        z = 1e6 * cmath.exp(1j * t)
        assert abs(eq.g_explicit(0.5, z) - cmath.log(z)) < 1e-5
        assert abs(eq.g_prime_explicit(0.5, z) * z - 1) < 1e-5


def test_g_quadrature_example():
    assert abs(eq.g_explicit(0.5, 2 + 1j) - eq.g_quadrature(0.5, 2 + 1j)) < 1e-8


def test_g_prime_quadrature_example():
    z = 0.5 + 0.5j
    assert abs(eq.g_prime_explicit(0.5, z) - eq.g_prime_quadrature(0.5, z)) < 1e-8


@given(cs, st.floats(-1, 2), st.floats(0.05, 1.5), st.booleans())
def test_g_matches_quadrature(c, x, y, lower):
    z = complex(x, -y if lower else y)
    assert abs(eq.g_explicit(c, z) - eq.g_quadrature(c, z)) < 1e-8


@given(cs, st.floats(-1, 2), st.floats(0.05, 1.5))
def test_g_prime_central_differences(c, x, y):
    z, h = complex(x, y), 1e-6
    fd = (eq.g_explicit(c, z + h) - eq.g_explicit(c, z - h)) / (2 * h)
    assert abs(fd - eq.g_prime_explicit(c, z)) < 1e-6


@given(cs, st.floats(0.01, 0.99))
def test_g_prime_boundary_sum_on_band(c, t):
    a, b = eq.mrs_endpoints(c)
    x = a + (b - a) * t
    assert abs(eq.g_prime_explicit(c, x, 1) + eq.g_prime_explicit(c, x, -1)) < 1e-10


@pytest.mark.parametrize("c", C_GRID)
def test_g_jump_is_mass_to_the_right(c):
    a, b = eq.mrs_endpoints(c)
    for x in np.linspace(0.01, 0.99, 20):
        x = float(x)
        jump = eq.g_explicit(c, x, 1) - eq.g_explicit(c, x, -1)
        mass = quad_complex(lambda s: eq.density_mu(c, s), x, 1, points=[a, b]).real
        assert abs(jump - 2j * math.pi * mass) < 1e-10


@pytest.mark.parametrize("c", C_GRID)
def test_lagrange_multiplier(c):
    assert abs(eq.lagrange_l(c) - eq.lagrange_l_quadrature(c)) < 1e-8
    a, _ = eq.mrs_endpoints(c)
    assert abs((2 * eq.g_explicit(c, a, 1) - 2j * math.pi * (1 - a / c)).imag) < 1e-10


@pytest.mark.parametrize("c", C_GRID)
def test_log_integral(c):
    assert abs(eq.log_integral_I3(c) - eq.log_integral_I3_quadrature(c)) < 1e-9


def test_log_integral_limit():
    assert eq.log_integral_I3(1 - 1e-14) == pytest.approx(-math.pi * math.log(2), abs=1e-6)


def test_field_balance_on_interval():
    for x in (0.1, 0.37, 0.5, 0.81):
        q = quad_complex(lambda y: math.log(abs(x - y)), 0, 1, points=[x]).real
        assert abs(eq.external_field_V(x) + q) < 1e-10


def test_equilibrium_data_cached():
    assert eq.EquilibriumData.for_c(0.5) is eq.EquilibriumData.for_c(0.5)
