import cmath
import math

import pytest
from hypothesis import given, strategies as st

from hahn_asym.branches import CutError, lift, side_of
from hahn_asym.quadrature import quad_complex, quad_inv_sqrt
from hahn_asym.scaled import ZERO, Scaled, rel_diff

mant = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False,
                          allow_infinity=False)
scales = st.floats(-700, 700)


@given(mant, scales, mant, scales)
def test_scaled_multiplication_adds_logs(m1, s1, m2, s2):
    x, y = Scaled(m1, s1), Scaled(m2, s2)
    p = x * y
    assert p.log_abs == pytest.approx(x.log_abs + y.log_abs, abs=1e-9)
    assert abs(cmath.exp(1j * (p.phase - x.phase - y.phase)) - 1) < 1e-12


@given(mant, mant)
def test_scaled_addition_matches_complex(a, b):
    s = (Scaled.of(a) + Scaled.of(b)).to_complex()
    assert abs(s - (a + b)) <= 1e-12 * (abs(a) + abs(b))


def test_scaled_far_outside_double_range():
    big = Scaled.from_log(5000 + 1j)
    assert (big * big).log_abs == pytest.approx(10000)
    assert rel_diff(big + big, big * 2) < 1e-15
    with pytest.raises(OverflowError):
        big.to_complex()


def test_scaled_zero_handling():
    assert Scaled.of(0) is ZERO and Scaled.from_log(-math.inf) is ZERO
    assert (ZERO * Scaled.of(3)).mant == 0
    assert ZERO.log_abs == -math.inf
    with pytest.raises(ZeroDivisionError):
        Scaled.of(1) / ZERO
    assert rel_diff(ZERO, ZERO) == 0 and rel_diff(Scaled.of(1), ZERO) == math.inf


def test_lift_rules():
    assert lift(0.3 + 1j, None, lambda x: True) == 0.3 + 1j
    assert lift(2.0, None, lambda x: x < 1) == 2.0
    with pytest.raises(CutError):
        lift(0.5, None, lambda x: x < 1)
    assert lift(0.5, -1, lambda x: x < 1).imag < 0
    with pytest.raises(ValueError):
        lift(0.5, 2, lambda x: x < 1)
    assert side_of(0.5) == 1 and side_of(0.5 - 1e-300j) == -1


def test_quadrature_helpers():
    assert abs(quad_complex(lambda s: cmath.exp(1j * s), 0, math.pi) - 2j) < 1e-13
    # int_a^b ds / sqrt((s-a)(b-s)) = pi
    assert abs(quad_inv_sqrt(lambda s: 1.0, 0.2, 0.7) - math.pi) < 1e-13
