import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hahn_asym import verify
from hahn_asym.aux_maps import MapBundle
from hahn_asym.oracle import HahnParams, eval_w_rescaled
from hahn_asym.parametrix import a_fun, h_weight, m_and_mstar, m_zero_limit, outer_N, szego_M

off_axis = st.tuples(st.floats(-2, 3), st.floats(0.01, 2), st.booleans()).map(
    lambda t: complex(t[0], -t[1] if t[2] else t[1]))


@pytest.mark.parametrize("check", [n for n in verify.registered() if n.startswith("parametrix.")])
def test_registry_parametrix_check(check):
    (r,) = verify.run_checks(check)
    assert r.passed, (check, r.residual, r.tolerance, r.detail)


def test_szego_trivial_exponents():
    B = MapBundle.build(HahnParams(0.0, 0.0, 64, 32))
    for z in (0.3 + 0.2j, -1.0, 2.5 - 1j):
        assert szego_M(B, z) == 1


def test_szego_jump_example(bundle64):
    B = bundle64
    x = (B.a + B.b) / 2
    assert abs(szego_M(B, x, 1) * szego_M(B, x, -1) * x ** 0.3 * (1 - x) ** 0.7 - 1) < 1e-10


def test_szego_at_infinity(bundle64):
    assert abs(szego_M(bundle64, 1e6 + 1e6j) - bundle64.M_inf) < 1e-5


def test_N_jump_example(bundle64):
    B = bundle64
    P = np.array(outer_N(B, 0.5, 1).matrix())
    M = np.array(outer_N(B, 0.5, -1).matrix())
    h = 0.5 ** 0.3 * 0.5 ** 0.7
    assert np.max(np.abs(np.linalg.solve(M, P) - [[0, -h], [1 / h, 0]])) < 1e-8


@given(off_axis)
def test_unimodular(z):
    B = MapBundle.build(HahnParams(0.3, 0.7, 128, 64))
    assert abs(outer_N(B, z).det - 1) < 1e-12


@given(off_axis)
def test_direct_amplitudes_match_matrix_entries(z):
    B = MapBundle.build(HahnParams(0.3, 0.7, 128, 64))
    o = outer_N(B, z)
    m, ms = m_and_mstar(B, z)
    assert abs(o.m - m) < 1e-10 * abs(m)
    assert abs(o.m_star - ms) < 1e-10 * max(abs(ms), 1e-300)


@given(off_axis)
def test_conjugate_symmetry(z):
    B = MapBundle.build(HahnParams(0.3, 0.7, 128, 64))
    m1, s1 = m_and_mstar(B, z)
    m2, s2 = m_and_mstar(B, z.conjugate())
    assert abs(m1.conjugate() - m2) < 1e-12 * abs(m1)
    assert abs(s1.conjugate() - s2) < 1e-12 * max(abs(s1), 1e-300)


def test_chebyshev_amplitudes():
    B = MapBundle.build(HahnParams(0.0, 0.0, 64, 32))
    a, b = B.a, B.b
    for z in (0.2 + 0.3j, -0.5 + 0.1j, 1.5 - 0.4j):
        qa, qb = cmath.exp(0.25 * cmath.log(z - a)), cmath.exp(0.25 * cmath.log(z - b))
        ra, rb = cmath.sqrt(z - a), cmath.sqrt(z - b)
        m, ms = m_and_mstar(B, z)
        assert abs(m - (ra + rb) / (2 * qa * qb)) < 1e-13
        assert abs(ms - (rb - ra) / (2 * qa * qb)) < 1e-13


def test_amplitudes_at_infinity(bundle64):
    m, ms = m_and_mstar(bundle64, 1e7 + 1e7j)
    assert abs(m - 1) < 1e-6 and abs(ms) < 1e-6


def test_m_zero_limit(bundle64):
    B = bundle64
    c, al, be = B.c, 0.3, 0.7
    want = (1 + c) ** (al + be + 0.5) / (2 ** (al + be + 0.5) * c ** (al + 0.5))
    assert m_zero_limit(B) == pytest.approx(want, rel=1e-15)
    for z in (1e-9, 1e-9j, -1e-9 + 1e-10j):
        assert abs(m_and_mstar(B, z)[0] / want - 1) < 1e-4


def test_h_weight_examples():
    B = MapBundle.build(HahnParams(0.0, 0.0, 64, 32))
    assert h_weight(B, 0.3) == 1
    B = MapBundle.build(HahnParams(1.0, 1.0, 64, 32))
    assert h_weight(B, 0.5) == pytest.approx(0.25, rel=1e-15)


def test_h_weight_approximates_rescaled_weight():
    p = HahnParams(0.3, 0.7, 512, 256)
    B = MapBundle.build(p)
    assert abs(eval_w_rescaled(p, 0.5) / h_weight(B, 0.5) - 1) < 1e-2


def test_quartic_ratio_inverts_under_reflection():
    B = MapBundle.build(HahnParams(0.4, 0.4, 128, 64))
    for z in (0.3 + 0.2j, -0.4 - 0.3j, 1.7 + 0.01j):
        assert abs(a_fun(B, 1 - z) * a_fun(B, z) - 1) < 1e-13


def test_m_edge_behaviour(bundle64):
    B = bundle64
    for e in (1e-6, 1e-9):
        z = B.a + e * 1j
        m, _ = m_and_mstar(B, z)
        q = cmath.exp(0.25 * cmath.log(z - B.a))
        assert 0.1 < abs(m * q) < 10
