import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hahn_asym.oracle import (HahnParams, PrecisionContext, PrecisionError, eval_monic_exact,
                              eval_P_exact, eval_Q_exact, eval_w_rescaled, eval_weight_rho,
                              h_closed_form, hahn_Q, hahn_Q_recurrence, leading_coeff, node_set,
                              orthogonality_matrix)


def rational_Q(n, x, alpha, beta, N):
    """Terminating 3F2 sum in exact rational arithmetic."""
    total, term = Fraction(1), Fraction(1)
    for k in range(n):
        term *= Fraction((k - n) * (k - x) * (n + alpha + beta + 1 + k),
                         (k - N) * (alpha + 1 + k) * (k + 1))
        total += term
    return total


def rational_k(alpha, beta, n, N, bigN):
    """x^n coefficient of Q_n is (n+a+b+1)_n / ((-N)_n (a+1)_n); z = x / bigN rescales it."""
    k = Fraction(1)
    for j in range(n):
        k *= Fraction(n + alpha + beta + 1 + j, (j - N) * (alpha + 1 + j))
    return k * Fraction(bigN) ** n


def test_Q_at_zero_is_one():
    for n in (0, 1, 5, 30):
        assert hahn_Q(n, 0, 0.3, 0.7, 40) == 1


def test_Q1_closed_form():
    N = 9
    with mpmath.workprec(128):
        for x in (0, 2, 3.5):
            want = 1 - 2 * mpmath.mpf(x) / N
            assert abs(hahn_Q(1, x, 0.0, 0.0, N) - want) < 1e-30


def test_Q2_rational_sum():
    al, be = Fraction(1, 2), Fraction(3, 2)
    want = rational_Q(2, 3, al, be, 10)
    got = hahn_Q(2, 3, 0.5, 1.5, 10)
    with mpmath.workprec(128):
        assert abs(got - mpmath.mpf(want.numerator) / want.denominator) < 1e-30


def test_Q_against_mpmath_hyp3f2():
    n, N, x = 7, 20, 4.25
    ref = mpmath.hyp3f2(-n, n + 0.3 + 0.7 + 1, -x, 1.3, -N, 1)
    assert abs(hahn_Q(n, x, 0.3, 0.7, N) - ref) < 1e-12 * abs(ref)


def test_sum_matches_recurrence():
    for x in (3.0, 11.5, 2 + 3j):
        s = hahn_Q(40, x, 0.3, 0.7, 90)
        r = hahn_Q_recurrence(40, x, 0.3, 0.7, 90)
        assert abs(s - r) < 1e-20 * abs(s)


def test_degree_above_family_rejected():
    with pytest.raises(ValueError):
        hahn_Q(5, 1, 0, 0, 4)


def test_precision_cap_reported(monkeypatch):
    import hahn_asym.oracle as o
    monkeypatch.setattr(o, "MAX_BITS", 64)
    with pytest.raises(PrecisionError):
        hahn_Q(60, 30.5, 0.3, 0.7, 120, PrecisionContext(64))


def test_exact_zero_at_symmetry_point():
    assert hahn_Q(3, 4, 0.0, 0.0, 8) == 0


def test_env_precision_override(monkeypatch):
    monkeypatch.setenv("HAHN_ASYM_PRECISION_BITS", "300")
    assert PrecisionContext.for_degree(10).bits == 300


@pytest.mark.parametrize("alpha,beta,N,x,want", [
    (0.0, 0.0, 7, 3, 1.0),
    (1.0, 0.0, 2, 1, 2.0),
    (0.5, 1.5, 4, 0, 2.5 * 3.5 * 4.5 * 5.5 / 24),
])
def test_weight_rho(alpha, beta, N, x, want):
    assert eval_weight_rho(alpha, beta, N, x) == pytest.approx(want, rel=1e-13)


def test_w_rescaled_trivial_and_limit():
    p = HahnParams(0.0, 0.0, 50, 10)
    assert abs(eval_w_rescaled(p, 0.37 + 0.1j) - 1) < 1e-12
    p = HahnParams(0.3, 0.7, 200, 10)
    assert abs(eval_w_rescaled(p, 0.5) - 0.5) < 0.005


def test_w_rescaled_matches_rho_at_nodes():
    p = HahnParams(0.3, 0.7, 30, 5)
    scale = p.bigN ** (-p.alpha - p.beta) * math.gamma(1.3) * math.gamma(1.7)
    for k in (0, 4, 17, 29):
        z = (k + 0.5) / p.bigN
        want = scale * eval_weight_rho(0.3, 0.7, p.hahn_N, k)
        assert eval_w_rescaled(p, z).real == pytest.approx(want, rel=1e-12)


def test_leading_coeff_examples():
    assert leading_coeff(HahnParams(0.3, 0.7, 10, 0)) == (0.0, 1)
    bigN = 12
    logk, sign = leading_coeff(HahnParams(0.0, 0.0, bigN, 1))
    # P(z) = 1 - 2(Nz - 1/2)/(N - 1): leading coefficient -2N/(N-1)
    assert sign == -1 and logk == pytest.approx(math.log(2 * bigN / (bigN - 1)), rel=1e-14)


def test_leading_coeff_rational_product():
    p = HahnParams(0.5, 1.5, 21, 3)
    al, be, n, N = Fraction(1, 2), Fraction(3, 2), 3, 20
    k = rational_k(al, be, n, N, 21)
    logk, sign = leading_coeff(p)
    assert sign == (1 if k > 0 else -1)
    assert logk == pytest.approx(math.log(abs(float(k))), rel=1e-13)


def test_monic_examples():
    p = HahnParams(0.3, 0.7, 12, 0)
    assert eval_monic_exact(p, 0.4 + 0.2j) == 1
    p = HahnParams(0.3, 0.7, 12, 1)
    d = eval_monic_exact(p, 0.9) - eval_monic_exact(p, 0.2)
    with mpmath.workprec(128):
        assert abs(d - (mpmath.mpf(0.9) - mpmath.mpf(0.2))) < 1e-30


def test_monic_rational_expansion():
    p = HahnParams(0.5, 1.5, 17, 4)
    pc = PrecisionContext(200)
    k = rational_k(Fraction(1, 2), Fraction(3, 2), 4, 16, 17)
    with mpmath.workprec(200):
        z = mpmath.mpc(0.3, 0.1)
        # independent route: recurrence value divided by the rational leading coefficient
        x = z * 17 - mpmath.mpf(1) / 2
        ref = hahn_Q_recurrence(4, x, 0.5, 1.5, 16, pc) / (mpmath.mpf(k.numerator) / k.denominator)
        assert abs(eval_monic_exact(p, z, pc) - ref) < mpmath.mpf(10) ** -40


def test_orthogonality_small_family():
    bits = 200
    G = orthogonality_matrix(0.0, 0.0, 4, 2, PrecisionContext(bits))
    for i in range(3):
        for j in range(3):
            if i != j:
                assert abs(G[i][j]) < 2.0 ** -(bits - 20)


def test_norms_match_closed_form():
    pc = PrecisionContext(256)
    mp = pc.mp()
    G = orthogonality_matrix(0.5, 1.5, 10, 10, pc)
    for n in range(11):
        assert abs(G[n][n] / h_closed_form(0.5, 1.5, 10, n, mp) - 1) < 1e-15
    w_sum = sum(eval_weight_rho(0.5, 1.5, 10, k) for k in range(11))
    assert float(G[0][0]) == pytest.approx(w_sum, rel=1e-13)


@given(st.integers(1, 12), st.integers(0, 6), st.floats(-0.9, 3), st.floats(-0.9, 3),
       st.floats(-3, 20), st.floats(-2, 2))
def test_reflection_property(extra, n, alpha, beta, xr, xi):
    N = n + extra
    pc = PrecisionContext(160)
    mp = pc.mp()
    x = mp.mpc(xr, xi)
    lhs = hahn_Q(n, N - x, beta, alpha, N, pc)
    fac = mp.rf(mp.mpf(alpha) + 1, n) / mp.rf(mp.mpf(beta) + 1, n) * (-1) ** n
    rhs = fac * hahn_Q(n, x, alpha, beta, N, pc)
    assert abs(lhs - rhs) <= 1e-25 * max(1, abs(rhs), abs(lhs))


@given(st.floats(-0.95, 4), st.floats(-0.95, 4), st.integers(2, 60))
def test_node_weights_positive(alpha, beta, bigN):
    ns = node_set(HahnParams(alpha, beta, bigN, 1))
    assert all(w > 0 for w in ns.weights)
    assert len(ns.nodes) == bigN


@given(st.integers(1, 8), st.floats(-0.5, 2), st.floats(-0.5, 2))
def test_monicity_property(n, alpha, beta):
    p = HahnParams(alpha, beta, n + 5, n)
    pc = PrecisionContext(256)
    mp = pc.mp()
    xs = [mp.mpf(k) / (n + 1) for k in range(n + 1)]
    dd = [eval_monic_exact(p, x, pc) for x in xs]
    for lvl in range(1, n + 1):
        dd = [(dd[i + 1] - dd[i]) / (xs[i + lvl] - xs[i]) for i in range(n + 1 - lvl)]
    assert abs(dd[0] - 1) < 2.0 ** -128


def test_P_matches_Q_at_shifted_argument():
    p = HahnParams(0.3, 0.7, 40, 9)
    with mpmath.workprec(128):
        z = mpmath.mpc(0.3, 0.05)
        assert abs(eval_P_exact(p, z) - eval_Q_exact(p, 40 * z - mpmath.mpf(0.5))) < 1e-25
