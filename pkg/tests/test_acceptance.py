"""The ten acceptance criteria, each at its stated tolerance and runtime budget.

Every test prints one ``criterion k: PASS|FAIL`` line (visible in ``pytest -v``
output through ``capsys.disabled``).
"""

import io
import math
import time

import pytest

from hahn_asym import verify
from hahn_asym.asymptotics import (asym_fixed_x, asym_region_I, asym_region_II, asym_region_III,
                                   chebyshev_reduction_check)
from hahn_asym.aux_maps import MapBundle
from hahn_asym.cli import main
from hahn_asym.oracle import HahnParams, eval_Q_exact
from hahn_asym.scaled import rel_diff
from hahn_asym.study import exact_scaled, loglog_slope, point_error

NS = (32, 64, 128, 256)


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail, elapsed, budget):
        ok = ok and elapsed < budget
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}  {detail}  "
                  f"[{elapsed:.1f}s of {budget:g}s]")
        return ok
    return emit


def _run_checks(names):
    results = {}
    for name in names:
        (r,) = verify.run_checks(name)
        results[name] = r
    return results


def _checks_criterion(k, names, budget, report):
    t0 = time.perf_counter()
    res = _run_checks(names)
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in res.values())
    detail = "; ".join(f"{n}={r.residual:.1e}<={r.tolerance:.0e}" for n, r in res.items())
    assert report(k, ok, detail, elapsed, budget)


def test_criterion_1_oracle_integrity(report):
    _checks_criterion(1, ["oracle.orthogonality_offdiag", "oracle.norm_closed_form"], 5, report)


def test_criterion_2_equilibrium_identities(report):
    _checks_criterion(2, ["equilibrium.mrs_identities", "equilibrium.normalization",
                          "equilibrium.constraints", "equilibrium.log_integral_I3"], 5, report)


def test_criterion_3_g_function(report):
    _checks_criterion(3, ["equilibrium.g_vs_quadrature", "equilibrium.g_prime_vs_differences",
                          "equilibrium.g_prime_band_sum"], 10, report)


def test_criterion_4_mapping_properties(report):
    _checks_criterion(4, ["maps.phi_tilde_rows", "maps.phi_star_rows", "maps.phi_rows",
                          "maps.connection_formulas"], 10, report)


def test_criterion_5_airy_kernel(report):
    _checks_criterion(5, ["airy.wronskian", "airy.rotation", "airy.cross_product",
                          "airy.series_asymptotic_seam"], 5, report)


def test_criterion_6_main_theorem(report):
    """Band points (x = 0.2, 0.8) are fitted on the local uniform error: the
    largest |asym - exact| over one oscillation period around x, divided by the
    largest |exact| there.  Pointwise errors are printed alongside."""
    t0 = time.perf_counter()
    ok = True
    parts = []
    for z, band in ((0.2, True), (0.8, True), (0.5 + 0.5j, False), (-0.5, False)):
        errs = [point_error(HahnParams.from_ratio(0.3, 0.7, 0.5, n), z) for n in NS]
        pw = [e.rel_error for e in errs]
        fit = [e.local_error for e in errs] if band else pw
        slope = loglog_slope(NS, fit)
        good = pw[1] < 0.15 and -1.3 <= slope <= -0.7
        ok &= good
        extra = f" pointwise-slope={loglog_slope(NS, pw):+.2f}" if band else ""
        parts.append(f"z={z} [{errs[0].region}] err64={pw[1]:.1e} "
                     f"{'local-' if band else ''}slope={slope:+.2f}{extra}")
    elapsed = time.perf_counter() - t0
    assert report(6, ok, " | ".join(parts), elapsed, 60)


def test_criterion_7_overlap(report):
    t0 = time.perf_counter()
    p = HahnParams.from_ratio(0.3, 0.7, 0.5, 128)
    B = MapBundle.build(p)
    parts, ok = [], True
    for x in (B.x0 - 1e-3, B.x0 + 1e-3):
        ex = exact_scaled(p, x)
        r2 = asym_region_II(B, x, check=False).scaled
        r3 = asym_region_III(B, x, check=False).scaled
        d, m = rel_diff(r2, r3), max(rel_diff(r2, ex), rel_diff(r3, ex))
        ok &= d <= 10 * m
        parts.append(f"II/III x={x:.3f} diff={d:.1e} max-err={m:.1e}")
    d_ = B.delta
    for z in (0.25 + 1j * d_, 0.45 - 1j * d_, B.x1 + 0.01j, 0.75 + 1j * d_, 1 - B.x1 + 0.01j):
        ex = exact_scaled(p, z)
        r1 = asym_region_I(B, z, check=False).scaled
        inner = asym_region_II if z.real <= B.x0 else asym_region_III
        rk = inner(B, z, check=False).scaled
        d, m = rel_diff(r1, rk), max(rel_diff(r1, ex), rel_diff(rk, ex))
        ok &= d <= 10 * m
        parts.append(f"I/K z={z:.3f} diff={d:.1e} max-err={m:.1e}")
    elapsed = time.perf_counter() - t0
    assert report(7, ok, " | ".join(parts), elapsed, 10)


def test_criterion_8_fixed_x(report):
    t0 = time.perf_counter()
    parts, ok = [], True
    for x in (3.3, -1.7):
        errs = []
        for n in NS:
            p = HahnParams.from_ratio(0.3, 0.7, 0.5, n)
            q = eval_Q_exact(p, x)
            f = asym_fixed_x(p, x)
            sign = math.copysign(1, q.real) * f.sign
            errs.append(abs(sign * math.exp(math.log(abs(float(q.real))) - f.log_abs) - 1))
        good = all(a > b for a, b in zip(errs, errs[1:])) and errs[-1] < 0.2
        ok &= good
        parts.append(f"x={x}: " + ", ".join(f"{e:.3e}" for e in errs))
    elapsed = time.perf_counter() - t0
    assert report(8, ok, " | ".join(parts), elapsed, 60)


CHEB_POINTS = [0.1, 0.2, 0.3, 0.4, 0.45, 0.1 + 0.01j, 0.25 - 0.02j, 0.35 + 0.005j, 0.06 + 0.03j,
               0.2 + 0.03j, -0.5, -0.1, -1.2, -0.03, -2.5, 0.005, 0.011, 0.019, 0.027, 0.031]


def test_criterion_9_chebyshev_reduction(report):
    t0 = time.perf_counter()
    B = MapBundle.build(HahnParams(0.0, 0.0, 64, 32))
    worst = max(chebyshev_reduction_check(B, z) for z in CHEB_POINTS)
    elapsed = time.perf_counter() - t0
    assert report(9, worst < 1e-10, f"20 points, worst residual {worst:.1e}", elapsed, 5)


def test_criterion_10_determinism(report):
    argv = ["convergence", "--alpha", "0.3", "--beta", "0.7", "--c", "0.5", "--n",
            "32,64,128,256", "--z", "0.2,0", "--z", "0.5,0.5", "--z=-0.5,0"]
    t0 = time.perf_counter()
    outs = []
    for extra in ([], [], ["--jobs", "3"]):
        buf = io.StringIO()
        assert main(argv + extra, out=buf) == 0
        outs.append(buf.getvalue().encode())
    elapsed = time.perf_counter() - t0
    same = outs[0] == outs[1] == outs[2]
    assert report(10, same, f"{len(outs[0])} bytes, 2 serial + 1 parallel run identical={same}",
                  elapsed, 120)
