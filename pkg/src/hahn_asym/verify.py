"""Registry of invariant checks run by ``hahn-asym verify``.

Each check returns a :class:`CheckResult` with the worst residual it saw and
the tolerance it was held to.  Checks are grouped (oracle, equilibrium, maps,
parametrix, airy, asymptotics) and selected with a substring filter.
"""

from __future__ import annotations

import cmath
import contextlib
import math
import random
from dataclasses import asdict, dataclass

import numpy as np

from . import aux_maps as am
from . import equilibrium as eqm
from .airy import OMEGA, OMEGA2, ai_pair_scaled, airy_scaled_all, bi_from_ai, _series
from .asymptotics import (asym_region_II, asym_region_III, asym_monic,
                          chebyshev_reduction_check)
from .aux_maps import MapBundle
from .oracle import (HahnParams, PrecisionContext, eval_monic_exact, h_closed_form, hahn_Q,
                     hahn_Q_recurrence, node_set, orthogonality_matrix)
from .parametrix import a_fun, h_weight, m_and_mstar, m_zero_limit, outer_N, szego_M
from .quadrature import quad_complex
from .scaled import Scaled, rel_diff


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


_REGISTRY: list[tuple[str, str, object]] = []


def check(group: str, name: str):
    def deco(fn):
        _REGISTRY.append((group, name, fn))
        return fn
    return deco


def registered() -> list[str]:
    return [f"{g}.{n}" for g, n, _ in _REGISTRY]


@contextlib.contextmanager
def inject_branch_bug():
    """Negative control: flip the half-plane sign used by phi_tilde."""
    am._BRANCH_BUG["phi_tilde"] = True
    try:
        yield
    finally:
        am._BRANCH_BUG["phi_tilde"] = False


def run_checks(filter: str | None = None, c: float = 0.5, alpha: float = 0.3,
               beta: float = 0.7) -> list[CheckResult]:
    ctx = {"c": c, "alpha": alpha, "beta": beta}
    out = []
    for group, name, fn in _REGISTRY:
        full = f"{group}.{name}"
        if filter and filter not in full:
            continue
        try:
            res, tol = fn(ctx)
            out.append(CheckResult(group, name, float(res), tol))
        except Exception as e:  # a crashing check is a failing check
            out.append(CheckResult(group, name, math.inf, 0.0, f"{type(e).__name__}: {e}"))
    return out


def _bundle(ctx, n=64, c=None):
    c = ctx["c"] if c is None else c
    return MapBundle.build(HahnParams.from_ratio(ctx["alpha"], ctx["beta"], c, n))


def _interior(lo, hi, k=10):
    return list(np.linspace(lo, hi, k + 2)[1:-1])


# -- oracle ---------------------------------------------------------------------

ORTHO_FAMILIES = ((0.0, 0.0, 8), (0.5, 1.5, 10), (0.3, 0.7, 16))


@check("oracle", "orthogonality_offdiag")
def _(ctx):
    worst = 0.0
    for a, b, N in ORTHO_FAMILIES:
        G = orthogonality_matrix(a, b, N, N, PrecisionContext(256))
        for i in range(N + 1):
            for j in range(N + 1):
                if i != j:
                    worst = max(worst, float(abs(G[i][j]) / (G[i][i] * G[j][j]) ** 0.5))
    return worst, 1e-20


@check("oracle", "norm_closed_form")
def _(ctx):
    worst = 0.0
    pc = PrecisionContext(256)
    mp = pc.mp()
    for a, b, N in ORTHO_FAMILIES:
        G = orthogonality_matrix(a, b, N, N, pc)
        for i in range(N + 1):
            worst = max(worst, float(abs(G[i][i] / h_closed_form(a, b, N, i, mp) - 1)))
    return worst, 1e-15


@check("oracle", "sum_vs_recurrence")
def _(ctx):
    worst = 0.0
    for n, x in ((5, 2.3), (40, 17.25), (64, 3.1 + 2j), (120, 55.5)):
        N = 2 * n + 3
        s = hahn_Q(n, x, ctx["alpha"], ctx["beta"], N)
        r = hahn_Q_recurrence(n, x, ctx["alpha"], ctx["beta"], N)
        worst = max(worst, float(abs(s - r) / abs(s)))
    return worst, 1e-12


@check("oracle", "hahn_reflection")
def _(ctx):
    a, b, N = ctx["alpha"], ctx["beta"], 12
    pc = PrecisionContext(200)
    mp = pc.mp()
    worst = 0.0
    for n in range(0, 8):
        fac = mp.rf(mp.mpf(a) + 1, n) / mp.rf(mp.mpf(b) + 1, n) * (-1) ** n
        for x in (0, 3, 7.5, 2 + 1j):
            lhs = hahn_Q(n, N - mp.mpc(x), b, a, N, pc)
            rhs = fac * hahn_Q(n, x, a, b, N, pc)
            worst = max(worst, float(abs(lhs - rhs) / max(abs(rhs), 1)))
    return worst, 1e-30


@check("oracle", "monicity")
def _(ctx):
    # n-th divided difference of the monic polynomial on n+1 nodes is 1
    pc = PrecisionContext(256)
    mp = pc.mp()
    worst = 0.0
    for n, bigN in ((1, 5), (4, 16), (9, 20)):
        p = HahnParams(ctx["alpha"], ctx["beta"], bigN, n)
        xs = [mp.mpf(k) / (n + 1) + mp.mpf(1) / 7 for k in range(n + 1)]
        dd = [eval_monic_exact(p, x, pc) for x in xs]
        for lvl in range(1, n + 1):
            dd = [(dd[i + 1] - dd[i]) / (xs[i + lvl] - xs[i]) for i in range(n + 1 - lvl)]
        worst = max(worst, float(abs(dd[0] - 1)))
    return worst, 2.0 ** -128


@check("oracle", "weight_positivity")
def _(ctx):
    worst = 0.0
    for al, be in ((ctx["alpha"], ctx["beta"]), (-0.9, 2.5), (3.0, -0.5)):
        ws = node_set(HahnParams(al, be, 40, 10)).weights
        worst = max(worst, max(0.0, -min(ws)) + (0.0 if min(ws) > 0 else 1.0))
    return worst, 0.0


# -- equilibrium ----------------------------------------------------------------

C_GRID = (0.2, 0.5, 0.8)


@check("equilibrium", "mrs_identities")
def _(ctx):
    worst = 0.0
    for c in C_GRID:
        a, b = eqm.mrs_endpoints(c)
        worst = max(worst, abs(a + b - 1), abs(a * b - c * c / 4))
    return worst, 4e-16


@check("equilibrium", "normalization")
def _(ctx):
    worst = 0.0
    for c in C_GRID:
        a, b = eqm.mrs_endpoints(c)
        tot = quad_complex(lambda s: eqm.density_mu(c, s), 0, 1, points=[a, b]).real
        worst = max(worst, abs(tot - 1))
    return worst, 1e-10


@check("equilibrium", "constraints")
def _(ctx):
    worst = 0.0
    for c in C_GRID:
        for x in np.linspace(0, 1, 10_000):
            m = eqm.density_mu(c, float(x))
            worst = max(worst, -m, m - 1 / c)
    return worst, 0.0


@check("equilibrium", "band_mass")
def _(ctx):
    worst = 0.0
    for c in C_GRID:
        a, b = eqm.mrs_endpoints(c)
        q = quad_complex(lambda s: eqm.density_mu(c, s), a, b).real
        worst = max(worst, abs(q - eqm.band_mass(c)))
    return worst, 1e-10


@check("equilibrium", "density_derivative")
def _(ctx):
    worst = 0.0
    h = 1e-5
    for c in C_GRID:
        a, b = eqm.mrs_endpoints(c)
        for x in _interior(a + 0.05 * (b - a), b - 0.05 * (b - a)):
            fd = (eqm.density_mu(c, x + h) - eqm.density_mu(c, x - h)) / (2 * h)
            d = eqm.density_mu_prime(c, x)
            worst = max(worst, abs(fd - d) / max(1, abs(d)))
    return worst, 1e-6


@check("equilibrium", "log_integral_I3")
def _(ctx):
    return max(abs(eqm.log_integral_I3(c) - eqm.log_integral_I3_quadrature(c)) for c in C_GRID), 1e-9


@check("equilibrium", "lagrange_vs_quadrature")
def _(ctx):
    return max(abs(eqm.lagrange_l(c) - eqm.lagrange_l_quadrature(c)) for c in C_GRID), 1e-8


def _cloud(k, seed, box=(-1.0, 2.0, -1.5, 1.5), min_im=0.05):
    rng = random.Random(seed)
    pts = []
    while len(pts) < k:
        z = complex(rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3]))
        if abs(z.imag) >= min_im:
            pts.append(z)
    return pts


@check("equilibrium", "g_vs_quadrature")
def _(ctx):
    c = ctx["c"]
    return max(abs(eqm.g_explicit(c, z) - eqm.g_quadrature(c, z)) for z in _cloud(50, 11)), 1e-8


@check("equilibrium", "g_prime_vs_differences")
def _(ctx):
    c, h = ctx["c"], 1e-6
    worst = 0.0
    for z in _cloud(50, 12):
        fd = (eqm.g_explicit(c, z + h) - eqm.g_explicit(c, z - h)) / (2 * h)
        worst = max(worst, abs(fd - eqm.g_prime_explicit(c, z)))
    return worst, 1e-6


@check("equilibrium", "g_prime_band_sum")
def _(ctx):
    c = ctx["c"]
    a, b = eqm.mrs_endpoints(c)
    return max(abs(eqm.g_prime_explicit(c, x, 1) + eqm.g_prime_explicit(c, x, -1))
               for x in _interior(a, b)), 1e-10


@check("equilibrium", "g_jump")
def _(ctx):
    c = ctx["c"]
    a, b = eqm.mrs_endpoints(c)
    worst = 0.0
    for x in np.linspace(0.01, 0.99, 20):
        x = float(x)
        jump = eqm.g_explicit(c, x, 1) - eqm.g_explicit(c, x, -1)
        mass = quad_complex(lambda s: eqm.density_mu(c, s), x, 1, points=[a, b]).real
        worst = max(worst, abs(jump - 2j * math.pi * mass))
    return worst, 1e-10


@check("equilibrium", "field_balance")
def _(ctx):
    # V(x) + int_0^1 log|x - y| dy = 0 on (0, 1)
    worst = 0.0
    for x in _interior(0, 1, 20):
        q = quad_complex(lambda y: math.log(abs(x - y)), 0, 1, points=[x]).real
        worst = max(worst, abs(eqm.external_field_V(x) + q))
    return worst, 1e-10


# -- phase maps -------------------------------------------------------------------

MAP_TOL = 1e-8


def _rows(B, f, rows):
    worst = 0.0
    for lo, hi, fn in rows:
        for x in _interior(lo, hi):
            for s in (1, -1):
                worst = max(worst, fn(f(B, x, s), s, x))
    return worst


@check("maps", "phi_tilde_rows")
def _(ctx):
    B = _bundle(ctx)
    a, b, c, pi = B.a, B.b, B.c, math.pi
    f = am.phi_tilde
    p0 = f(B, 0.0, 1).real
    r1 = f(B, 1.0, 1).real
    rows = [
        (-3, 0, lambda v, s, x: max(abs(v.imag + s * pi * x / c), max(0, v.real - p0))),
        (0, a, lambda v, s, x: max(abs(v.imag), max(0, v.real))),
        (a, b, lambda v, s, x: max(abs(v.real), abs(cmath.phase(v) + s * pi / 2))),
        (b, 1, lambda v, s, x: max(abs(v.imag - s * (1 - 1 / c) * pi), max(0, v.real))),
        (1, 4, lambda v, s, x: max(abs(v.imag - s * (1 - x / c) * pi), max(0, v.real - r1))),
    ]
    worst = _rows(B, f, rows)
    worst = max(worst, abs(f(B, a, 1)), abs(f(B, a, -1)))
    for s in (1, -1):
        worst = max(worst, abs(f(B, b, s) - s * (1 - 1 / c) * pi * 1j))
    return worst, MAP_TOL


@check("maps", "phi_star_rows")
def _(ctx):
    B = _bundle(ctx)
    a, b, c, pi = B.a, B.b, B.c, math.pi
    f = am.phi_star
    p1 = f(B, 1.0, 1).real
    r0 = f(B, 0.0, 1).real
    rows = [
        (1, 4, lambda v, s, x: max(abs(v.imag - s * (1 - x) * pi / c), max(0, v.real - p1))),
        (b, 1, lambda v, s, x: max(abs(v.imag), max(0, v.real))),
        (a, b, lambda v, s, x: max(abs(v.real), abs(cmath.phase(v) - s * pi / 2))),
        (0, a, lambda v, s, x: max(abs(v.imag - s * (1 / c - 1) * pi), max(0, v.real))),
        (-3, 0, lambda v, s, x: max(abs(v.imag - s * ((1 - c) / c - x / c) * pi),
                                    max(0, v.real - r0))),
    ]
    worst = _rows(B, f, rows)
    worst = max(worst, abs(f(B, b, 1)), abs(f(B, b, -1)))
    for s in (1, -1):
        worst = max(worst, abs(f(B, a, s) - s * (1 / c - 1) * pi * 1j))
    return worst, MAP_TOL


@check("maps", "phi_rows")
def _(ctx):
    B = _bundle(ctx)
    a, b, c, pi = B.a, B.b, B.c, math.pi
    f = am.phi
    p0 = f(B, 0.0, 1).real
    rows = [
        (-3, 0, lambda v, s, x: max(abs(v.imag + s * pi), max(0, v.real - p0))),
        (0, a, lambda v, s, x: max(abs(v.imag + s * (1 - x / c) * pi), max(0, v.real))),
        (a, b, lambda v, s, x: max(abs(v.real), abs(cmath.phase(v) + s * pi / 2))),
        (b, 1, lambda v, s, x: max(abs(v.imag + s * (1 - x) * pi / c), max(0, v.real))),
    ]
    worst = _rows(B, f, rows)
    for s in (1, -1):
        worst = max(worst, abs(f(B, a, s) + s * (1 - a / c) * pi * 1j),
                    abs(f(B, b, s) + s * (1 - b) / c * pi * 1j))
    p1 = f(B, 1.0, 1)
    worst = max(worst, abs(p1.imag), max(0, p1.real))
    for x in _interior(1, 4):
        v = f(B, x)
        worst = max(worst, abs(v.imag), max(0, v.real - p1.real))
    return worst, MAP_TOL


def _phase_by_quadrature(B, z, start):
    """int_start^z nu(s) ds along the straight segment."""
    z = complex(z)
    d = z - start
    return quad_complex(lambda t: am.nu(B, start + t * d) * d, 0.0, 1.0, eps=1e-12)


@check("maps", "connection_formulas")
def _(ctx):
    B = _bundle(ctx)
    c = B.c
    worst = 0.0
    for z in _cloud(100, 21, box=(-0.5, 1.5, 0.0, 1.0)) + _cloud(100, 22, box=(-0.5, 1.5, -1.0, 0.0)):
        s = 1 if z.imag > 0 else -1
        pt = _phase_by_quadrature(B, z, B.a)
        ps = _phase_by_quadrature(B, z, B.b)
        ph = am.phi(B, z)
        worst = max(worst, abs(pt - ph - s * math.pi * 1j * (1 - z / c)),
                    abs(ps - ph - s * math.pi * 1j / c * (1 - z)))
    return worst, 1e-10


@check("maps", "phi_tilde_vs_nu_integral")
def _(ctx):
    B = _bundle(ctx)
    worst = 0.0
    for x in _interior(0, B.a):
        q = -quad_complex(lambda s: am.nu(B, s), x, B.a).real
        worst = max(worst, abs(am.phi_tilde(B, x) - q))
    return worst, 1e-8


@check("maps", "nu_band_values")
def _(ctx):
    B = _bundle(ctx)
    c = B.c
    worst = 0.0
    for x in _interior(B.a, B.b):
        ac = math.acos(c / (2 * math.sqrt(x - x * x)))
        for s in (1, -1):
            worst = max(worst, abs(am.nu(B, x, s) + s * 2j / c * ac),
                        abs(am.nu(B, x, s) - s * 1j * math.pi * (eqm.density_mu(c, x) - 1 / c)))
    return worst, 1e-10


@check("maps", "g_tilde_jumps")
def _(ctx):
    B = _bundle(ctx)
    a, b, c = B.a, B.b, B.c

    def gt(x, s):
        z = complex(x, s * 1e-150)
        return eqm.g_explicit(c, z) - (z * cmath.log(z) - (z - 1) * cmath.log(z - 1) - 1) / c

    worst = 0.0
    for x in _interior(0, a):
        worst = max(worst, abs(gt(x, 1) - gt(x, -1) - 2j * math.pi * (1 - 1 / c)))
    for x in _interior(b, 1):
        worst = max(worst, abs(gt(x, 1) - gt(x, -1)))
    for x in _interior(a, b):
        q = quad_complex(lambda s: eqm.density_mu(c, s) - 1 / c, x, b).real
        worst = max(worst, abs(gt(x, 1) - gt(x, -1) - 2j * math.pi * q))
    return worst, 1e-9


@check("maps", "f_tilde_continuity")
def _(ctx):
    B = _bundle(ctx)
    worst = 0.0
    for x in _interior(B.a, B.b):
        d4 = abs(am.f_tilde(B, x + 1e-4j) - am.f_tilde(B, x - 1e-4j))
        d5 = abs(am.f_tilde(B, x + 1e-5j) - am.f_tilde(B, x - 1e-5j))
        # Richardson: the jump extrapolated to zero offset
        worst = max(worst, abs(d5 - (d4 - d5) / 9))
    return worst, 1e-8


@check("maps", "f_quarter_jumps")
def _(ctx):
    B = _bundle(ctx)
    x = (B.a + B.b) / 2
    jt = cmath.exp((am.log_f_tilde(B, x, 1) - am.log_f_tilde(B, x, -1)) / 4)
    js = cmath.exp((am.log_f_star(B, x, 1) - am.log_f_star(B, x, -1)) / 4)
    return max(abs(jt + 1j), abs(js - 1j)), 1e-10


@check("maps", "f_turning_slopes")
def _(ctx):
    B = _bundle(ctx)
    a, b, c = B.a, B.b, B.c
    k = (4 / c ** 2 * math.sqrt(b - a)) ** (2 / 3)
    worst = 0.0
    for e in (1e-4, -1e-4, 1e-4j, -1e-4j):
        worst = max(worst, abs(am.f_tilde(B, a + e) / (a - (a + e)) / k - 1),
                    abs(am.f_star(B, b + e) / e / k - 1))
    return worst, 1e-3


@check("maps", "xi_branch_consistency")
def _(ctx):
    B = _bundle(ctx)
    worst = 0.0
    for z in (0.1 + 0.02j, 0.3 + 0.01j, 0.2 - 0.03j):
        xi = am.xi_tilde(B, z)
        lhs = (2 / 3) * cmath.exp(1.5 * xi.log_xi)
        worst = max(worst, abs(lhs - xi.pre_image / 1.5) / abs(lhs))
    return worst, 1e-10


@check("maps", "E_at_infinity")
def _(ctx):
    B = _bundle(ctx, n=32)
    return max(abs(am.E_and_Etilde(B, 1e4 * cmath.exp(1j * t))[0]) for t in (0.3, 1.5, 2.8)), 1e-6


@check("maps", "E_tilde_continuity")
def _(ctx):
    B = _bundle(ctx)
    worst = 0.0
    for x in _interior(0.05, 0.95):
        # boundary limits at eps and eps/2, Richardson-extrapolated to eps -> 0
        j1, j2 = (am.E_and_Etilde(B, x + e)[1] - am.E_and_Etilde(B, x - e)[1]
                  for e in (1e-6j, 5e-7j))
        worst = max(worst, abs(cmath.exp(2 * j2 - j1) - 1))
    return worst, 1e-8


@check("maps", "D_star_identities")
def _(ctx):
    B = _bundle(ctx, n=128)
    worst = 0.0
    for z in _cloud(40, 31, box=(-1, 2, -0.6, 0.6), min_im=0.01):
        s = 1 if z.imag > 0 else -1
        lD, lDs, _ = am.D_functions(B, z)
        lE, lEt = am.E_and_Etilde(B, z)
        q = cmath.exp(lDs - lD) / (1 + cmath.exp(s * 2j * math.pi * B.N * z)) - 1
        worst = max(worst, abs(q), abs(cmath.exp(lDs + lEt - lD - lE) - 1))
    return worst, 1e-10


# -- parametrix -----------------------------------------------------------------

@check("parametrix", "unimodular")
def _(ctx):
    B = _bundle(ctx)
    return max(abs(outer_N(B, z).det - 1) for z in _cloud(50, 41)), 1e-12


@check("parametrix", "M_jump")
def _(ctx):
    B = _bundle(ctx)
    return max(abs(szego_M(B, x, 1) * szego_M(B, x, -1) * h_weight(B, x) - 1)
               for x in _interior(B.a, B.b)), 1e-10


@check("parametrix", "N_jump")
def _(ctx):
    B = _bundle(ctx)
    worst = 0.0
    for x in _interior(B.a, B.b):
        P = np.array(outer_N(B, x, 1).matrix())
        Mm = np.array(outer_N(B, x, -1).matrix())
        h = h_weight(B, x).real
        J = np.linalg.solve(Mm, P)
        worst = max(worst, float(np.max(np.abs(J - np.array([[0, -h], [1 / h, 0]])))))
    return worst, 1e-8


@check("parametrix", "amplitudes_vs_matrix")
def _(ctx):
    B = _bundle(ctx)
    worst = 0.0
    for z in _cloud(50, 42):
        o = outer_N(B, z)
        m, ms = m_and_mstar(B, z)
        worst = max(worst, abs(o.m - m) / abs(m), abs(o.m_star - ms) / abs(ms))
    return worst, 1e-10


@check("parametrix", "infinity")
def _(ctx):
    B = _bundle(ctx)
    o = outer_N(B, 1e6 + 1e6j)
    N = np.array(o.matrix())
    return float(np.max(np.abs(N - np.eye(2)))), 1e-5


@check("parametrix", "m_at_zero")
def _(ctx):
    B = _bundle(ctx)
    return abs(m_and_mstar(B, 1e-12 + 1e-12j)[0] / m_zero_limit(B) - 1), 1e-5


@check("parametrix", "m_edge_quarter_power")
def _(ctx):
    # m (z-a)^{1/4} and m* (z-a)^{1/4} tend to finite nonzero limits at a
    B = _bundle(ctx)
    worst = 0.0
    for t in (0.5, 2.0, -1.0, -2.5):
        u = cmath.exp(1j * t)
        vals = []
        for e in (1e-8, 1e-10):
            z = B.a + e * u
            m, ms = m_and_mstar(B, z)
            q = cmath.exp(0.25 * cmath.log(z - B.a))
            vals.append((abs(m * q), abs(ms * q)))
        worst = max(worst, abs(vals[0][0] / vals[1][0] - 1), abs(vals[0][1] / vals[1][1] - 1))
    return worst, 1e-3


@check("parametrix", "symmetric_reflection")
def _(ctx):
    B = MapBundle.build(HahnParams(0.4, 0.4, 128, 64))
    worst = 0.0
    for z in _cloud(30, 43):
        worst = max(worst, abs(m_and_mstar(B, z)[0] - m_and_mstar(B, 1 - z)[0]))
    for x in (0.02, 0.3, 0.45, 1.5, -0.4):
        # z -> 1 - z swaps the half planes, so upper limits pair with lower ones
        worst = max(worst, abs(outer_N(B, x, 1).m - outer_N(B, 1 - x, -1).m))
    return worst, 1e-12


@check("parametrix", "quartic_ratio_continuity")
def _(ctx):
    # continue a(z) around a circle enclosing [a, b]: the principal ratio must
    # agree with step-by-step continuation (single sheet off the cut)
    B = _bundle(ctx)
    cen, r = (B.a + B.b) / 2, B.b - B.a
    prev = a_fun(B, cen + r)
    worst = 0.0
    for t in np.linspace(0, 2 * math.pi, 721)[1:]:
        cur = a_fun(B, cen + r * cmath.exp(1j * t))
        worst = max(worst, abs(cur - prev))
        prev = cur
    return worst, 0.02


# -- airy -------------------------------------------------------------------------

def _airy_cloud(k=200, rmax=30.0, seed=5):
    rng = random.Random(seed)
    return [cmath.rect(rmax * math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi))
            for _ in range(k)]


def _rel_combo(terms, target=0.0):
    """|sum(terms) - target| / max(|term|, |target|) with Scaled terms."""
    total = sum(terms[1:], terms[0])
    top = max([t.log_abs for t in terms] + ([math.log(abs(target))] if target else []))
    diff = total - Scaled.of(target) if target else total
    if diff.mant == 0:
        return 0.0
    return math.exp(diff.log_abs - top)


@check("airy", "wronskian")
def _(ctx):
    worst = 0.0
    for z in _airy_cloud():
        s = airy_scaled_all(z)
        worst = max(worst, _rel_combo([s.ai * s.bi_prime, -(s.ai_prime * s.bi)], 1 / math.pi))
    return worst, 1e-11


@check("airy", "rotation")
def _(ctx):
    worst = 0.0
    for z in _airy_cloud():
        a0, d0 = ai_pair_scaled(z)
        a1, d1 = ai_pair_scaled(OMEGA * z)
        a2, d2 = ai_pair_scaled(OMEGA2 * z)
        worst = max(worst, _rel_combo([a0, OMEGA * a1, OMEGA2 * a2]),
                    _rel_combo([d0, OMEGA2 * d1, OMEGA * d2]))
    return worst, 1e-11


@check("airy", "cross_product")
def _(ctx):
    worst = 0.0
    for z in _airy_cloud():
        a1, d1 = ai_pair_scaled(OMEGA * z)
        a2, d2 = ai_pair_scaled(OMEGA2 * z)
        worst = max(worst, _rel_combo([OMEGA * a2 * d1, -(OMEGA2 * a1 * d2)], 1 / (2j * math.pi)))
    return worst, 1e-11


@check("airy", "series_asymptotic_seam")
def _(ctx):
    from .airy import _ai_large
    worst = 0.0
    for r in np.linspace(8, 10, 9):
        for t in np.linspace(-math.pi, math.pi, 25):
            z = cmath.rect(float(r), float(t))
            s = _series(z)
            a, d = _ai_large(z)
            worst = max(worst, rel_diff(a, s.ai), rel_diff(d, s.ai_prime))
    return worst, 1e-10


@check("airy", "bi_connection")
def _(ctx):
    worst = 0.0
    for z in (0, -2 + 1j, -5, 3 - 1j, 1.5j):
        bi = airy_scaled_all(z).bi.to_complex()
        for sgn in (1, -1):
            worst = max(worst, abs(bi_from_ai(z, sgn) - bi) / max(1, abs(bi)))
    return worst, 1e-12


@check("airy", "ode_residual")
def _(ctx):
    h = 1e-3
    worst = 0.0
    for z in (0.5 + 0.5j, -3 + 1j, 2 - 2j, 6j):
        f = [ai_pair_scaled(z + k * h)[0].to_complex() for k in (-1, 0, 1)]
        d2 = (f[0] - 2 * f[1] + f[2]) / h ** 2
        worst = max(worst, abs(d2 - z * f[1]) / max(abs(z * f[1]), 1e-300))
    return worst, 1e-5


# -- asymptotics -----------------------------------------------------------------

@check("asymptotics", "chebyshev_reduction")
def _(ctx):
    B = MapBundle.build(HahnParams(0.0, 0.0, 64, 32))
    pts = [0.1, 0.2, 0.3, 0.4, 0.45, 0.1 + 0.01j, 0.25 - 0.02j, 0.35 + 0.005j, 0.06 + 0.03j,
           0.2 + 0.03j, -0.5, -0.1, -1.2, -0.03, -2.5, 0.005, 0.011, 0.019, 0.027, 0.031]
    return max(chebyshev_reduction_check(B, z) for z in pts), 1e-10


@check("asymptotics", "band_side_independence")
def _(ctx):
    B = _bundle(ctx, n=24)
    worst = 0.0
    for x in (0.1, 0.3, 0.45):
        worst = max(worst, rel_diff(asym_region_II(B, x, side=1).scaled,
                                    asym_region_II(B, x, side=-1).scaled))
    for x in (0.6, 0.8, 0.9):
        worst = max(worst, rel_diff(asym_region_III(B, x, side=1).scaled,
                                    asym_region_III(B, x, side=-1).scaled))
    return worst, 1e-9


@check("asymptotics", "conjugate_symmetry")
def _(ctx):
    B = _bundle(ctx, n=48)
    worst = 0.0
    for z in (0.2 + 0.01j, 0.7 + 0.02j, 0.5 + 0.5j, -0.3 + 0.1j, 0.02 + 0.005j, 1.3 + 0.2j):
        r1 = asym_monic(B, z).scaled
        r2 = asym_monic(B, z.conjugate()).scaled
        worst = max(worst, rel_diff(Scaled(r1.mant.conjugate(), r1.scale), r2))
    return worst, 1e-9


@check("asymptotics", "real_on_band")
def _(ctx):
    B = _bundle(ctx, n=48)
    worst = 0.0
    for x in (0.1, 0.2, 0.3, 0.6, 0.7, 0.85):
        worst = max(worst, abs(asym_monic(B, x).unit_value.imag))
    return worst, 1e-9
