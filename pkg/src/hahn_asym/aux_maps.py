"""Scalar auxiliary functions with explicit branch conventions.

Cuts (all on the real axis; pass ``side=+1/-1`` for boundary values):

    phi         (-inf, 1]
    phi_tilde   (-inf, 0] and [a, inf)      analytic across (0, a)
    phi_star    (-inf, b] and [1, inf)      analytic across (b, 1)
    nu          (-inf, 0], [a, b], [1, inf)
    f_tilde     (-inf, 0] and [b, inf)      continuous across (a, b)
    f_star      (-inf, a] and [1, inf)      continuous across (a, b)
    E           [0, 1]
    D           (-inf, 0]
    D_star      [0, inf)

Logarithms and fractional powers are principal unless stated otherwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import loggamma

from .branches import lift, side_of
from .equilibrium import EquilibriumData, g_explicit, sqrt_ab
from .oracle import HahnParams

LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)

# test hook: flips the half-plane sign in phi_tilde (see verify.inject_branch_bug)
_BRANCH_BUG = {"phi_tilde": False}


@dataclass(frozen=True)
class BranchedValue:
    value: complex
    sheet: str  # "+", "-", or "off-axis"


@dataclass(frozen=True)
class MapBundle:
    params: HahnParams
    eq: EquilibriumData
    x0: float
    x1: float
    delta: float
    lens_height: float
    M_inf: float = field(repr=False)

    @classmethod
    def build(cls, params: HahnParams, x0=None, x1=None, delta=None, lens_height=None):
        eq = EquilibriumData.for_c(params.c)
        a, b = eq.a, eq.b
        x0 = 0.5 if x0 is None else x0
        x1 = a / 2 if x1 is None else x1
        delta = min(a, 1 - b) / 2 if delta is None else delta
        lens_height = delta / 2 if lens_height is None else lens_height
        if not 0 < x1 < a:
            raise ValueError(f"x1={x1} must lie in (0, a={a})")
        if not a < x0 < b:
            raise ValueError(f"x0={x0} must lie in (a={a}, b={b})")
        if not 0 < delta < min(a, 1 - b):
            raise ValueError(f"delta={delta} must lie in (0, {min(a, 1 - b)})")
        M_inf = (2 / (math.sqrt(a) + math.sqrt(b))) ** (params.alpha + params.beta)
        return cls(params, eq, x0, x1, delta, lens_height, M_inf)

    @property
    def c(self):
        return self.eq.c

    @property
    def a(self):
        return self.eq.a

    @property
    def b(self):
        return self.eq.b

    @property
    def N(self):
        return self.params.bigN

    @property
    def n(self):
        return self.params.n


# -- phase functions -----------------------------------------------------------

def phi(bundle: MapBundle, z, side=None) -> complex:
    z = lift(z, side, lambda x: x <= 1)
    return bundle.eq.l / 2 - g_explicit(bundle.c, z)


def _pm(z):
    s = side_of(z)
    if _BRANCH_BUG["phi_tilde"]:
        s = -s
    return s


def phi_tilde(bundle: MapBundle, z, side=None) -> complex:
    a, c = bundle.a, bundle.c
    z = lift(z, side, lambda x: x <= 0 or x >= a)
    if z.imag == 0:
        # analytic interval (0, a): any side gives the same value
        z = complex(z.real, 1e-150)
    return phi(bundle, z) + _pm(z) * 1j * math.pi * (1 - z / c)


def phi_star(bundle: MapBundle, z, side=None) -> complex:
    b, c = bundle.b, bundle.c
    z = lift(z, side, lambda x: x <= b or x >= 1)
    if z.imag == 0:
        z = complex(z.real, 1e-150)
    return phi(bundle, z) + side_of(z) * 1j * math.pi / c * (1 - z)


def nu(bundle: MapBundle, z, side=None) -> complex:
    a, b, c = bundle.a, bundle.b, bundle.c
    z = lift(z, side, lambda x: x <= 0 or a <= x <= b or x >= 1)
    s = sqrt_ab(a, b, z)
    return 2 / c * cmath.log(c / 2 - s) - (cmath.log(z) + cmath.log(1 - z)) / c


# -- 2/3-power maps ------------------------------------------------------------

def _two_thirds_log(w: complex, upper: bool, star: bool) -> complex:
    """log of w^{2/3} on the sheet that makes f_tilde (f_star) conformal at a (b)."""
    theta = cmath.phase(w)
    if not star:
        # arg f_tilde in (-pi, 0) on the upper half plane, (0, pi) on the lower
        if upper and theta > math.pi / 4:
            theta -= 2 * math.pi
        elif not upper and theta < -math.pi / 4:
            theta += 2 * math.pi
    else:
        if upper and theta < -math.pi / 4:
            theta += 2 * math.pi
        elif not upper and theta > math.pi / 4:
            theta -= 2 * math.pi
    if w == 0:
        return complex(-math.inf, 0.0)
    return (2 / 3) * complex(math.log(abs(w)), theta)


def log_f_tilde(bundle: MapBundle, z, side=None) -> complex:
    a, b = bundle.a, bundle.b
    z = complex(z)
    if z == a:
        return complex(-math.inf, 0.0)  # the turning point maps to 0 exactly
    if z.imag == 0 and side is None and a <= z.real < b:
        side = 1
    z = lift(z, side, lambda x: x <= 0 or x >= b)
    w = -1.5 * phi_tilde(bundle, z)
    return _two_thirds_log(w, side_of(z) > 0, star=False)


def log_f_star(bundle: MapBundle, z, side=None) -> complex:
    a, b = bundle.a, bundle.b
    z = complex(z)
    if z == b:
        return complex(-math.inf, 0.0)
    if z.imag == 0 and side is None and a < z.real <= b:
        side = 1
    z = lift(z, side, lambda x: x <= a or x >= 1)
    w = -1.5 * phi_star(bundle, z)
    return _two_thirds_log(w, side_of(z) > 0, star=True)


def _exp_or_zero(L):
    return 0j if L.real == -math.inf else cmath.exp(L)


def f_tilde(bundle: MapBundle, z, side=None) -> complex:
    return _exp_or_zero(log_f_tilde(bundle, z, side))


def f_star(bundle: MapBundle, z, side=None) -> complex:
    return _exp_or_zero(log_f_star(bundle, z, side))


@dataclass(frozen=True)
class XiValue:
    """xi = n^{2/3} f with log xi on the conformal sheet and the 3/2-power pre-image."""
    log_xi: complex
    pre_image: complex  # -(3/2) n phi, so (2/3) xi^{3/2} = -n phi

    @property
    def value(self) -> complex:
        return _exp_or_zero(self.log_xi)

    def power(self, p: float) -> complex:
        return _exp_or_zero(p * self.log_xi)


def xi_tilde(bundle: MapBundle, z, n=None, side=None) -> XiValue:
    n = bundle.n if n is None else n
    L = log_f_tilde(bundle, z, side) + (2 / 3) * math.log(n)
    return XiValue(L, -1.5 * n * phi_tilde(bundle, _side_point(bundle, z, side, star=False)))


def xi_star(bundle: MapBundle, z, n=None, side=None) -> XiValue:
    n = bundle.n if n is None else n
    L = log_f_star(bundle, z, side) + (2 / 3) * math.log(n)
    return XiValue(L, -1.5 * n * phi_star(bundle, _side_point(bundle, z, side, star=True)))


def _side_point(bundle, z, side, star):
    z = complex(z)
    if z.imag != 0:
        return z
    if side is None:
        side = 1
    return complex(z.real, side * 1e-150)


def xi_variables(bundle: MapBundle, z, n=None, side=None) -> tuple[XiValue, XiValue]:
    return xi_tilde(bundle, z, n, side), xi_star(bundle, z, n, side)


# -- node product E and the Stirling ratios D ---------------------------------

def _phi_int(z):
    return z * cmath.log(z) - (z - 1) * cmath.log(z - 1) - 1


def E_and_Etilde(bundle: MapBundle, z, side=None) -> tuple[complex, complex]:
    """(log E, log E_tilde); E_tilde = E / (1 + exp(+-2 N pi i z)) on C+-."""
    N = bundle.N
    z = lift(z, side, lambda x: 0 <= x <= 1)
    nodes = (np.arange(N) + 0.5) / N
    log_prod = complex(np.sum(np.log(z - nodes)))
    logE = -N * _phi_int(z) + log_prod
    s = side_of(z)
    logEt = logE - _log1p_exp(s * 2j * math.pi * N * z)
    return logE, logEt


def _log1p_exp(w: complex) -> complex:
    """log(1 + e^w), stable for Re w << 0 and Re w >> 0."""
    if w.real > 0:
        return w + cmath.log(1 + cmath.exp(-w))
    return cmath.log(1 + cmath.exp(w))


def log_D(bundle: MapBundle, z, side=None) -> complex:
    N = bundle.N
    z = lift(z, side, lambda x: x <= 0)
    Nz = N * z
    return Nz - Nz * cmath.log(Nz) + complex(loggamma(Nz + 0.5)) - LOG_SQRT_2PI


def log_D_star(bundle: MapBundle, z, side=None) -> complex:
    N = bundle.N
    z = lift(z, side, lambda x: x >= 0)
    Nz = N * z
    return LOG_SQRT_2PI + Nz - Nz * cmath.log(-Nz) - complex(loggamma(-Nz + 0.5))


def log_D_tilde(bundle: MapBundle, z, side=None) -> complex:
    z = complex(z)
    if z.real < bundle.x0:
        return log_D_star(bundle, z, side)
    # side flag refers to z; 1 - z lies in the opposite half plane
    return log_D_star(bundle, 1 - z, None if side is None else -side)


def D_functions(bundle: MapBundle, z, side=None) -> tuple[complex, complex, complex]:
    """(log D, log D*, log D~) at z."""
    return log_D(bundle, z, side), log_D_star(bundle, z, side), log_D_tilde(bundle, z, side)
