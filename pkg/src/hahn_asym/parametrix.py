"""Outer parametrix: the scalar M, the 2x2 model solution N and the amplitudes m, m*.

All roots and powers are principal.  ``sqrt(z-a) * sqrt(z-b)`` is then
exactly the branch on C minus [a, b] that behaves like z at infinity, and
the quartic ratio ``(z-b)^{1/4} / (z-a)^{1/4}`` is continuous across
(-inf, a) because both factors pick up the same phase there.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .aux_maps import MapBundle
from .branches import lift
from .equilibrium import sqrt_ab


@dataclass(frozen=True)
class OuterParametrix:
    N11: complex
    N12: complex
    N21: complex
    N22: complex
    m: complex
    m_star: complex

    def matrix(self):
        return ((self.N11, self.N12), (self.N21, self.N22))

    @property
    def det(self) -> complex:
        return self.N11 * self.N22 - self.N12 * self.N21


def _cpow(base: complex, p: float) -> complex:
    if p == 0:
        return 1 + 0j
    return cmath.exp(p * cmath.log(base))


def _band_cut(bundle):
    a, b = bundle.a, bundle.b
    return lambda x: a <= x <= b


def szego_M(bundle: MapBundle, z, side=None) -> complex:
    a, b, c = bundle.a, bundle.b, bundle.c
    al, be = bundle.params.alpha, bundle.params.beta
    z = lift(z, side, _band_cut(bundle))
    s = sqrt_ab(a, b, z)
    r = math.sqrt(a) + math.sqrt(b)
    return (_cpow((z + c / 2 + s) / (z * r), al)
            * _cpow((1 - z + c / 2 - s) / ((1 - z) * r), be))


def a_fun(bundle: MapBundle, z, side=None) -> complex:
    """(z-b)^{1/4} / (z-a)^{1/4}, cut on [a, b], tends to 1 at infinity."""
    a, b = bundle.a, bundle.b
    z = lift(z, side, _band_cut(bundle))
    return cmath.exp(0.25 * (cmath.log(z - b) - cmath.log(z - a)))


def h_weight(bundle: MapBundle, x, side=None) -> complex:
    """x^alpha (1-x)^beta; real and positive on (0, 1)."""
    al, be = bundle.params.alpha, bundle.params.beta
    x = complex(x)
    if x.imag == 0 and 0 <= x.real <= 1:
        xr = x.real
        if xr in (0.0, 1.0):
            ex = al if xr == 0 else be
            return complex(0.0 if ex > 0 else (1.0 if ex == 0 else math.inf))
        return complex(xr ** al * (1 - xr) ** be)
    x = lift(x, side, lambda t: t <= 0 or t >= 1)
    return _cpow(x, al) * _cpow(1 - x, be)


def outer_N(bundle: MapBundle, z, side=None) -> OuterParametrix:
    """N(z) and the amplitudes read off from it.

    On the extra cuts of m* (real z outside [0, 1]) the upper boundary value
    is used unless ``side`` says otherwise; N itself is analytic there.
    """
    z = lift(z, side, _band_cut(bundle))
    if z.imag == 0:
        z = complex(z.real, (side or 1) * 1e-150)
    A = a_fun(bundle, z)
    M = szego_M(bundle, z)
    Mi = bundle.M_inf
    N11 = 0.5 * (A + 1 / A) * M / Mi
    N12 = 0.5j * (A - 1 / A) / (M * Mi)
    N21 = 0.5j * (1 / A - A) * M * Mi
    N22 = 0.5 * (A + 1 / A) * Mi / M
    h = h_weight(bundle, z)
    return OuterParametrix(N11, N12, N21, N22, N11, -1j * N12 / h)


def m_and_mstar(bundle: MapBundle, z, side=None) -> tuple[complex, complex]:
    """m and m* from their direct closed forms (not via the matrix N)."""
    a, b, c = bundle.a, bundle.b, bundle.c
    al, be = bundle.params.alpha, bundle.params.beta
    z = lift(z, side, lambda x: x <= 0 or a <= x <= b or x >= 1)
    ra, rb = cmath.sqrt(z - a), cmath.sqrt(z - b)
    qa, qb = cmath.exp(0.25 * cmath.log(z - a)), cmath.exp(0.25 * cmath.log(z - b))
    s = ra * rb
    den = 2 * qa * qb
    m = ((ra + rb) / den * _cpow((z + c / 2 + s) / (2 * z), al)
         * _cpow((1 - z + c / 2 - s) / (2 * (1 - z)), be))
    ms = ((rb - ra) / den * _cpow((z + c / 2 - s) / (2 * z), al)
          * _cpow((1 - z + c / 2 + s) / (2 * (1 - z)), be))
    return m, ms


def m_zero_limit(bundle: MapBundle) -> float:
    """Limit of m(z) as z -> 0."""
    c = bundle.c
    al, be = bundle.params.alpha, bundle.params.beta
    return (1 + c) ** (al + be + 0.5) / (2 ** (al + be + 0.5) * c ** (al + 0.5))
