"""Constrained equilibrium measure for the rescaled Hahn weight.

For c = n/N in (0, 1) the measure is saturated (density 1/c) on [0, a] and
[b, 1] and has a band on (a, b).  Everything here is closed form; the
quadrature routines are only used to check these formulas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .branches import lift
from .quadrature import quad_complex, quad_inv_sqrt

IMAG_TOL = 1e-10


class ConsistencyError(ArithmeticError):
    pass


def _check_c(c):
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")


def mrs_endpoints(c: float) -> tuple[float, float]:
    """Band endpoints a < b with a + b = 1 and ab = c^2/4."""
    _check_c(c)
    r = math.sqrt((1 - c) * (1 + c))
    # a via ab = c^2/4 avoids cancellation in (1 - r)/2 for small c
    b = 0.5 + 0.5 * r
    a = c * c / (4 * b)
    return a, b


@dataclass(frozen=True)
class EquilibriumData:
    a: float
    b: float
    c: float
    l: float

    @classmethod
    def for_c(cls, c: float) -> "EquilibriumData":
        return _equilibrium(float(c))


@lru_cache(maxsize=256)
def _equilibrium(c):
    a, b = mrs_endpoints(c)
    return EquilibriumData(a, b, c, lagrange_l(c))


def density_mu(c: float, x: float) -> float:
    if not 0 <= x <= 1:
        raise ValueError(f"density is defined on [0, 1], got x={x}")
    a, b = mrs_endpoints(c)
    if x <= a or x >= b:
        return 1 / c
    arg = c / (2 * math.sqrt(x - x * x))
    return 2 / (math.pi * c) * math.asin(min(arg, 1.0))


def density_mu_prime(c: float, x: float) -> float:
    """Derivative of the density inside the band."""
    a, b = mrs_endpoints(c)
    if not a < x < b:
        return 0.0
    return -(1 - 2 * x) / (2 * math.pi * (x - x * x) * math.sqrt((x - a) * (b - x)))


def band_mass(c: float) -> float:
    """Mass of the band, 1 - 2a/c."""
    a, _ = mrs_endpoints(c)
    return 1 - 2 * a / c


def external_field_V(x: float) -> float:
    if not 0 <= x <= 1:
        raise ValueError(f"V is defined on [0, 1], got x={x}")
    if x in (0, 1):
        return 1.0
    return 1 - x * math.log(x) - (1 - x) * math.log1p(-x)


def sqrt_ab(a, b, z):
    """sqrt((z-a)(z-b)) on C minus [a, b], behaving like z at infinity."""
    return cmath.sqrt(z - a) * cmath.sqrt(z - b)


def _on_g_cut(x):
    return x <= 1


def g_explicit(c: float, z, side: int | None = None) -> complex:
    """Logarithmic potential of the equilibrium measure, closed form.

    Cut on (-inf, 1]; pass ``side`` for boundary values there.
    """
    a, b = mrs_endpoints(c)
    z = lift(z, side, _on_g_cut)
    s = sqrt_ab(a, b, z)
    log = cmath.log
    return (-1 - 2 * math.log(2)
            + (z - 1) * log(z - 1) / c
            - z * log(z) / c
            + (2 - 2 / c) * log(cmath.sqrt(z - a) + cmath.sqrt(z - b))
            + 2 / c * z * log(z + s + c / 2)
            + 2 / c * (1 - z) * log(z - 1 + s - c / 2))


def g_prime_explicit(c: float, z, side: int | None = None) -> complex:
    a, b = mrs_endpoints(c)
    z = lift(z, side, lambda x: 0 <= x <= 1)
    s = sqrt_ab(a, b, z)
    return (2 / c * cmath.log((z + s + c / 2) / (z - 1 + s - c / 2))
            + cmath.log((z - 1) / z) / c)


def g_quadrature(c: float, z) -> complex:
    """int_0^1 log(z - s) mu(s) ds by adaptive quadrature (off-axis z)."""
    a, b = mrs_endpoints(c)
    z = complex(z)
    return quad_complex(lambda s: cmath.log(z - s) * density_mu(c, s), 0.0, 1.0,
                        points=[a, b, z.real])


def g_prime_quadrature(c: float, z) -> complex:
    a, b = mrs_endpoints(c)
    z = complex(z)
    return quad_complex(lambda s: density_mu(c, s) / (z - s), 0.0, 1.0, points=[a, b, z.real])


def lagrange_l(c: float) -> float:
    """Lagrange multiplier from the upper boundary value of g at a."""
    a, _ = mrs_endpoints(c)
    val = 2 * g_explicit(c, a, side=1) - 2j * math.pi * (1 - a / c)
    if abs(val.imag) > IMAG_TOL:
        raise ConsistencyError(f"Lagrange multiplier has imaginary residue {val.imag:.3e}")
    return val.real


def lagrange_l_quadrature(c: float) -> float:
    a, b = mrs_endpoints(c)
    return 2 * quad_complex(lambda s: math.log(abs(a - s)) * density_mu(c, s), 0.0, 1.0,
                            points=[a, b]).real


def log_integral_I3(c: float) -> float:
    """int_a^b log(s) / sqrt((s-a)(b-s)) ds in closed form."""
    a, b = mrs_endpoints(c)
    return 2 * math.pi * math.log((math.sqrt(a) + math.sqrt(b)) / 2)


def log_integral_I3_quadrature(c: float) -> float:
    a, b = mrs_endpoints(c)
    return quad_inv_sqrt(math.log, a, b).real
