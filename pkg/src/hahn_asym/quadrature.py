"""Thin wrappers around ``scipy.integrate.quad`` used as independent oracles."""

from __future__ import annotations

import math

from scipy.integrate import quad

EPS = 1e-13


def quad_complex(f, lo, hi, points=None, eps=EPS, limit=400):
    """Integral of a complex-valued f over [lo, hi], real and imaginary parts separately."""
    pts = None
    if points:
        pts = sorted(p for p in points if lo < p < hi) or None
    kw = dict(epsabs=eps, epsrel=eps, limit=limit, points=pts)
    re, _ = quad(lambda s: complex(f(s)).real, lo, hi, **kw)
    im, _ = quad(lambda s: complex(f(s)).imag, lo, hi, **kw)
    return complex(re, im)


def quad_inv_sqrt(f, a, b, eps=EPS):
    """Integral of f(s) / sqrt((s-a)(b-s)) over [a, b].

    The substitution s = a + (b-a) sin^2(t) removes both endpoint
    singularities and leaves 2 * int_0^{pi/2} f(s(t)) dt.
    """
    def g(t):
        return 2.0 * complex(f(a + (b - a) * math.sin(t) ** 2))
    return quad_complex(g, 0.0, math.pi / 2, eps=eps)
