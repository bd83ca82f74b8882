"""Error metrics and convergence fits comparing the asymptotics with the oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import asym_monic, classify
from .aux_maps import MapBundle
from .equilibrium import density_mu
from .oracle import HahnParams, PrecisionContext, PrecisionError, eval_monic_exact
from .scaled import Scaled, rel_diff

STENCIL_HALF = 4
ZERO_FLOOR = 1e-3


def exact_scaled(p: HahnParams, z, ctx: PrecisionContext | None = None) -> Scaled:
    v = eval_monic_exact(p, z, ctx)
    if v == 0:
        return Scaled(0j, 0.0)
    mp = (ctx or PrecisionContext(128)).mp()
    r = abs(v)
    return Scaled(complex(v / r), float(mp.log(r)))


def in_band(bundle: MapBundle, z) -> bool:
    z = complex(z)
    return z.imag == 0 and bundle.a < z.real < bundle.b


def band_stencil(bundle: MapBundle, x: float, half: int = STENCIL_HALF) -> list[float]:
    """2*half+1 points spanning one local oscillation period around x.

    Zeros of pi_{N,n} near x are spaced by about 1 / (n mu(x)).
    """
    h = 1 / (2 * half * bundle.n * density_mu(bundle.c, x))
    return [x + j * h for j in range(-half, half + 1)]


@dataclass(frozen=True)
class PointError:
    z: complex
    n: int
    region: str
    exact: Scaled
    asym: Scaled
    rel_error: float
    local_error: float | None = None  # band points only
    near_zero: bool = False


def point_error(p: HahnParams, z, bundle: MapBundle | None = None,
                ctx: PrecisionContext | None = None, local: bool = True) -> PointError:
    """Pointwise relative error at z; on the band also the local uniform error.

    The local uniform error is max |asym - exact| / max |exact| over
    :func:`band_stencil`.  ``near_zero`` flags points where |exact| is below
    ZERO_FLOOR times the stencil maximum.
    """
    bundle = bundle or MapBundle.build(p)
    z = complex(z)
    ex = exact_scaled(p, z, ctx)
    asym = asym_monic(bundle, z).scaled
    rel = rel_diff(asym, ex)
    tag = classify(bundle, z)
    if not (local and in_band(bundle, z)):
        return PointError(z, p.n, tag.region, ex, asym, rel)
    pts = band_stencil(bundle, z.real)
    exs = [exact_scaled(p, t, ctx) for t in pts]
    asy = [asym_monic(bundle, t).scaled for t in pts]
    top = max(e.log_abs for e in exs)
    loc = max(math.exp((a - e).log_abs - top) for a, e in zip(asy, exs))
    near = ex.log_abs < top + math.log(ZERO_FLOOR)
    return PointError(z, p.n, tag.region, ex, asym, rel, loc, near)


def loglog_slope(ns, errors) -> float:
    """Least-squares slope of log(error) against log(n)."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


@dataclass(frozen=True)
class ConvergenceRow:
    error: PointError | None
    flagged: str = ""


def convergence_series(alpha, beta, c, z, ns, bits=None) -> list[ConvergenceRow]:
    rows = []
    for n in ns:
        p = HahnParams.from_ratio(alpha, beta, c, n)
        ctx = PrecisionContext(bits) if bits else None
        try:
            rows.append(ConvergenceRow(point_error(p, z, ctx=ctx)))
        except PrecisionError as e:
            rows.append(ConvergenceRow(None, str(e)))
    return rows
