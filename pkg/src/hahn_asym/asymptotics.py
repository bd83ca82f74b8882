"""Uniform large-n approximations of the monic Hahn polynomial pi_{N,n}(z).

Three regions (see :func:`classify`):

    I    outside the rectangle K = {x1 < Re z < 1-x1, |Im z| < delta}
    II   inside K with Re z <= x0   (Airy functions of n^{2/3} f_tilde)
    III  inside K with Re z > x0    (Airy functions of n^{2/3} f_star)

Every assembly is done on :class:`Scaled` numbers; the result keeps the
log-magnitude apart from a unit-modulus phase so degree 256 and beyond never
overflow.  Sign factors (-1)^n and (-1)^N are exact integers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from scipy.special import loggamma

from . import aux_maps as am
from .airy import OMEGA, OMEGA2, ai_pair_scaled, airy_scaled_all
from .aux_maps import MapBundle
from .oracle import HahnParams, leading_coeff
from .parametrix import m_and_mstar, outer_N
from .scaled import Scaled, rel_diff

SQRT_PI = math.sqrt(math.pi)


class RegionMisuse(ValueError):
    """A regional formula was asked for a point outside its region."""


@dataclass(frozen=True)
class RegionTag:
    region: str  # "I", "II" or "III"
    half_plane: str  # "upper", "lower" or "real-axis"
    in_lens: bool
    side_of_gamma0: str  # "left" or "right"

    def __str__(self):
        return self.region


@dataclass(frozen=True)
class AsymptoticResult:
    log_magnitude: float
    unit_value: complex
    region: RegionTag
    formula_terms: dict = field(default_factory=dict, repr=False)

    @property
    def scaled(self) -> Scaled:
        return Scaled(self.unit_value, self.log_magnitude)

    @property
    def assembled(self) -> complex | None:
        try:
            return self.scaled.to_complex()
        except OverflowError:
            return None

    @classmethod
    def from_scaled(cls, v: Scaled, region: RegionTag, terms=None):
        v = v.normalized()
        if v.mant == 0:
            return cls(-math.inf, 0j, region, terms or {})
        return cls(v.log_abs, v.mant / abs(v.mant), region, terms or {})


# -- geometry -----------------------------------------------------------------

def classify(bundle: MapBundle, z) -> RegionTag:
    z = complex(z)
    x, y = z.real, z.imag
    half = "upper" if y > 0 else ("lower" if y < 0 else "real-axis")
    left = "left" if x <= bundle.x0 else "right"
    in_K = bundle.x1 < x < 1 - bundle.x1 and abs(y) < bundle.delta
    if in_K:
        return RegionTag("II" if x <= bundle.x0 else "III", half, False, left)
    in_lens = 0 < x < 1 and abs(y) < bundle.lens_height
    return RegionTag("I", half, in_lens, left)


# -- scaled elementary pieces ---------------------------------------------------

def _reduced_angle(N: int, z: complex) -> complex:
    """N*pi*z with the real part reduced mod 2*pi before multiplying by pi."""
    t = N * z
    return math.pi * complex(math.fmod(t.real, 2.0), t.imag)


def sin_cos_scaled(N: int, z: complex) -> tuple[Scaled, Scaled]:
    """sin(N pi z), cos(N pi z) without overflow for large Im z."""
    w = _reduced_angle(N, z)
    ep = Scaled.from_log(1j * w)
    em = Scaled.from_log(-1j * w)
    return (ep - em) / 2j, (ep + em) / 2


def _lift_real(z: complex, side: int | None) -> tuple[complex, int]:
    side = 1 if side is None else side
    if z.imag == 0:
        return z, side
    return z, (1 if z.imag > 0 else -1)


# -- the three regional formulas ----------------------------------------------

def asym_region_I(bundle: MapBundle, z, n=None, side=None, check=True) -> AsymptoticResult:
    n = bundle.n if n is None else n
    z = complex(z)
    tag = classify(bundle, z)
    if check and tag.region != "I":
        raise RegionMisuse(f"z={z} lies in region {tag.region}, not I")
    if z in (0, 1):
        raise ValueError("z = 0 and z = 1 are removable points of the closed forms; "
                         "evaluate at a nearby point")
    z, s = _lift_real(z, side)
    ph = am.phi(bundle, z, side=s if z.imag == 0 and z.real <= 1 else None)
    logDt = am.log_D_tilde(bundle, z, side=s if z.imag == 0 and 0 <= z.real <= 1 else None)
    m = outer_N(bundle, z, side=s if z.imag == 0 else None).m
    logv = n * bundle.eq.l / 2 + logDt - n * ph + cmath.log(m)
    val = Scaled.from_log(logv)
    terms = {"outer": val}
    if tag.in_lens:
        p = bundle.params
        terms["delta_log_bound"] = (n * bundle.eq.l / 2 + max(p.alpha, p.beta) * math.log(bundle.N)
                                    + n * ph.real)
    return AsymptoticResult.from_scaled(val, tag, terms)


_E1 = cmath.exp(1j * math.pi / 6)
_E5 = cmath.exp(5j * math.pi / 6)


@dataclass(frozen=True)
class TrigAiry:
    """The four trig-Airy combinations entering regions II and III.

    sin Ai + cos Bi, sin Ai' + cos Bi', cos Bi - sin Ai, cos Bi' - sin Ai'
    evaluated through Bi +- i Ai = 2 e^{+-i pi/6} Ai(w^{+-1} xi) and
    Bi' +- i Ai' = 2 e^{+-5 i pi/6} Ai'(w^{+-1} xi).  Off the real axis one
    of sin, cos dominates and the naive sums cancel to a recessive remainder;
    in this form each term is computed to full relative accuracy.
    """
    s_ai_c_bi: Scaled
    s_aip_c_bip: Scaled
    c_bi_s_ai: Scaled
    c_bip_s_aip: Scaled


def trig_airy(N: int, z: complex, log_xi: complex) -> TrigAiry:
    w = _reduced_angle(N, z)
    ep = Scaled.from_log(1j * w)
    em = Scaled.from_log(-1j * w)
    xi = cmath.exp(log_xi)
    ap, dp = ai_pair_scaled(OMEGA * xi)    # Ai(w xi), Ai'(w xi)
    am_, dm = ai_pair_scaled(OMEGA2 * xi)  # Ai(w^2 xi) = Ai(conj(w) xi)
    c1, c5 = _E1, _E5
    return TrigAiry(
        ep * am_ * c1.conjugate() + em * ap * c1,
        ep * dm * c5.conjugate() + em * dp * c5,
        ep * ap * c1 + em * am_ * c1.conjugate(),
        ep * dp * c5 + em * dm * c5.conjugate(),
    )


def _airy_block(bundle, z, n, side, star):
    """Shared pieces for regions II and III."""
    if star:
        xi = am.xi_star(bundle, z, n, side=side)
    else:
        xi = am.xi_tilde(bundle, z, n, side=side)
    if xi.log_xi.real == -math.inf:
        raise ValueError(f"z={z} is the turning point itself; the Airy form is 0 * inf there")
    t = trig_airy(bundle.N, z, xi.log_xi)
    q = Scaled.from_log(xi.log_xi / 4)
    qi = Scaled.from_log(-xi.log_xi / 4)
    m, ms = m_and_mstar(bundle, z, side=side)
    return t, q, qi, m, ms


def asym_region_II(bundle: MapBundle, z, n=None, side=None, check=True) -> AsymptoticResult:
    n = bundle.n if n is None else n
    z = complex(z)
    tag = classify(bundle, z)
    if check and tag.region != "II":
        raise RegionMisuse(f"z={z} lies in region {tag.region}, not II")
    if z == bundle.a:
        raise ValueError("z = a is the turning point itself; evaluate at a nearby point")
    z, s = _lift_real(z, side)
    side_flag = s if z.imag == 0 else None
    t, q, qi, m, ms = _airy_block(bundle, z, n, side_flag, star=False)
    A = q * (m + ms) * t.s_ai_c_bi
    B = qi * (m - ms) * t.s_aip_c_bip
    pref = Scaled.from_log(n * bundle.eq.l / 2) * (SQRT_PI * (-1) ** (n % 2))
    val = pref * (A + B)
    return AsymptoticResult.from_scaled(val, tag, {"A": pref * A, "B": pref * B})


def asym_region_III(bundle: MapBundle, z, n=None, side=None, check=True) -> AsymptoticResult:
    n = bundle.n if n is None else n
    z = complex(z)
    tag = classify(bundle, z)
    if check and tag.region != "III":
        raise RegionMisuse(f"z={z} lies in region {tag.region}, not III")
    if z == bundle.b:
        raise ValueError("z = b is the turning point itself; evaluate at a nearby point")
    z, s = _lift_real(z, side)
    side_flag = s if z.imag == 0 else None
    t, q, qi, m, ms = _airy_block(bundle, z, n, side_flag, star=True)
    A = q * (m - ms) * t.c_bi_s_ai
    B = qi * (m + ms) * t.c_bip_s_aip
    pref = Scaled.from_log(n * bundle.eq.l / 2) * (SQRT_PI * (-1) ** (bundle.N % 2))
    val = pref * (A + B)
    return AsymptoticResult.from_scaled(val, tag, {"A": pref * A, "B": pref * B})


_DISPATCH = {"I": asym_region_I, "II": asym_region_II, "III": asym_region_III}


def asym_monic(bundle: MapBundle, z, n=None, side=None) -> AsymptoticResult:
    """Leading-order pi_{N,n}(z) using the formula for the region containing z."""
    tag = classify(bundle, z)
    return _DISPATCH[tag.region](bundle, z, n, side)


# -- normalizations -------------------------------------------------------------

def monic_to_Q(p: HahnParams, value_monic: Scaled) -> Scaled:
    """Q_n(Nz - 1/2; alpha, beta, N-1) = k_{N,n} pi_{N,n}(z)."""
    logk, sign = leading_coeff(p)
    return value_monic * Scaled(complex(sign), logk)


def Q_to_monic(p: HahnParams, value_Q: Scaled) -> Scaled:
    logk, sign = leading_coeff(p)
    return value_Q / Scaled(complex(sign), logk)


# -- fixed x --------------------------------------------------------------------

@dataclass(frozen=True)
class FixedXResult:
    log_abs: float
    sign: int
    zero_leading: bool = False

    @property
    def scaled(self) -> Scaled:
        if self.zero_leading:
            return Scaled(0j, 0.0)
        return Scaled(complex(self.sign), self.log_abs)


def asym_fixed_x(p: HahnParams, x: float, n=None) -> FixedXResult:
    """Large-n form of Q_n(x; alpha, beta, N-1) for fixed real x and fixed c = n/N.

    For x > -1/2 the leading term carries Gamma(x+1) sin(pi x), so at
    non-negative integers x it vanishes and only an indicator is returned.
    """
    n = p.n if n is None else n
    N, al, be, c = p.bigN, p.alpha, p.beta, n / p.bigN
    if x == -0.5:
        raise ValueError("x = -1/2 separates the two fixed-x formulas")
    lg = math.lgamma
    base = (lg(al + 1) + lg(N - n) - lg(N) - n - (2 * x + 2 * al + 2) * math.log(n)
            + (n + N + al + be + 0.5) * math.log1p(c) + (x + n + al + 1) * math.log(N))
    if x > -0.5:
        if x == int(x):
            return FixedXResult(-math.inf, 0, zero_leading=True)
        sn = math.sin(math.pi * x)
        return FixedXResult(base - math.log(math.pi) + lg(x + 1) + math.log(abs(sn)),
                            -1 if sn > 0 else 1)
    g = math.gamma(-x)
    return FixedXResult(base - math.log(abs(g)), 1 if g > 0 else -1)


# -- discrete Chebyshev specialization ----------------------------------------

def _quartic(z):
    return cmath.exp(0.25 * cmath.log(z))


def pi_left_chebyshev(bundle: MapBundle, z, n=None, side=None) -> Scaled:
    """Region II form written directly with the alpha = beta = 0 amplitudes."""
    n = bundle.n if n is None else n
    z = complex(z)
    a, b = bundle.a, bundle.b
    z, s = _lift_real(z, side)
    zl = z if z.imag != 0 else complex(z.real, s * 1e-150)
    xi = am.xi_tilde(bundle, z, n, side=s if z.imag == 0 else None)
    ai = airy_scaled_all(cmath.exp(xi.log_xi))
    sn, cs = sin_cos_scaled(bundle.N, z)
    ratio = _quartic(zl - b) / _quartic(zl - a)
    t1 = (sn * ai.ai + cs * ai.bi) * ratio * Scaled.from_log(xi.log_xi / 4)
    t2 = (sn * ai.ai_prime + cs * ai.bi_prime) / ratio * Scaled.from_log(-xi.log_xi / 4)
    return Scaled.from_log(n * bundle.eq.l / 2) * (SQRT_PI * (-1) ** (n % 2)) * (t1 + t2)


def _m_chebyshev(a, b, z):
    return (cmath.sqrt(z - a) + cmath.sqrt(z - b)) / (2 * _quartic(z - a) * _quartic(z - b))


def t18_form(bundle: MapBundle, z, n=None) -> Scaled:
    """z < 0: D*(z) exp(n(l/2 - phi)) m(z) with D* spelled out."""
    n = bundle.n if n is None else n
    N = bundle.N
    zl = complex(z.real if isinstance(z, complex) else z, 1e-150)
    Nz = N * zl
    logDs = 0.5 * math.log(2 * math.pi) + Nz - Nz * cmath.log(-Nz) - complex(loggamma(-Nz + 0.5))
    logv = logDs + n * (bundle.eq.l / 2 - am.phi(bundle, zl))
    return Scaled.from_log(logv) * _m_chebyshev(bundle.a, bundle.b, zl)


def t19_form(bundle: MapBundle, z, n=None) -> Scaled:
    """0 < z < x1: (-1)^n 2 exp(n(l/2 - phi_tilde)) D(z) cos(N pi z) m(z)."""
    n = bundle.n if n is None else n
    N = bundle.N
    x = float(complex(z).real)
    Nz = N * x
    logD = Nz - Nz * math.log(Nz) + math.lgamma(Nz + 0.5) - 0.5 * math.log(2 * math.pi)
    pt = am.phi_tilde(bundle, x)
    _, cs = sin_cos_scaled(N, complex(x))
    v = Scaled.from_log(n * (bundle.eq.l / 2 - pt) + logD) * cs
    return v * (2 * (-1) ** (n % 2)) * _m_chebyshev(bundle.a, bundle.b, complex(x))


def chebyshev_reduction_check(bundle: MapBundle, z, n=None) -> float:
    """Relative residual between the general formula and its alpha = beta = 0 form."""
    p = bundle.params
    if p.alpha != 0 or p.beta != 0:
        raise ValueError("the Chebyshev reduction needs alpha = beta = 0")
    z = complex(z)
    tag = classify(bundle, z)
    if tag.region == "II":
        general = asym_region_II(bundle, z, n).scaled
        special = pi_left_chebyshev(bundle, z, n)
    elif tag.region == "I" and z.imag == 0 and z.real < 0:
        general = asym_region_I(bundle, z, n).scaled
        special = t18_form(bundle, z, n)
    elif tag.region == "I" and z.imag == 0 and 0 < z.real < bundle.x1:
        general = asym_region_I(bundle, z, n).scaled
        special = t19_form(bundle, z, n)
    else:
        raise ValueError(f"no specialized form for z={z} in region {tag.region}")
    return rel_diff(general, special)
