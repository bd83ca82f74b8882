"""Complex Airy functions Ai, Ai', Bi, Bi'.

|z| <= SERIES_RADIUS: Maclaurin series of the two standard solutions
    f = sum 3^k (1/3)_k z^{3k} / (3k)!,   g = sum 3^k (2/3)_k z^{3k+1} / (3k+1)!
summed in a private 192-bit context, so cancellation between f and g for
Ai on the positive axis costs nothing.

|z| > SERIES_RADIUS: the Poincare expansion of Ai about infinity, used
directly for |arg z| <= 2 pi/3.  Everything else goes through
    Ai(z) = -w Ai(w z) - w^2 Ai(w^2 z),   Bi(z) = e^{i pi/6} Ai(w z) + e^{-i pi/6} Ai(w^2 z)
with w = exp(2 pi i/3), and the matching derivative forms.

Values are returned as :class:`Scaled` so Bi can exceed the double range.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from mpmath.ctx_mp import MPContext

from .scaled import Scaled

SERIES_RADIUS = 9.0
OMEGA = cmath.exp(2j * math.pi / 3)
OMEGA2 = OMEGA * OMEGA
SQRT_PI = math.sqrt(math.pi)

_mp = MPContext()
_mp.prec = 192
_C1 = _mp.mpf(3) ** (-_mp.mpf(2) / 3) / _mp.gamma(_mp.mpf(2) / 3)
_C2 = _mp.mpf(3) ** (-_mp.mpf(1) / 3) / _mp.gamma(_mp.mpf(1) / 3)
_SQRT3 = _mp.sqrt(3)
_TINY = _mp.mpf(2) ** -150


@dataclass(frozen=True)
class AiryValues:
    ai: complex
    ai_prime: complex
    bi: complex
    bi_prime: complex

    @property
    def wronskian(self) -> complex:
        return self.ai * self.bi_prime - self.ai_prime * self.bi


@dataclass(frozen=True)
class ScaledAiry:
    """Ai, Ai', Bi, Bi' each carried as mantissa * exp(scale)."""
    ai: Scaled
    ai_prime: Scaled
    bi: Scaled
    bi_prime: Scaled


def _mp_to_scaled(v) -> Scaled:
    if v == 0:
        return Scaled(0j, 0.0)
    r = abs(v)
    return Scaled(complex(v / r), float(_mp.log(r)))


def _series(z: complex) -> ScaledAiry:
    mp = _mp
    z = mp.mpc(z)
    z2 = z * z
    z3 = z2 * z
    a = mp.mpc(1)          # f term
    b = z                  # g term
    f, g = a, b
    fp, gp = mp.mpc(0), mp.mpc(1)
    k = 1
    while True:
        dfp = a * z2 / (3 * k - 1)
        dgp = b * z2 / (3 * k)
        a = a * z3 / ((3 * k - 1) * (3 * k))
        b = b * z3 / ((3 * k) * (3 * k + 1))
        f += a
        g += b
        fp += dfp
        gp += dgp
        if k > 4 and max(abs(a), abs(b), abs(dfp), abs(dgp)) < _TINY * (1 + abs(f) + abs(g)):
            break
        k += 1
    ai = _C1 * f - _C2 * g
    aip = _C1 * fp - _C2 * gp
    bi = _SQRT3 * (_C1 * f + _C2 * g)
    bip = _SQRT3 * (_C1 * fp + _C2 * gp)
    return ScaledAiry(*(_mp_to_scaled(v) for v in (ai, aip, bi, bip)))


def _zeta(z: complex) -> complex:
    return (2 / 3) * cmath.exp(1.5 * cmath.log(z))


def _ai_expansion(z: complex) -> tuple[Scaled, Scaled]:
    """Poincare expansion of (Ai, Ai') about infinity; meant for |arg z| <= 2 pi/3."""
    zeta = _zeta(z)
    inv = 1 / zeta
    su = sv = 1 + 0j
    u = 1.0
    pw = 1 + 0j
    last = math.inf
    for k in range(1, 60):
        u = u * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        v = -(6 * k + 1) / (6 * k - 1) * u
        pw = -pw * inv
        tu = u * pw
        tv = v * pw
        size = abs(tu)
        if size > last:
            break
        su += tu
        sv += tv
        last = size
        if size < 1e-18 * abs(su):
            break
    q = cmath.exp(0.25 * cmath.log(z))
    ai = Scaled(su / (2 * SQRT_PI * q), 0.0) * Scaled.from_log(-zeta)
    aip = Scaled(-sv * q / (2 * SQRT_PI), 0.0) * Scaled.from_log(-zeta)
    return ai, aip


def _ai_large(z: complex) -> tuple[Scaled, Scaled]:
    if abs(cmath.phase(z)) <= 2 * math.pi / 3:
        return _ai_expansion(z)
    a1, d1 = _ai_expansion(OMEGA * z)
    a2, d2 = _ai_expansion(OMEGA2 * z)
    # Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z);  Ai'(z) = -w^2 Ai'(wz) - w Ai'(w^2 z)
    return -(OMEGA * a1) - OMEGA2 * a2, -(OMEGA2 * d1) - OMEGA * d2


def ai_pair_scaled(z) -> tuple[Scaled, Scaled]:
    """(Ai(z), Ai'(z)) as :class:`Scaled`."""
    z = complex(z)
    if abs(z) <= SERIES_RADIUS:
        s = _series(z)
        return s.ai, s.ai_prime
    return _ai_large(z)


_E_PI6 = cmath.exp(1j * math.pi / 6)
_E_5PI6 = cmath.exp(5j * math.pi / 6)


def airy_scaled_all(z) -> ScaledAiry:
    """All four functions as :class:`Scaled`; never overflows."""
    z = complex(z)
    if abs(z) <= SERIES_RADIUS:
        return _series(z)
    ai, aip = _ai_large(z)
    a1, d1 = ai_pair_scaled(OMEGA * z)
    a2, d2 = ai_pair_scaled(OMEGA2 * z)
    bi = _E_PI6 * a1 + _E_PI6.conjugate() * a2
    bip = _E_5PI6 * d1 + _E_5PI6.conjugate() * d2
    return ScaledAiry(ai, aip, bi, bip)


def _plain(s: Scaled) -> complex:
    try:
        return s.to_complex()
    except OverflowError:
        raise OverflowError("Airy value outside double range; use airy_scaled") from None


def airy_all(z) -> AiryValues:
    s = airy_scaled_all(z)
    return AiryValues(_plain(s.ai), _plain(s.ai_prime), _plain(s.bi), _plain(s.bi_prime))


def airy_exponents(z) -> tuple[float, float]:
    """(-Re zeta, |Re zeta|) with zeta = (2/3) z^{3/2}: growth rates of Ai and Bi."""
    z = complex(z)
    if z == 0:
        return 0.0, 0.0
    r = _zeta(z).real
    return -r, abs(r)


def airy_scaled(z) -> tuple[AiryValues, tuple[float, float]]:
    """Airy values with their exponential growth removed.

    Returns ``(values, (e_ai, e_bi))`` with Ai = values.ai * exp(e_ai) (same
    for Ai'), and Bi = values.bi * exp(e_bi) (same for Bi').
    """
    s = airy_scaled_all(z)
    e_ai, e_bi = airy_exponents(z)

    def shift(v: Scaled, e):
        return Scaled(v.mant, v.scale - e).to_complex()

    vals = AiryValues(shift(s.ai, e_ai), shift(s.ai_prime, e_ai),
                      shift(s.bi, e_bi), shift(s.bi_prime, e_bi))
    return vals, (e_ai, e_bi)


def bi_from_ai(z, sign: int = 1) -> complex:
    """Bi(z) = s i [2 e^{-s pi i/3} Ai(w^s z) - Ai(z)] for s = +1 or -1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    z = complex(z)
    w = OMEGA if sign == 1 else OMEGA2
    a_rot, _ = ai_pair_scaled(w * z)
    a0, _ = ai_pair_scaled(z)
    val = (sign * 1j) * (2 * cmath.exp(-sign * 1j * math.pi / 3) * a_rot - a0)
    return _plain(val)
