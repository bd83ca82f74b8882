"""Complex numbers carried as ``mantissa * exp(scale)``.

Degree-n polynomial values at n ~ 10^2..10^3 routinely leave the double
range; every asymptotic assembly is done on these pairs and only collapsed
to a plain complex (or an mpmath number) at the very end.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Scaled:
    mant: complex
    scale: float = 0.0

    @classmethod
    def from_log(cls, logz: complex) -> "Scaled":
        logz = complex(logz)
        if logz.real == -math.inf:
            return ZERO
        return cls(cmath.exp(1j * logz.imag), logz.real)

    @classmethod
    def of(cls, z: complex) -> "Scaled":
        z = complex(z)
        if z == 0:
            return ZERO
        r = abs(z)
        return cls(z / r, math.log(r))

    def normalized(self) -> "Scaled":
        r = abs(self.mant)
        if r == 0 or not math.isfinite(r):
            return self if r else ZERO
        return Scaled(self.mant / r, self.scale + math.log(r))

    def __mul__(self, other) -> "Scaled":
        if not isinstance(other, Scaled):
            other = Scaled.of(other)
        if self.mant == 0 or other.mant == 0:
            return ZERO
        return Scaled(self.mant * other.mant, self.scale + other.scale).normalized()

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scaled":
        if not isinstance(other, Scaled):
            other = Scaled.of(other)
        if other.mant == 0:
            raise ZeroDivisionError("division by a zero Scaled value")
        return self * Scaled(1 / other.mant, -other.scale)

    def __neg__(self) -> "Scaled":
        return Scaled(-self.mant, self.scale)

    def __add__(self, other) -> "Scaled":
        if not isinstance(other, Scaled):
            other = Scaled.of(other)
        if self.mant == 0:
            return other
        if other.mant == 0:
            return self
        top = max(self.scale, other.scale)
        s = self.mant * math.exp(self.scale - top) + other.mant * math.exp(other.scale - top)
        if s == 0:
            return ZERO
        return Scaled(s, top).normalized()

    __radd__ = __add__

    def __sub__(self, other) -> "Scaled":
        if not isinstance(other, Scaled):
            other = Scaled.of(other)
        return self + (-other)

    @property
    def log_abs(self) -> float:
        if self.mant == 0:
            return -math.inf
        return self.scale + math.log(abs(self.mant))

    @property
    def phase(self) -> float:
        return cmath.phase(self.mant) if self.mant != 0 else 0.0

    def log(self) -> complex:
        return complex(self.log_abs, self.phase)

    def to_complex(self) -> complex:
        """Collapse to a plain complex; raises OverflowError if unrepresentable."""
        if self.mant == 0:
            return 0j
        return self.mant * math.exp(self.scale)

    def to_mp(self, ctx):
        if self.mant == 0:
            return ctx.mpc(0)
        return ctx.mpc(self.mant) * ctx.exp(ctx.mpf(self.scale))


ZERO = Scaled(0j, 0.0)


def rel_diff(x: Scaled, y: Scaled) -> float:
    """|x - y| / |y| evaluated without leaving log space."""
    if y.mant == 0:
        return math.inf if x.mant != 0 else 0.0
    d = x - y
    if d.mant == 0:
        return 0.0
    return math.exp(d.log_abs - y.log_abs)
