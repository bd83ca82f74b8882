"""Boundary-value bookkeeping for functions with cuts on the real axis.

Every closed form in this package is analytic off a finite union of real
intervals.  A real argument that sits on one of those intervals is moved a
distance ``LIFT`` into the requested half plane; since the functions are
analytic there, the result is the boundary value to double precision.
``LIFT`` is small enough that its square still does not underflow.
"""

from __future__ import annotations

LIFT = 1e-150


class CutError(ValueError):
    """A point on a branch cut was passed without a side flag."""


def side_of(z: complex) -> int:
    return 1 if complex(z).imag >= 0 else -1


def lift(z, side: int | None, on_cut) -> complex:
    """Resolve a real point to a boundary value when it lies on a cut.

    ``on_cut`` is a predicate on the real part.  ``side`` is +1 (upper
    limit) or -1 (lower limit).  Off-axis points are returned unchanged.
    """
    z = complex(z)
    if z.imag != 0:
        return z
    if side is None:
        if on_cut(z.real):
            raise CutError(f"z={z.real} lies on a branch cut; pass side=+1 or side=-1")
        return z
    if side not in (1, -1):
        raise ValueError(f"side must be +1 or -1, got {side}")
    return complex(z.real, side * LIFT)
