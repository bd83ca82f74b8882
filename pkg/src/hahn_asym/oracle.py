"""High-precision reference evaluation of Hahn polynomials.

Two independent routes are provided for ``Q_n``: the terminating 3F2 sum and
the three-term recurrence in the degree. Both run in mpmath at a working
precision that grows with n; the sum route also estimates its own
cancellation and retries at higher precision when the estimate says the
result cannot be trusted.

Conventions: ``Q_n(x; alpha, beta, N)`` is orthogonal on {0, ..., N}.
:class:`HahnParams` describes the rescaled problem with ``bigN`` nodes, so the
Hahn family parameter there is ``bigN - 1``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from mpmath.ctx_mp import MPContext
from scipy.special import loggamma

MAX_BITS = 1 << 15
GUARD_BITS = 48


class PrecisionError(ArithmeticError):
    """The requested evaluation needs more precision than allowed."""


@dataclass(frozen=True)
class HahnParams:
    alpha: float
    beta: float
    bigN: int
    n: int

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValueError(f"need alpha, beta > -1, got {self.alpha}, {self.beta}")
        if self.bigN < 1:
            raise ValueError(f"bigN must be positive, got {self.bigN}")
        if not 0 <= self.n <= self.bigN - 1:
            raise ValueError(f"need 0 <= n <= bigN - 1, got n={self.n}, bigN={self.bigN}")

    @property
    def c(self) -> float:
        return self.n / self.bigN

    @property
    def hahn_N(self) -> int:
        """Family parameter of the underlying Q_n (orthogonality on 0..bigN-1)."""
        return self.bigN - 1

    @classmethod
    def from_ratio(cls, alpha: float, beta: float, c: float, n: int) -> "HahnParams":
        bigN = round(n / c)
        if bigN <= n:
            raise ValueError(f"c={c} with n={n} gives bigN={bigN} <= n")
        return cls(alpha, beta, bigN, n)


def default_bits(n: int) -> int:
    return max(128, 6 * n + 64)


@dataclass(frozen=True)
class PrecisionContext:
    bits: int = 128

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError(f"precision must be at least 64 bits, got {self.bits}")

    @classmethod
    def for_degree(cls, n: int) -> "PrecisionContext":
        env = os.environ.get("HAHN_ASYM_PRECISION_BITS")
        if env:
            return cls(int(env))
        return cls(default_bits(n))

    def mp(self) -> MPContext:
        ctx = MPContext()
        ctx.prec = self.bits
        return ctx


@dataclass(frozen=True)
class NodeSet:
    nodes: tuple
    weights: tuple = field(repr=False)


def node_set(p: HahnParams) -> NodeSet:
    nodes = tuple(Fraction(2 * k + 1, 2 * p.bigN) for k in range(p.bigN))
    weights = tuple(eval_w_rescaled(p, float(x)).real for x in nodes)
    return NodeSet(nodes, weights)


# -- the terminating sum ------------------------------------------------------

def _hahn_sum(mp, n, x, alpha, beta, N):
    """Return (value, max |term|) of the 3F2 sum in context ``mp``."""
    x = mp.mpc(x)
    a = mp.mpf(alpha)
    b = mp.mpf(beta)
    term = mp.mpc(1)
    total = mp.mpc(1)
    biggest = mp.mpf(1)
    for k in range(n):
        term = term * (k - n) * (k - x) * (n + a + b + 1 + k) / ((k - N) * (a + 1 + k) * (k + 1))
        total += term
        t = abs(term)
        if t > biggest:
            biggest = t
    return total, biggest


def hahn_Q(n: int, x, alpha: float, beta: float, N: int, ctx: PrecisionContext | None = None,
           auto: bool = True):
    """Q_n(x; alpha, beta, N) by the terminating sum, as an mpmath ``mpc``.

    With ``auto`` the precision is doubled until
    ``log2(max|term| / |result|) + GUARD_BITS <= bits``.
    """
    if n > N:
        raise ValueError(f"degree {n} exceeds family parameter N={N}")
    ctx = ctx or PrecisionContext.for_degree(n)
    bits = ctx.bits
    prev = None
    while True:
        mp = PrecisionContext(bits).mp()
        val, biggest = _hahn_sum(mp, n, x, alpha, beta, N)
        mag = abs(val)
        lost = math.inf if mag == 0 else float(mp.log(biggest / mag, 2))
        if lost + GUARD_BITS <= bits or not auto:
            return val
        if prev is not None and lost >= bits - GUARD_BITS and lost >= prev[1] + (bits - prev[0]) / 2:
            # the residue shrinks with the working precision: an exact zero
            # (e.g. odd degree at the symmetry point) rather than a small value
            return mp.mpc(0)
        if bits >= MAX_BITS:
            raise PrecisionError(
                f"Q_{n}({x}) needs ~{lost + GUARD_BITS:.0f} bits of precision, cap is {MAX_BITS}")
        prev = (bits, lost)
        need = 2 * bits if mag == 0 else lost + GUARD_BITS
        bits = min(MAX_BITS, max(2 * bits, int(need) + 64))


def hahn_Q_recurrence(n: int, x, alpha: float, beta: float, N: int,
                      ctx: PrecisionContext | None = None):
    """Q_n by the standard three-term recurrence in the degree.

    -x Q_k = A_k Q_{k+1} - (A_k + C_k) Q_k + C_k Q_{k-1}
    """
    if n > N:
        raise ValueError(f"degree {n} exceeds family parameter N={N}")
    ctx = ctx or PrecisionContext.for_degree(n)
    mp = ctx.mp()
    x = mp.mpc(x)
    a = mp.mpf(alpha)
    b = mp.mpf(beta)
    q_prev = mp.mpc(1)
    if n == 0:
        return q_prev
    q = 1 - (a + b + 2) * x / (N * (a + 1))
    for k in range(1, n):
        s = 2 * k + a + b
        A = (k + a + b + 1) * (k + a + 1) * (N - k) / ((s + 1) * (s + 2))
        C = k * (k + a + b + N + 1) * (k + b) / (s * (s + 1))
        q_next = ((A + C) * q - x * q - C * q_prev) / A
        q_prev, q = q, q_next
    return q


def eval_Q_exact(p: HahnParams, x, ctx: PrecisionContext | None = None):
    """Q_n(x; alpha, beta, bigN - 1)."""
    return hahn_Q(p.n, x, p.alpha, p.beta, p.hahn_N, ctx)


# -- weights, normalization ----------------------------------------------------

def log_rho(alpha, beta, N, x, mp=None):
    """log of (alpha+1)_x/x! * (beta+1)_{N-x}/(N-x)!."""
    if not (isinstance(x, (int, np.integer)) and 0 <= x <= N):
        raise ValueError(f"weight needs an integer node 0 <= x <= {N}, got {x}")
    if mp is None:
        lg = math.lgamma
        return (lg(alpha + 1 + x) - lg(alpha + 1) - lg(x + 1)
                + lg(beta + 1 + N - x) - lg(beta + 1) - lg(N - x + 1))
    a, b = mp.mpf(alpha), mp.mpf(beta)
    lg = mp.loggamma
    return (lg(a + 1 + x) - lg(a + 1) - lg(x + 1)
            + lg(b + 1 + N - x) - lg(b + 1) - lg(N - x + 1))


def eval_weight_rho(alpha: float, beta: float, N: int, x: int) -> float:
    return math.exp(log_rho(alpha, beta, N, x))


def eval_w_rescaled(p: HahnParams, z) -> complex:
    """The rescaled weight w(z) as a Gamma ratio."""
    N = p.bigN
    z = complex(z)
    args = (N * z + p.alpha + 0.5, N * (1 - z) + p.beta + 0.5, N * z + 0.5, N * (1 - z) + 0.5)
    for t in args:
        if t.imag == 0 and t.real <= 0 and t.real == round(t.real):
            raise ValueError(f"w(z) is singular at z={z}: Gamma pole at {t.real}")
    lw = (loggamma(args[0]) + loggamma(args[1]) - loggamma(args[2]) - loggamma(args[3])
          - (p.alpha + p.beta) * math.log(N))
    return complex(np.exp(lw))


def leading_coeff(p: HahnParams, ctx: PrecisionContext | None = None):
    """(log|k_{N,n}|, sign) for k = N^n (n+a+b+1)_n / ((a+1)_n (1-N)_n)."""
    n, N, a, b = p.n, p.bigN, p.alpha, p.beta
    if n >= N:
        raise ValueError("(1-N)_n vanishes for n >= N: leading coefficient undefined")
    if n == 0:
        return 0.0, 1
    if ctx is None:
        lg = math.lgamma
        logk = (n * math.log(N) + lg(2 * n + a + b + 1) - lg(n + a + b + 1)
                - lg(a + 1 + n) + lg(a + 1) - lg(N) + lg(N - n))
        return logk, (-1) ** n
    mp = ctx.mp()
    k = _leading_coeff_mp(p, mp)
    return float(mp.log(abs(k))), (1 if k > 0 else -1)


def _leading_coeff_mp(p: HahnParams, mp):
    n, N = p.n, p.bigN
    a, b = mp.mpf(p.alpha), mp.mpf(p.beta)
    k = mp.mpf(N) ** n
    for j in range(n):
        k = k * (n + a + b + 1 + j) / ((a + 1 + j) * (1 - N + j))
    return k


def eval_P_exact(p: HahnParams, z, ctx: PrecisionContext | None = None):
    """P_{N,n}(z) = Q_n(N z - 1/2; alpha, beta, N - 1)."""
    ctx = ctx or PrecisionContext.for_degree(p.n)
    mp = ctx.mp()
    x = mp.mpc(z) * p.bigN - mp.mpf(1) / 2
    return hahn_Q(p.n, x, p.alpha, p.beta, p.hahn_N, ctx)


def eval_monic_exact(p: HahnParams, z, ctx: PrecisionContext | None = None):
    """The monic polynomial pi_{N,n}(z) = P_{N,n}(z) / k_{N,n} as an mpmath ``mpc``."""
    ctx = ctx or PrecisionContext.for_degree(p.n)
    P = eval_P_exact(p, z, ctx)
    if p.n == 0:
        return P
    mp = PrecisionContext(max(ctx.bits, default_bits(p.n))).mp()
    return P / _leading_coeff_mp(p, mp)


def h_closed_form(alpha, beta, N, n, mp):
    """h_{N,n} = sum_k Q_n(k)^2 rho(k), closed form evaluated through loggamma."""
    a, b = mp.mpf(alpha), mp.mpf(beta)
    lg = mp.loggamma
    if n == 0:
        # (a+b+1)_{N+1} / (a+b+1) = (a+b+2)_N
        lead = lg(a + b + 2 + N) - lg(a + b + 2)
    else:
        lead = lg(n + a + b + 1 + N + 1) - lg(n + a + b + 1) - mp.log(2 * n + a + b + 1)
    logh = (lead + lg(b + 1 + n) - lg(b + 1) + lg(n + 1) + lg(N - n + 1)
            - lg(a + 1 + n) + lg(a + 1) - 2 * lg(N + 1))
    return mp.exp(logh)


def orthogonality_matrix(alpha: float, beta: float, N: int, n_max: int,
                         ctx: PrecisionContext | None = None):
    """Gram matrix G[n][m] = sum_{k=0}^{N} Q_n(k) Q_m(k) rho(k), entries as mpf."""
    if n_max > N:
        raise ValueError(f"n_max={n_max} exceeds N={N}")
    ctx = ctx or PrecisionContext(256)
    mp = ctx.mp()
    rho = [mp.exp(log_rho(alpha, beta, N, k, mp)) for k in range(N + 1)]
    Q = [[hahn_Q(n, k, alpha, beta, N, ctx).real for k in range(N + 1)] for n in range(n_max + 1)]
    G = [[mp.mpf(0)] * (n_max + 1) for _ in range(n_max + 1)]
    for i in range(n_max + 1):
        for j in range(i, n_max + 1):
            s = mp.fsum(Q[i][k] * Q[j][k] * rho[k] for k in range(N + 1))
            G[i][j] = G[j][i] = s
    return G
