"""Precision management and the classical special functions everything else needs.

All arithmetic runs at a working precision of target digits plus guard
digits; public results are correct to roughly 10^(-target_digits) and the
guard absorbs cancellation inside the formulas.
"""
from dataclasses import dataclass

import mpmath as mp

from .errors import PoleError


@dataclass(frozen=True)
class PrecisionContext:
    """Single knob controlling accuracy of every numeric operation.

    target_digits: decimal digits the caller wants to trust.
    guard_digits: extra working digits (minimum 10, default 30).
    """
    target_digits: int
    guard_digits: int = 30

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be a positive integer")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be at least 10")

    @property
    def working_dps(self):
        return self.target_digits + self.guard_digits

    @property
    def tol(self):
        """10^(-target_digits), evaluated in decimal semantics."""
        with mp.workdps(self.working_dps):
            return mp.mpf(10) ** (-self.target_digits)


def _is_nonpositive_int(z, eps):
    """True when z sits within eps of a real integer <= 0."""
    re, im = mp.re(z), mp.im(z)
    if abs(im) > eps:
        return False
    n = mp.nint(re)
    return n <= 0 and abs(re - n) <= eps


def log_gamma(s, ctx):
    """Principal branch of log Gamma(s).

    Raises PoleError at the non-positive integers.
    """
    with mp.workdps(ctx.working_dps):
        z = mp.mpc(s)
        if _is_nonpositive_int(z, mp.mpf(10) ** (-ctx.working_dps + 2)):
            raise PoleError(f"log_gamma pole at {z}")
        return mp.loggamma(z)


def theta(t, ctx):
    """Riemann-Siegel phase: Im log Gamma(1/4 + it/2) - (t/2) log pi.

    Computed from log_gamma directly so it is valid at every real t, and
    odd by construction (the sign is carried outside the evaluation).
    """
    with mp.workdps(ctx.working_dps):
        tt = mp.mpf(t)
        if tt == 0:
            return mp.mpf(0)
        a = abs(tt)
        val = mp.im(mp.loggamma(mp.mpf(1) / 4 + mp.mpc(0, a) / 2)) - a / 2 * mp.log(mp.pi)
        return val if tt > 0 else -val


def chi(s, ctx):
    """Functional-equation factor pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2).

    At s = 0, -2, -4, ... the Gamma(s/2) in the denominator blows up and
    the true value of chi is exactly 0, so 0 is returned.  At the odd
    positive integers s = 1, 3, 5, ... the numerator Gamma((1-s)/2) has a
    pole and PoleError is raised.
    """
    with mp.workdps(ctx.working_dps):
        z = mp.mpc(s)
        eps = mp.mpf(10) ** (-ctx.working_dps + 2)
        if _is_nonpositive_int((1 - z) / 2, eps):
            raise PoleError(f"chi pole at s={z}")
        if _is_nonpositive_int(z / 2, eps):
            return mp.mpc(0)
        return mp.power(mp.pi, z - mp.mpf(1) / 2) * mp.gamma((1 - z) / 2) / mp.gamma(z / 2)


def zeta_em(s, ctx, n_terms=None):
    """zeta(s) by Euler-Maclaurin summation.

    Truncation point N = max(10, ceil(|t|/2) + target_digits) unless
    n_terms overrides it.  Bernoulli corrections are added until a term
    drops below the working tolerance relative to the accumulated value;
    the count adapts to s instead of being fixed, which is what keeps the
    result honest at negative sigma and large t.  Raises PoleError at s=1.
    """
    dps = ctx.working_dps
    with mp.workdps(dps):
        z = mp.mpc(s)
        if z == 1:
            raise PoleError("zeta pole at s=1")
        N = n_terms if n_terms is not None else max(10, int(mp.ceil(abs(mp.im(z)) / 2)) + ctx.target_digits)
        N = max(2, int(N))
        acc = mp.mpc(0)
        for n in range(1, N):
            acc += mp.power(n, -z)
        NmS = mp.power(N, -z)
        acc += N * NmS / (z - 1) + NmS / 2
        # Correction sum: B_2k/(2k)! * z(z+1)...(z+2k-2) * N^(1-z-2k).
        poch = mp.mpc(1)
        stop = mp.mpf(10) ** (-(dps - 3))
        scale = max(abs(acc), mp.mpf(1))
        prev = None
        for k in range(1, 300):
            poch = poch * (z + 2 * k - 2) * (z + 2 * k - 3) if k > 1 else mp.mpc(z)
            term = mp.bernoulli(2 * k) / mp.factorial(2 * k) * poch * mp.power(N, 1 - z - 2 * k)
            if prev is not None and abs(term) > abs(prev):
                break  # asymptotic tail started to grow, stop before it
            acc += term
            if abs(term) < stop * scale:
                break
            prev = term
        return +acc
