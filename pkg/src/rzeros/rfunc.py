"""Evaluation of R(s) from the saddle-crossing integral representation.

R(s) is the sum of a short Dirichlet main sum (m = floor(sqrt(t/2pi))
terms) and a line integral of x^(-s) e^(pi i x^2) / (e^(pi i x) - e^(-pi i x))
taken through the crossing point p = m + 1/2 in the direction e^(i pi/4).
The contour is traversed descending (upper right to lower left), which
fixes the global sign; that orientation was calibrated once against the
critical-line relation Z(t) = 2 Re(e^(i theta) R(1/2 + it)) and is locked
in by the tests.

The trapezoid rule on this integrand converges geometrically in the step
halving (the nearest poles sit 0.3536 off the line), and each halving
reuses every already computed node, so refinement costs the same as a
fresh evaluation at the final step.
"""
import math
from dataclasses import dataclass

import mpmath as mp

from .errors import ConvergenceError, PoleError, PoleProximityError
from .numerics import chi, theta, zeta_em

_J = mp.mpc(0, 1)

# zeta(2k) as floats for the fast Clausen series used by pfunc
_ZETA_EVEN = None


@dataclass(frozen=True)
class QuadratureParams:
    """Geometry and refinement budget of the integration line.

    crossing: point p where the line meets the real axis.
    step: initial trapezoid spacing in the line parameter u.
    halfwidth: truncation U, the integral runs over |u| <= U.
    max_refinements: how many step halvings may be spent.
    """
    crossing: float
    step: float
    halfwidth: float
    max_refinements: int = 12

    def __post_init__(self):
        if self.step <= 0 or self.halfwidth <= 0 or self.max_refinements < 1:
            raise ValueError("step, halfwidth and max_refinements must be positive")
        frac = abs(self.crossing - round(self.crossing))
        if frac < 0.25:
            raise PoleProximityError(
                f"crossing {self.crossing} is within 0.25 of an integrand pole")


@dataclass(frozen=True)
class RValue:
    """R(s) with its quadrature error estimate and main-sum length."""
    value: object          # mpc
    err_estimate: float    # relative, from the last step halving
    main_terms: int


def _extra_guard(sigma, m):
    """Extra working digits needed against cancellation at large |sigma|."""
    if sigma < 0:
        return int(math.ceil(0.35 * (-sigma) * math.log10(m + 2)))
    return int(math.ceil(0.15 * sigma))


def _halfwidth_for(sigma, t, p, dps, floor_u):
    """Truncation point from a float model of the integrand's log-magnitude."""
    def logg(u):
        xr = p + u / math.sqrt(2)
        xi = u / math.sqrt(2)
        ax = math.hypot(xr, xi)
        if ax == 0:
            return 1e9
        return (-sigma * math.log(ax) + t * math.atan2(xi, xr)
                - math.pi * (math.sqrt(2) * p * u + u * u)
                - math.pi * abs(u) / math.sqrt(2) + math.log(2))

    peak = max(logg(0.1 * k) for k in range(-400, 401))
    cut = peak - (dps + 8) * math.log(10)
    U = floor_u
    while U < 60 and (logg(U) > cut or logg(-U) > cut):
        U *= 1.25
    return U


def _quad_core(s, p, U, h0, max_ref, qtol):
    """Trapezoid with step halving and node reuse; dual accumulation.

    Returns (I, Ip, rel_change, converged): the integral of g, the
    integral of -log(x) g (the s-derivative), the last relative change
    and whether the tolerance was met.  Runs at the ambient mp precision.
    """
    w = mp.exp(_J * mp.pi / 4)

    def g_pair(u):
        x = p + u * w
        lx = mp.log(x)
        v = mp.exp(-s * lx + _J * mp.pi * x * x) / (2 * _J * mp.sinpi(x))
        return v, -lx * v

    h = mp.mpf(h0)
    n0 = int(mp.ceil(U / h))
    tot = mp.mpc(0)
    totp = mp.mpc(0)
    for k in range(-n0, n0 + 1):
        v, vp = g_pair(k * h)
        tot += v
        totp += vp
    I, Ip = tot * h, totp * h
    change = mp.inf
    for _lev in range(max_ref):
        h2 = h / 2
        n2 = int(mp.ceil(U / h2))
        lo = -n2 if n2 % 2 == 1 else -n2 + 1
        for k in range(lo, n2 + 1, 2):   # odd multiples only: the new nodes
            v, vp = g_pair(k * h2)
            tot += v
            totp += vp
        I_prev = I
        I, Ip, h = tot * h2, totp * h2, h2
        change = abs(I - I_prev) / max(1, abs(I))
        if change < qtol:
            return I, Ip, change, True
    return I, Ip, change, False


def eval_path_integral(s, q, ctx, rel_tol=None):
    """Integral along x = q.crossing + u e^(i pi/4), |u| <= q.halfwidth.

    Step-halved trapezoid until two successive levels agree within the
    tolerance; raises ConvergenceError when the refinement budget runs
    out first.  The descending orientation is applied here.
    """
    dps = ctx.working_dps + _extra_guard(float(mp.re(mp.mpc(s))), int(round(q.crossing - 0.5)))
    with mp.workdps(dps):
        z = mp.mpc(s)
        qtol = mp.mpf(rel_tol) if rel_tol is not None else mp.mpf(10) ** (-(ctx.target_digits + 4))
        I, _Ip, change, ok = _quad_core(z, mp.mpf(q.crossing), mp.mpf(q.halfwidth),
                                        q.step, q.max_refinements, qtol)
        if not ok:
            raise ConvergenceError(
                f"quadrature stalled at relative change {float(change):.3e} at s={z}")
        return -mp.exp(_J * mp.pi / 4) * I


def _eval_r_pair(s, ctx, rel_tol=None, m_override=None):
    """Shared implementation: returns (RValue, R') from one quadrature pass."""
    z0 = mp.mpc(s)
    sigma = float(mp.re(z0))
    t = float(mp.im(z0))
    m = int(math.floor(math.sqrt(max(t, 0.0) / (2 * math.pi)))) if m_override is None else m_override
    dps = ctx.working_dps + _extra_guard(sigma, m)
    with mp.workdps(dps):
        z = mp.mpc(s)
        p = mp.mpf(2 * m + 1) / 2
        main = mp.mpc(0)
        mainp = mp.mpc(0)
        for n in range(1, m + 1):
            term = mp.power(n, -z)
            main += term
            mainp += -mp.log(n) * term
        qtol = mp.mpf(rel_tol) if rel_tol is not None else mp.mpf(10) ** (-(ctx.target_digits + 4))
        floor_u = math.sqrt((ctx.target_digits + 5) * math.log(10) / math.pi)
        U = _halfwidth_for(sigma, t, float(p), dps, floor_u)
        I, Ip, change, ok = _quad_core(z, p, mp.mpf(U), mp.mpf("0.5"), 12, qtol)
        if not ok:
            raise ConvergenceError(
                f"quadrature stalled at relative change {float(change):.3e} at s={z}")
        w = mp.exp(_J * mp.pi / 4)
        value = main - w * I
        prime = mainp - w * Ip
        return RValue(value=value, err_estimate=float(change), main_terms=m), prime


def eval_r(s, ctx, rel_tol=None, m_override=None):
    """R(s) as an RValue.

    m = floor(sqrt(max(t,0)/2pi)) terms of the main sum plus the path
    integral through m + 1/2.  For t < 2pi the sum is empty and the
    crossing sits at 1/2.  Values below t = -1 are returned but carry no
    accuracy claim.
    """
    rv, _ = _eval_r_pair(s, ctx, rel_tol=rel_tol, m_override=m_override)
    return rv


def eval_r_prime(s, ctx, rel_tol=None):
    """dR/ds, from the same quadrature pass that produces R."""
    _, pr = _eval_r_pair(s, ctx, rel_tol=rel_tol)
    return pr


def z_function(t, ctx):
    """Hardy's Z at real t, reconstructed as 2 Re(e^(i theta(t)) R(1/2 + it))."""
    with mp.workdps(ctx.working_dps):
        th = theta(t, ctx)
        rv = eval_r(mp.mpc(mp.mpf(1) / 2, t), ctx)
        return 2 * mp.re(mp.exp(_J * th) * rv.value)


def identity_residual(s, ctx):
    """|zeta(s) - R(s) - chi(s) conj(R(1 - conj s))|, all terms in-house.

    zeta comes from the Euler-Maclaurin oracle, so this residual checks
    the evaluator against an independent route.  Computed and returned at
    working precision.
    """
    with mp.workdps(ctx.working_dps):
        z = mp.mpc(s)
        zeta_val = zeta_em(z, ctx)
        r1 = eval_r(z, ctx, rel_tol=mp.mpf(10) ** (-(ctx.target_digits + 8)))
        r2 = eval_r(1 - mp.conj(z), ctx, rel_tol=mp.mpf(10) ** (-(ctx.target_digits + 8)))
        c = chi(z, ctx)
        return abs(zeta_val - r1.value - c * mp.conj(r2.value))


def xi_weighted(s, ctx):
    """pi^(-s/2) Gamma(s/2) R(s).

    On the critical line its real part equals -Xi(t)/(1/4 + t^2), so its
    sign flips exactly at the ordinates of the zeta zeros.  Raises
    PoleError where Gamma(s/2) has a pole (s = 0, -2, -4, ...).
    """
    with mp.workdps(ctx.working_dps):
        z = mp.mpc(s)
        eps = mp.mpf(10) ** (-ctx.working_dps + 2)
        half = z / 2
        if abs(mp.im(half)) <= eps and mp.nint(mp.re(half)) <= 0 \
                and abs(mp.re(half) - mp.nint(mp.re(half))) <= eps:
            raise PoleError(f"Gamma(s/2) pole at s={z}")
        rv = eval_r(z, ctx)
        return mp.power(mp.pi, -z / 2) * mp.gamma(z / 2) * rv.value


def _zeta_even_table():
    global _ZETA_EVEN
    if _ZETA_EVEN is None:
        with mp.workdps(30):
            _ZETA_EVEN = [float(mp.zeta(2 * k)) for k in range(1, 31)]
    return _ZETA_EVEN


def _clausen2(theta_arg):
    """Cl_2(theta) for float theta: odd, 2pi-periodic, series valid on [-pi, pi]."""
    r = theta_arg - 2 * math.pi * round(theta_arg / (2 * math.pi))
    if r == 0.0:
        return 0.0
    sign = 1.0
    if r < 0:
        r, sign = -r, -1.0
    acc = r - r * math.log(r)
    frac = r / (2 * math.pi)
    pw = frac * frac
    term_base = r
    for k, z2k in enumerate(_zeta_even_table(), start=1):
        term = z2k / (k * (2 * k + 1)) * term_base * pw
        acc += term
        pw *= frac * frac
        if abs(term) < 1e-18:
            break
    return sign * acc


def pfunc(x, tol=1e-10):
    """Periodic correction P(x), odd with period 1.

    Defined by the pair of sine series
        sum 2 sin(2 pi n x)/n^2  -  sum (-1)^n sin(4 pi n x)/n^2,
    but evaluated through the Clausen function, P(x) = 2 Cl2(2 pi x)
    - Cl2(4 pi x + pi), because the raw partial sums converge like 1/N
    and would need ~10^8 terms at tight tolerances.  Both forms agree
    termwise; the tests pin the correspondence against direct summation
    and the closed value P(1/4) = 2 * Catalan.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if tol >= 1e-12:
        return 2.0 * _clausen2(2 * math.pi * x) - _clausen2(4 * math.pi * x + math.pi)
    # rare high-accuracy path: same series in mpmath
    dps = int(-math.log10(tol)) + 10
    with mp.workdps(dps):
        xx = mp.mpf(x)
        return float(2 * _clausen2_mp(2 * mp.pi * xx) - _clausen2_mp(4 * mp.pi * xx + mp.pi))


def _clausen2_mp(theta_arg):
    r = theta_arg - 2 * mp.pi * mp.nint(theta_arg / (2 * mp.pi))
    if r == 0:
        return mp.mpf(0)
    sign = mp.mpf(1)
    if r < 0:
        r, sign = -r, mp.mpf(-1)
    acc = r - r * mp.log(r)
    frac = r / (2 * mp.pi)
    pw = frac * frac
    tol = mp.mpf(10) ** (-(mp.mp.dps - 2))
    for k in range(1, 400):
        term = mp.zeta(2 * k) / (k * (2 * k + 1)) * r * pw
        acc += term
        pw *= frac * frac
        if abs(term) < tol:
            break
    return sign * acc
