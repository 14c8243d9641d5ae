"""Seed scan, level-curve tracking and Newton refinement of the zeros.

The pipeline mirrors how the zeros are actually organized: every zero in
the upper half-plane is connected to exactly one height t on the scan
line sigma = -100 where Re R vanishes with Im R < 0 (a seed).  Walking
the Re R = 0 level curve from the seed toward increasing sigma leads
into the zero's neighborhood, and Newton iteration finishes the job.

Not every Im R < 0 crossing of the scan line is a seed: below the first
genuine seed the same signature appears on curves that terminate in the
trivial zeros on the negative real axis (or dip below it).  The only
reliable classifier is the track itself, so the scan tracks every
candidate and keeps those whose curve lands at gamma > 0.

Tracking uses the fast scaled-double engine throughout; certified
arbitrary-precision arithmetic enters at the final Newton stage.  Two
known failure modes of naive curve following are handled explicitly:

* near-tangent steps can jump onto the reversed branch at a sharp fold,
  so any step turning by more than the allowed angle is rejected and
  retried shorter;
* two neighboring tracks can land on the same zero.  Colliding (or
  lost) tracks are re-run at tighter step ceilings, which in every
  observed case separates them; the ladder of settings is fixed so runs
  are reproducible.
"""
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath as mp

from ._engine import eval_r_fast
from .errors import BasinError, DivergenceError, RunawayError, TrackingError
from .numerics import PrecisionContext
from .rfunc import _eval_r_pair
from .stats import predicted_n

# (hmax, turn_min, h0) from loose to tight; later rungs only run for
# tracks that got lost or collided at the previous rung
_LADDER = ((0.8, 0.2, 0.1), (0.25, 0.5, 0.05), (0.1, 0.7, 0.02))

_GAMMA_KEEP = 1e-3     # landings below this height count as trivial-related


@dataclass(frozen=True)
class Seed:
    """Height t on the scan line where Re R = 0 with Im R < 0."""
    ordinal: int
    t: float


@dataclass(frozen=True)
class Zero:
    """One zero rho = beta + i gamma with its accuracy certificate."""
    ordinal: int
    beta: object       # mpf
    gamma: object      # mpf
    digits: int        # certified decimal digits, |R/R'| < 10^(-digits)
    seed_t: float = float("nan")


@dataclass
class ZeroSet:
    """Zeros inside the horizon in seed order, plus the stragglers above it."""
    zeros: list
    t_max: float
    sigma_scan: float = -100.0
    beyond: list = field(default_factory=list)
    rank_deviation: int = 0

    def __post_init__(self):
        for i, z in enumerate(self.zeros, 1):
            if z.ordinal != i:
                raise ValueError(f"ordinals must be contiguous from 1, got {z.ordinal} at {i}")
        order = sorted(range(len(self.zeros)), key=lambda i: self.zeros[i].gamma)
        self.rank_deviation = max((abs(pos - i) for pos, i in enumerate(order)), default=0)

    def __len__(self):
        return len(self.zeros)


@dataclass
class CompletenessReport:
    r_values: list
    flags: list          # (ordinal, r) with |r| > 3: suspected missed/spurious
    shift_flags: list    # ordinals where the residual level jumps by ~1
    max_rank_deviation: int

    @property
    def ok(self):
        return not self.flags and not self.shift_flags


def _scan_step(t):
    return min(1.0, math.pi / math.log(t / (2 * math.pi) + 2))


def _re_at(sigma, t):
    return eval_r_fast(sigma, t)[0].real


def _bisect_crossing(sigma, a, b, fa, tol=1e-9):
    for _ in range(60):
        c = 0.5 * (a + b)
        fc = _re_at(sigma, c)
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
        else:
            b = c
        if b - a < tol:
            break
    return 0.5 * (a + b)


def _scan_crossings(t_lo, t_hi, sigma, step_scale=1.0):
    """All Im R < 0 crossings of Re R = 0 on the scan line, in order.

    The last sample always lands beyond t_hi so that a crossing just
    under the bound is still bracketed; the overshoot crossing (at most
    one step above t_hi) is returned too, callers window as needed.
    When a single step hides two crossings (sign pattern +-+ over the
    step) the interval is rescanned at half the step.
    """
    out = []
    t = t_lo
    prev_t = prev_f = None
    while True:
        f = _re_at(sigma, t)
        if prev_f is not None and (f > 0) != (prev_f > 0):
            mid = 0.5 * (prev_t + t)
            fm = _re_at(sigma, mid)
            if (fm > 0) != (prev_f > 0) and (f > 0) != (fm > 0):
                if step_scale < 1e-3:
                    raise TrackingError(f"scan cannot separate crossings near t={mid:.6f}")
                warnings.warn(f"scan step too coarse near t={mid:.3f}, halving locally")
                out.extend(c for c in
                           _scan_crossings(prev_t + 1e-12, t, sigma, step_scale / 2)
                           if c <= t)
            else:
                a, b, fa = (prev_t, mid, prev_f) if (fm > 0) != (prev_f > 0) else (mid, t, fm)
                tc = _bisect_crossing(sigma, a, b, fa)
                if eval_r_fast(sigma, tc)[0].imag < 0:
                    out.append(tc)
        if t > t_hi:
            break
        prev_t, prev_f = t, f
        t += step_scale * _scan_step(t)
    return out


def _track_engine(t_seed, sigma, hmax, turn_min, h0):
    """Predictor-corrector walk along Re R = 0, fast engine only.

    Returns (status, point, steps) with status one of handoff, lost,
    degenerate, runaway, below_axis, maxiter.
    """
    z = complex(sigma, t_seed)
    Rm, Rpm, _, _ = eval_r_fast(z.real, z.imag)
    h = h0
    prev_dir = 1.0 + 0.0j
    first = True
    npts = 0
    for _ in range(20000):
        npts += 1
        if abs(Rm.imag) < 0.3 * abs(Rpm):
            return ("handoff", z, npts)
        if abs(Rpm) == 0:
            return ("degenerate", z, npts)
        tau = complex(Rpm.imag, Rpm.real)
        tau /= abs(tau)
        if tau.real * prev_dir.real + tau.imag * prev_dir.imag < 0:
            tau = -tau
        ok = False
        corr = 0
        zp = z
        for _attempt in range(40):
            zp = z + h * tau
            bad = not (-180.0 < zp.real < 10.0 and -5.0 < zp.imag < 1e6)
            for corr in range(6):
                if bad:
                    break
                try:
                    Rm2, Rpm2, _, _ = eval_r_fast(zp.real, zp.imag)
                except ArithmeticError:
                    bad = True
                    break
                if abs(Rpm2) == 0:
                    bad = True
                    break
                nvec = complex(Rpm2.real, -Rpm2.imag)
                nvec /= abs(nvec)
                dd = (Rpm2 * nvec).real
                if dd == 0:
                    bad = True
                    break
                step = -Rm2.real / dd
                zp = zp + nvec * step
                if not (-180.0 < zp.real < 10.0 and -5.0 < zp.imag < 1e6):
                    bad = True
                    break
                if abs(step) < 1e-9 * max(abs(zp), 1.0) or abs(Rm2.real) < 1e-6 * abs(Rm2):
                    ok = True
                    break
            if bad or abs(zp - z) == 0.0:
                ok = False
            if ok and abs(zp - z) < 3 * h + 1e-12:
                nd = (zp - z) / abs(zp - z)
                turn = nd.real * prev_dir.real + nd.imag * prev_dir.imag
                if first or turn > turn_min:
                    break
            h /= 2
            if h < 1e-10:
                return ("lost", z, npts)
            ok = False
        if not ok:
            return ("lost", z, npts)
        prev_dir = (zp - z) / abs(zp - z)
        first = False
        z = zp
        Rm, Rpm, _, _ = eval_r_fast(z.real, z.imag)
        if corr <= 2 and h < hmax:
            h *= 1.4
        if z.real > 3.0:
            return ("runaway", z, npts)
        if z.imag < -1.0:
            return ("below_axis", z, npts)
    return ("maxiter", z, npts)


def _newton_fast(z0):
    """Polish a handoff point with the fast engine, to ~1e-12."""
    z = complex(z0)
    for _ in range(60):
        Rm, Rpm, _, _ = eval_r_fast(z.real, z.imag)
        if abs(Rpm) == 0:
            break
        dz = Rm / Rpm
        z -= dz
        if abs(dz) < 1e-12:
            break
    return z


def _resolve_tracks(cands, sigma, threads=1):
    """Track all candidates; re-track collisions and losses on the ladder.

    Returns {t_candidate: (kind, payload)} where kind is "zero" (payload
    the fast-polished landing), "trivial" (landing on the real axis),
    "below_axis", or a terminal failure status.
    """
    def run(tc, rung):
        st, z, _ = _track_engine(tc, sigma, *_LADDER[rung])
        return st, z

    results = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for tc, res in zip(cands, pool.map(lambda tc: run(tc, 0), cands)):
                results[tc] = res
    else:
        for tc in cands:
            results[tc] = run(tc, 0)

    for rung in (1, 2):
        landings = {}
        for tc, (st, z) in results.items():
            if st == "handoff":
                root = _newton_fast(z)
                results[tc] = ("handoff", root)
                landings.setdefault((round(root.real, 5), round(root.imag, 5)), []).append(tc)
        redo = [tc for tc, (st, _) in results.items() if st in ("lost", "maxiter")]
        for members in landings.values():
            if len(members) > 1:
                redo.extend(members)
        if not redo:
            break
        for tc in sorted(set(redo)):
            results[tc] = run(tc, rung)

    out = {}
    for tc, (st, z) in results.items():
        if st == "handoff":
            root = _newton_fast(z)
            if root.imag > _GAMMA_KEEP:
                out[tc] = ("zero", root)
            else:
                out[tc] = ("trivial", root)
        else:
            out[tc] = (st, z)
    return out


def scan_seeds(t_lo, t_hi, ctx=None, sigma_scan=-100.0):
    """Seeds on the scan line with t in [t_lo, t_hi], ordinals from 1.

    Every Re R = 0, Im R < 0 crossing is located by sign scan plus
    bisection, then classified by tracking its curve; crossings whose
    curves terminate in the trivial zeros (or below the real axis) are
    not seeds and are dropped.
    """
    if not (0 < t_lo < t_hi):
        raise ValueError("need 0 < t_lo < t_hi")
    cands = _scan_crossings(t_lo, t_hi, sigma_scan)
    resolved = _resolve_tracks(cands, sigma_scan)
    seeds = []
    for tc in cands:
        kind, _ = resolved[tc]
        if kind == "zero":
            if tc <= t_hi:
                seeds.append(Seed(ordinal=len(seeds) + 1, t=tc))
        elif kind not in ("trivial", "below_axis", "runaway"):
            raise TrackingError(f"candidate at t={tc:.6f} unresolved after re-track ladder ({kind})")
    return seeds


def track_curve(seed, ctx=None, sigma_scan=-100.0):
    """Follow the level curve from a seed to its handoff point.

    Accepts a Seed or a bare height.  Returns the complex handoff point,
    where |Im R| < 0.3 |R'| and Newton converges quadratically.  Raises
    TrackingError if the curve is lost, RunawayError if the track leaves
    sigma = +3 without handing off.
    """
    t_seed = seed.t if isinstance(seed, Seed) else float(seed)
    last = None
    for rung in range(len(_LADDER)):
        status, z, _ = _track_engine(t_seed, sigma_scan, *_LADDER[rung])
        if status == "handoff":
            return z
        if status == "runaway":
            raise RunawayError(f"track from t={t_seed:.6f} escaped past sigma=+3 at {z}")
        if status == "below_axis":
            return z
        last = status
    raise TrackingError(f"track from t={t_seed:.6f} {last} after all re-track settings")


def refine_newton(s0, digits, ctx=None):
    """Newton-refine a point near a zero to the requested digit count.

    The start must satisfy |R/R'| < 0.5 (basin check, BasinError
    otherwise).  A fast double-precision polish runs first when the
    point allows it, then certified arbitrary-precision steps iterate
    until the step drops under 10^(-digits-2).  DivergenceError is
    raised when the step grows three times in a row.  The certificate
    recorded on the Zero comes from the final step bound.
    """
    if ctx is None:
        ctx = PrecisionContext(target_digits=digits)
    z0 = complex(s0)
    try:
        Rm, Rpm, _, _ = eval_r_fast(z0.real, z0.imag)
        if abs(Rpm) > 0 and abs(Rm / Rpm) >= 0.5:
            raise BasinError(f"start {z0} outside Newton basin, |R/R'|={abs(Rm/Rpm):.3f}")
        z0 = _newton_fast(z0)
    except ArithmeticError:
        pass   # out of engine domain, go straight to certified steps

    wp = digits + ctx.guard_digits
    with mp.workdps(wp):
        z = mp.mpc(z0)
        stop = mp.mpf(10) ** (-(digits + 2))
        prev_step = mp.inf
        grown = 0
        last = mp.inf
        for _ in range(40):
            rv, pr = _eval_r_pair(z, PrecisionContext(digits, ctx.guard_digits),
                                  rel_tol=mp.mpf(10) ** (-(digits + 6)))
            if pr == 0:
                raise DivergenceError(f"derivative vanished at {z}")
            dz = rv.value / pr
            if abs(dz) >= 0.5 and prev_step is mp.inf:
                raise BasinError(f"start {z0} outside Newton basin, |R/R'|={float(abs(dz)):.3f}")
            z -= dz
            last = abs(dz)
            if last > prev_step:
                grown += 1
                if grown >= 3:
                    raise DivergenceError(f"Newton diverging from {z0}")
            else:
                grown = 0
            prev_step = last
            if last < stop:
                break
        else:
            raise DivergenceError(f"Newton failed to reach tolerance from {z0}")
        cert = int(mp.floor(-mp.log10(last))) - 1 if last > 0 else digits + ctx.guard_digits
        return Zero(ordinal=0, beta=mp.re(z), gamma=mp.im(z),
                    digits=min(cert, wp - 5), seed_t=float("nan"))


def compute_zeros(t_max, digits=25, ctx=None, sigma_scan=-100.0, margin=60.0, threads=1):
    """Full census of the zeros with 0 < gamma <= t_max.

    Scans the seed line up to t_max + margin (tracks can land well below
    their seed, so the margin buys completeness near the horizon),
    classifies every crossing by tracking, resolves collisions on the
    re-track ladder, and Newton-refines each landing to the requested
    digits.  Zeros landing above t_max are kept aside in the returned
    set's beyond list.  Raises TrackingError if any candidate stays
    unresolved, so a returned ZeroSet always accounts for every seed.
    """
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    if ctx is None:
        ctx = PrecisionContext(target_digits=digits)
    cands = _scan_crossings(0.05, t_max + margin, sigma_scan)
    resolved = _resolve_tracks(cands, sigma_scan, threads=threads)
    bad = {tc: kind for tc, (kind, _) in resolved.items()
           if kind not in ("zero", "trivial", "below_axis", "runaway")}
    if bad:
        raise TrackingError(f"unresolved candidates after re-track ladder: {bad}")

    refined = []
    for tc in cands:
        kind, landing = resolved[tc]
        if kind != "zero":
            continue
        z = refine_newton(landing, digits, ctx)
        refined.append((tc, z))

    # the re-track ladder separates colliding tracks; a residual duplicate
    # here would mean two seeds genuinely share a zero, which breaks the
    # seed <-> zero correspondence, so it is an error not a dedupe
    sep = mp.mpf(10) ** (-digits // 2)
    by_gamma = sorted(refined, key=lambda p: p[1].gamma)
    for (ta, za), (tb, zb) in zip(by_gamma, by_gamma[1:]):
        if abs(mp.mpc(za.beta, za.gamma) - mp.mpc(zb.beta, zb.gamma)) < sep:
            raise TrackingError(
                f"seeds t={ta:.6f} and t={tb:.6f} resolve to the same zero "
                f"({float(zb.beta):.6f},{float(zb.gamma):.6f})")

    inside, beyond = [], []
    for tc, z in refined:   # refined is already in seed order
        if z.gamma <= t_max:
            inside.append(Zero(ordinal=len(inside) + 1, beta=z.beta, gamma=z.gamma,
                               digits=z.digits, seed_t=tc))
        else:
            beyond.append(Zero(ordinal=0, beta=z.beta, gamma=z.gamma,
                               digits=z.digits, seed_t=tc))
    return ZeroSet(zeros=inside, t_max=float(t_max), sigma_scan=float(sigma_scan), beyond=beyond)


def verify_completeness(zs):
    """Counting-residual audit of a zero set.

    r_n compares each ordinal against the smooth zero-count prediction at
    its height; on complete data the residuals stay inside roughly
    (-2, 2.6).  |r_n| > 3 flags a suspected missed or spurious zero, and
    a persistent level shift of about +-1 in the residuals (the
    signature of a gap: every later ordinal is off by one) is flagged
    separately even when no single residual crosses the hard threshold.
    """
    rs = []
    for z in zs.zeros:
        rs.append(float(predicted_n(float(z.gamma)) - z.ordinal))
    flags = [(i + 1, r) for i, r in enumerate(rs) if abs(r) > 3.0]
    shift_flags = []
    w = 5
    for i in range(w, len(rs) - w + 1):
        jump = sum(rs[i:i + w]) / w - sum(rs[i - w:i]) / w
        if abs(jump) >= 0.8:
            if not shift_flags or i + 1 > shift_flags[-1] + w:
                shift_flags.append(i + 1)
    return CompletenessReport(r_values=rs, flags=flags, shift_flags=shift_flags,
                              max_rank_deviation=zs.rank_deviation)
