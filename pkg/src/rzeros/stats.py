"""Statistics over a computed zero set.

Counting against the smooth prediction, least-squares calibration of the
three-term counting model, the record sequence of leftmost zeros with
its cube-root growth law, the Siegel sum h(T) with its conjectured
periodic correction, and the distribution summaries (histogram, running
critical-line density, annular section counts).

Everything here consumes an immutable zero set and is deterministic;
ordinals entering fits and residuals are the seed-order ordinals carried
by the set, not the gamma-rank (the two differ by at most a swap of
neighbors, which the fits cannot resolve anyway).
"""
import math
import warnings
from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, HorizonError, SingularFitError
from .rfunc import pfunc

TWO_PI = 2.0 * math.pi

# coefficient of the record growth law -beta ~ c * (gamma/2pi)^(1/3)
_EXTREMAL_C = 2.2430


@dataclass(frozen=True)
class FitResult:
    A: float
    B: float
    C: float
    m: float       # attained minimum of the quadratic objective
    n: int         # zeros entering the fit
    mu: float      # m/n, mean squared deviation


@dataclass(frozen=True)
class RecordEntry:
    k: int         # record rank, 1-based
    n_k: int       # zero ordinal
    beta: float
    gamma: float
    delta: float   # sqrt(gamma/2pi) - (k+1)
    nearest_ok: bool = True
    jump: bool = False   # delta flipped from + to - at this rank


@dataclass(frozen=True)
class AnnulusRow:
    n: int
    c_right: int   # beta in [1/2, 1)
    c_left: int    # beta < 1/2
    c_mid: int     # beta in [0, 1/2)
    c_neg: int     # beta < 0


@dataclass(frozen=True)
class ExtremalFitReport:
    residuals: list    # (k, -beta - c*(gamma/2pi)^(1/3))
    flags: list        # ranks with residual outside (-2, 2.5)

    @property
    def ok(self):
        return not self.flags


def predicted_n(T):
    """Smooth zero count below height T.

    N(T) = T/4pi log(T/2pi) - T/4pi - (1/2) sqrt(T/2pi) + 3/2; the
    square-root term is what separates this count from the usual
    critical-line one.  Valid for T > 2pi.
    """
    T = float(T)
    if T <= TWO_PI:
        raise DomainError(f"predicted_n needs T > 2*pi, got {T}")
    q = T / (4.0 * math.pi)
    return q * math.log(T / TWO_PI) - q - 0.5 * math.sqrt(T / TWO_PI) + 1.5


def fit_abc(zs, sigma_cut):
    """Least-squares fit of N(T) ~ A f1 + B f2 + C against the ordinals.

    f1 = gamma/4pi log(gamma/2pi) - gamma/4pi and f2 = sqrt(gamma/2pi);
    only zeros with beta < sigma_cut enter.  Solved through the normal
    equations in extended precision (the 3x3 system is benign; extended
    precision removes any doubt about the squared conditioning).
    """
    pts = [(float(z.gamma), z.ordinal) for z in zs.zeros if float(z.beta) < sigma_cut]
    if len(pts) < 3:
        raise DomainError(f"fit needs >= 3 zeros with beta < {sigma_cut}, have {len(pts)}")
    with mp.workdps(40):
        ata = mp.zeros(3, 3)
        aty = mp.zeros(3, 1)
        rows = []
        for g, n in pts:
            gq = mp.mpf(g) / (4 * mp.pi)
            row = (gq * mp.log(g / (2 * mp.pi)) - gq, mp.sqrt(g / (2 * mp.pi)), mp.mpf(1))
            rows.append((row, n))
            for i in range(3):
                for j in range(3):
                    ata[i, j] += row[i] * row[j]
                aty[i] += row[i] * n
        scale = ata[0, 0] * ata[1, 1] * ata[2, 2]
        if scale == 0 or abs(mp.det(ata)) < mp.mpf("1e-30") * scale:
            raise SingularFitError("normal equations are singular")
        try:
            sol = mp.lu_solve(ata, aty)
        except ZeroDivisionError as exc:
            raise SingularFitError("normal equations are singular") from exc
        m = mp.mpf(0)
        for row, n in rows:
            r = row[0] * sol[0] + row[1] * sol[1] + row[2] * sol[2] - n
            m += r * r
    return FitResult(A=float(sol[0]), B=float(sol[1]), C=float(sol[2]),
                     m=float(m), n=len(pts), mu=float(m) / len(pts))


def records(zs):
    """Running records of -beta, scanned in ordinal order.

    Each entry carries delta = sqrt(gamma/2pi) - (k+1); empirically k+1
    is the nearest integer to sqrt(gamma/2pi), checked here as a warning
    rather than a failure.  A record where delta flips from positive to
    negative is flagged as a jump (the growth law momentarily outruns
    the data there).
    """
    if not zs.zeros:
        raise DomainError("records of an empty zero set")
    out = []
    best = -math.inf
    prev_delta = None
    for z in zs.zeros:
        b = float(z.beta)
        if -b > best:
            best = -b
            k = len(out) + 1
            g = float(z.gamma)
            sq = math.sqrt(g / TWO_PI)
            delta = sq - (k + 1)
            ok = round(sq) == k + 1
            if not ok:
                warnings.warn(f"record k={k}: nearest integer to sqrt(gamma/2pi)={sq:.4f} "
                              f"is not k+1={k + 1}")
            jump = prev_delta is not None and prev_delta > 0 and delta < 0
            out.append(RecordEntry(k=k, n_k=z.ordinal, beta=b, gamma=g,
                                   delta=delta, nearest_ok=ok, jump=jump))
            prev_delta = delta
    return out


def extremal_fit_check(recs):
    """Residuals of the record betas against -beta ~ 2.2430 (gamma/2pi)^(1/3).

    The law holds loosely at the low end, so the acceptance window is
    (-2, 2.5) rather than the asymptotic (-1, 1.5); residuals outside
    the window are flagged, not fatal.
    """
    if len(recs) < 3:
        raise DomainError("extremal fit check needs >= 3 records")
    residuals = []
    flags = []
    for r in recs:
        res = -r.beta - _EXTREMAL_C * (r.gamma / TWO_PI) ** (1.0 / 3.0)
        residuals.append((r.k, res))
        if not (-2.0 < res < 2.5):
            flags.append(r.k)
    return ExtremalFitReport(residuals=residuals, flags=flags)


def siegel_sum(zs, T):
    """h(T) = -sum of beta over zeros with gamma <= T.

    Grows like T/(4pi) log 2.  T must not exceed the set's horizon,
    since zeros above it would be silently missing from the sum.
    """
    T = float(T)
    if T > zs.t_max * (1 + 1e-12):
        raise HorizonError(f"T={T} beyond zero set horizon {zs.t_max}")
    return float(-mp.fsum(z.beta for z in zs.zeros if float(z.gamma) <= T))


def h_conj_residual(zs, T, ctx=None):
    """Deviation of h(T) from its two-term asymptotic shape.

    residual = h(T) - T/(4pi) log 2 + (1/4 - P(x)/(2pi)) x,  x = sqrt(T/2pi),

    with P the periodic correction.  P enters with the minus sign: the
    stationary-phase evaluation of the arc integral behind the
    asymptotic contributes -x P(x)/(2pi), and the data agree (the
    variance of this residual drops well below the P-free one, and
    adding P instead more than triples it).
    """
    x = math.sqrt(float(T) / TWO_PI)
    base = siegel_sum(zs, T) - float(T) / (4.0 * math.pi) * math.log(2.0)
    return base + (0.25 - pfunc(x, tol=1e-8) / TWO_PI) * x


def histogram(zs, M):
    """Density histogram of the betas with M bins per unit.

    Bins are [k/M, (k+1)/M) for every integer k hit by an observed
    beta; density d(k) = a(k) M/Z with a(k) the bin count and Z the
    total, so the densities integrate to one over full coverage.
    """
    if M < 1:
        raise DomainError("histogram needs M >= 1")
    if not zs.zeros:
        raise DomainError("histogram of an empty zero set")
    counts = {}
    for z in zs.zeros:
        k = math.floor(float(z.beta) * M)
        counts[k] = counts.get(k, 0) + 1
    Z = len(zs.zeros)
    return [(k, counts.get(k, 0) * M / Z)
            for k in range(min(counts), max(counts) + 1)]


def density_evolution(zs):
    """Running fraction of zeros left of the critical line.

    delta(t) = #{gamma <= t, beta < 1/2} / #{gamma <= t}, sampled at
    every zero height in increasing gamma order.
    """
    if not zs.zeros:
        raise DomainError("density evolution of an empty zero set")
    out = []
    left = 0
    for i, z in enumerate(sorted(zs.zeros, key=lambda z: float(z.gamma)), 1):
        if float(z.beta) < 0.5:
            left += 1
        out.append((float(z.gamma), left / i))
    return out


def annulus_table(zs):
    """Counts per annular section 2pi(n-1)^2 <= gamma < 2pi n^2.

    Four beta classes per row: [1/2,1), (-inf,1/2), [0,1/2) and
    (-inf,0); the second always equals the sum of the last two.  Rows
    run over every section fully inside the horizon.
    """
    if not zs.zeros:
        raise DomainError("annulus table of an empty zero set")
    n_max = int(math.floor(math.sqrt(zs.t_max / TWO_PI)))
    rows = []
    for n in range(1, n_max + 1):
        lo, hi = TWO_PI * (n - 1) ** 2, TWO_PI * n ** 2
        sel = [float(z.beta) for z in zs.zeros if lo <= float(z.gamma) < hi]
        rows.append(AnnulusRow(
            n=n,
            c_right=sum(1 for b in sel if 0.5 <= b < 1.0),
            c_left=sum(1 for b in sel if b < 0.5),
            c_mid=sum(1 for b in sel if 0.0 <= b < 0.5),
            c_neg=sum(1 for b in sel if b < 0.0)))
    return rows
