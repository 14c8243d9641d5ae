"""Persistence: the 25-decimal zeros file, CSV series, x-ray sign grids.

The zeros file is plain text: '#' comment lines, then one zero per line
as "<beta> <gamma>" with both fields carrying a fixed number of decimal
places (25 in the canonical format).  Values are truncated toward zero,
not rounded, so the printed digits are literally correct digits.  Lines
are in ordinal order, and reading a file back reproduces every decimal
string bit for bit on rewrite.

X-ray grids store only the signs of Re and Im over a rectangle; any
plotting tool recovers the level curves as sign-change contours, which
is all the pictures need.
"""
import math
import os
import tempfile
from dataclasses import dataclass, field

import mpmath as mp

from ._engine import eval_r_fast
from .errors import CertificationError, ZeroFileError
from .zerofinder import Zero, ZeroSet

_DEFAULT_DECIMALS = 25


@dataclass(frozen=True)
class ZerosFile:
    path: str
    n_zeros: int
    decimals: int


@dataclass
class XrayGrid:
    region: tuple          # (sigma_lo, sigma_hi, t_lo, t_hi)
    sigmas: list
    ts: list
    re_sign: list          # rows (one per t), entries in {-1, 0, +1}
    im_sign: list
    weighted: bool
    poles: list = field(default_factory=list)   # (i, j) grid indices at Gamma poles


def _fixed_decimal(x, d):
    """Format an mpf with exactly d fractional digits, truncated toward zero.

    Truncation works on |x| * 10^d nudged up by 1e-9 so that a value
    that IS a d-digit decimal (e.g. one parsed from a file) lands back
    on its own digits instead of one ulp under them.
    """
    neg = mp.sign(x) < 0
    scaled = mp.floor(mp.fabs(x) * mp.mpf(10) ** d + mp.mpf("1e-9"))
    n = int(scaled)
    whole, frac = divmod(n, 10 ** d)
    return f"{'-' if neg else ''}{whole}.{frac:0{d}d}"


def write_zeros(zs, path, decimals=_DEFAULT_DECIMALS):
    """Write a zero set to a fixed-decimal text file, atomically.

    Every zero must certify at least `decimals` digits, else
    CertificationError: the format promises that the printed digits are
    correct, and a weaker certificate cannot back that promise.
    """
    short = [z.ordinal for z in zs.zeros if z.digits < decimals]
    if short:
        raise CertificationError(
            f"zeros {short[:5]}{'...' if len(short) > 5 else ''} certify fewer "
            f"than {decimals} digits")
    wp = decimals + 25
    lines = [
        f"# upper half plane zeros of R(s), seed order, {decimals} correct decimals",
        f"# t_max = {zs.t_max!r}",
        f"# sigma_scan = {zs.sigma_scan!r}",
        f"# count = {len(zs.zeros)}",
    ]
    with mp.workdps(wp):
        for z in zs.zeros:
            lines.append(f"{_fixed_decimal(z.beta, decimals)} {_fixed_decimal(z.gamma, decimals)}")
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return ZerosFile(path=path, n_zeros=len(zs.zeros), decimals=decimals)


def read_zeros(path):
    """Parse a zeros file back into a ZeroSet.

    Header metadata (t_max, sigma_scan) is honored when present and
    reconstructed from the data otherwise.  Every data line must hold
    exactly two decimal fields of one consistent fractional width;
    anything else raises ZeroFileError with the offending line number.
    """
    t_max = None
    sigma_scan = -100.0
    zeros = []
    width = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                for key in ("t_max", "sigma_scan"):
                    if body.startswith(key):
                        _, _, val = body.partition("=")
                        try:
                            num = float(val.strip())
                        except ValueError:
                            raise ZeroFileError(f"bad header value {val.strip()!r}", lineno)
                        if key == "t_max":
                            t_max = num
                        else:
                            sigma_scan = num
                continue
            parts = line.split(" ")
            if len(parts) != 2:
                raise ZeroFileError(f"expected two space-separated fields, got {len(parts)}",
                                    lineno)
            pair = []
            for fieldstr in parts:
                head, dot, fracpart = fieldstr.partition(".")
                if dot != "." or not fracpart.isdigit() or \
                        not head.lstrip("-").isdigit():
                    raise ZeroFileError(f"malformed decimal field {fieldstr!r}", lineno)
                if width is None:
                    width = len(fracpart)
                elif len(fracpart) != width:
                    raise ZeroFileError(
                        f"field {fieldstr!r} has {len(fracpart)} decimals, file uses {width}",
                        lineno)
                with mp.workdps(width + 25):
                    pair.append(mp.mpf(fieldstr))
            zeros.append(Zero(ordinal=len(zeros) + 1, beta=pair[0], gamma=pair[1],
                              digits=width))
    if not zeros:
        raise ZeroFileError("file holds no zeros", 0)
    if t_max is None:
        t_max = float(max(z.gamma for z in zeros))
    return ZeroSet(zeros=zeros, t_max=t_max, sigma_scan=sigma_scan)


def emit_series(name, rows, path, header=None):
    """Write a data series as a deterministic CSV file.

    Header row first (generic x,y1,... names unless given), LF line
    endings, values at full precision: floats via repr, arbitrary
    precision values with 25 significant digits.
    """
    rows = [tuple(r) for r in rows]
    ncol = len(rows[0]) if rows else (len(header) if header else 2)
    for i, r in enumerate(rows):
        if len(r) != ncol:
            raise ValueError(f"row {i} has {len(r)} columns, expected {ncol}")
    if header is None:
        header = ["x"] + [f"y{i}" for i in range(1, ncol)]
    if len(header) != ncol:
        raise ValueError(f"header has {len(header)} names for {ncol} columns")

    def fmt(v):
        if isinstance(v, str):
            return v
        if isinstance(v, (int,)):
            return str(v)
        if isinstance(v, mp.mpf):
            return mp.nstr(v, 25)
        return repr(float(v))

    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(f"# series: {name}\n")
            fh.write(",".join(header) + "\n")
            for r in rows:
                fh.write(",".join(fmt(v) for v in r) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _sign(x):
    return 0 if x == 0 else (1 if x > 0 else -1)


def xray_grid(region, resolution, weighted=False, ctx=None):
    """Sign grid of R (or its completed weighting) over a rectangle.

    region = (sigma_lo, sigma_hi, t_lo, t_hi), resolution = points per
    axis (int, or (n_sigma, n_t)).  The weighted variant multiplies by
    pi^(-s/2) Gamma(s/2); since that factor only rotates and scales, the
    signs come from rotating the fast engine's scaled mantissa by the
    weight's phase, so no overflow is possible at any sigma.  Grid
    points landing on a Gamma pole of the weighted variant are recorded
    in poles and given sign 0.
    """
    s_lo, s_hi, t_lo, t_hi = map(float, region)
    if not (s_lo < s_hi and t_lo < t_hi):
        raise ValueError("region must satisfy sigma_lo < sigma_hi, t_lo < t_hi")
    if isinstance(resolution, int):
        nx = ny = resolution
    else:
        nx, ny = resolution
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be >= 2 per axis")
    sigmas = [s_lo + (s_hi - s_lo) * i / (nx - 1) for i in range(nx)]
    ts = [t_lo + (t_hi - t_lo) * j / (ny - 1) for j in range(ny)]
    re_rows, im_rows, poles = [], [], []
    for j, t in enumerate(ts):
        re_row, im_row = [], []
        for i, sg in enumerate(sigmas):
            if weighted and abs(t) < 1e-12:
                half = 0.5 * sg
                if half <= 1e-9 and abs(half - round(half)) < 1e-9:
                    poles.append((i, j))
                    re_row.append(0)
                    im_row.append(0)
                    continue
            Rm, _, _, _ = eval_r_fast(sg, t)
            v = Rm
            if weighted:
                w = mp.fp.loggamma(complex(0.5 * sg, 0.5 * t)) \
                    - complex(0.5 * sg, 0.5 * t) * math.log(math.pi)
                v = Rm * complex(math.cos(w.imag), math.sin(w.imag))
            re_row.append(_sign(v.real))
            im_row.append(_sign(v.imag))
        re_rows.append(re_row)
        im_rows.append(im_row)
    return XrayGrid(region=(s_lo, s_hi, t_lo, t_hi), sigmas=sigmas, ts=ts,
                    re_sign=re_rows, im_sign=im_rows, weighted=weighted, poles=poles)
