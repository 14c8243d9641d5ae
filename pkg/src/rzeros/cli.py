"""Command line front end.

Subcommands: eval (point values of R and the identity check), zeros
(run the census and write the fixed-decimal file), verify (completeness
audit of a zeros file), stats (tables and series over a zeros file),
xray (sign grids for the pictures).

Exit codes: 0 success, 1 a verification raised flags, 2 errors.  The
RZEROS_DIGITS environment variable overrides the default precision.
"""
import argparse
import math
import os
import sys

import mpmath as mp

from . import stats as st
from .errors import RZerosError
from .numerics import PrecisionContext
from .rfunc import eval_r, eval_r_prime, identity_residual
from .store import emit_series, read_zeros, write_zeros, xray_grid
from .zerofinder import compute_zeros, verify_completeness


def _default_digits():
    try:
        d = int(os.environ.get("RZEROS_DIGITS", "25"))
    except ValueError:
        d = 25
    return d


def _check_digits(d):
    if not 15 <= d <= 50:
        raise ValueError(f"digits must lie in [15, 50], got {d}")
    return d


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rzeros",
        description="High precision evaluation and zero census of the function R(s).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate R, R' and the zeta identity residual at one point")
    p.add_argument("--s", nargs=2, required=True, metavar=("SIGMA", "T"),
                   help="point s = sigma + i t (decimal strings, full precision kept)")
    p.add_argument("--digits", type=int, default=_default_digits())

    p = sub.add_parser("zeros", help="compute all zeros up to a height and write them out")
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--digits", type=int, default=_default_digits())
    p.add_argument("--out", required=True)
    p.add_argument("--margin", type=float, default=60.0,
                   help="extra seed-line height scanned above tmax")
    p.add_argument("--seed-line", type=float, default=-100.0, dest="seed_line",
                   help="sigma of the scan line (expert use)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("verify", help="completeness audit of a zeros file")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("stats", help="statistics over a zeros file")
    ss = p.add_subparsers(dest="stat", required=True)
    for name, hlp in [
            ("nt", "ordinal vs predicted count, one row per zero"),
            ("fit", "least-squares fit of the three-term counting model"),
            ("records", "record zeros of -beta with the k+1 law"),
            ("hsum", "Siegel sum h(T) and its conjectured residual"),
            ("hist", "histogram of beta"),
            ("density", "running fraction of zeros with beta < 1/2"),
            ("annuli", "zero counts per annular section")]:
        q = ss.add_parser(name, help=hlp)
        q.add_argument("--in", dest="infile", required=True)
        q.add_argument("--out", default=None, help="write CSV here instead of printing")
        if name == "fit":
            q.add_argument("--sigma", type=float, default=1.0)
        if name == "hist":
            q.add_argument("--bins", type=int, default=26)

    p = sub.add_parser("xray", help="sign grid of R (or its completed weighting)")
    p.add_argument("--region", nargs=4, type=float, required=True,
                   metavar=("S1", "S2", "T1", "T2"))
    p.add_argument("--res", type=int, default=200)
    p.add_argument("--weighted", action="store_true",
                   help="grid of pi^(-s/2) Gamma(s/2) R(s) instead of R(s)")
    p.add_argument("--out", required=True)
    return ap


def _print_or_emit(name, header, rows, out):
    if out:
        emit_series(name, rows, out, header=header)
        print(f"wrote {out} ({len(rows)} rows)")
    else:
        print(",".join(header))
        for r in rows:
            print(",".join(str(v) for v in r))


def cmd_eval(args):
    digits = _check_digits(args.digits)
    ctx = PrecisionContext(target_digits=digits)
    with mp.workdps(digits + 10):
        s = mp.mpc(mp.mpf(args.s[0]), mp.mpf(args.s[1]))
        rv = eval_r(s, ctx)
        rp = eval_r_prime(s, ctx)
        res = identity_residual(s, ctx)
        print(f"s      = {mp.nstr(s, digits)}")
        print(f"R(s)   = {mp.nstr(rv.value, digits)}")
        print(f"R'(s)  = {mp.nstr(rp, digits)}")
        print(f"zeta identity residual |zeta - R - chi R*| = {mp.nstr(abs(res), 3)}")
    return 0


def cmd_zeros(args):
    digits = _check_digits(args.digits)
    zs = compute_zeros(args.tmax, digits=digits, sigma_scan=args.seed_line,
                       margin=args.margin, threads=max(1, args.threads))
    write_zeros(zs, args.out, decimals=min(digits, 25))
    rep = verify_completeness(zs)
    print(f"{len(zs.zeros)} zeros with 0 < gamma <= {zs.t_max}"
          f" ({len(zs.beyond)} above horizon kept aside)")
    print(f"wrote {args.out}")
    if rep.flags or rep.shift_flags:
        print(f"verification flags: {rep.flags + rep.shift_flags}")
        return 1
    r = rep.r_values
    print(f"counting residuals in ({min(r):.5f}, {max(r):.5f}), "
          f"max rank deviation {rep.max_rank_deviation}")
    return 0


def cmd_verify(args):
    zs = read_zeros(args.infile)
    rep = verify_completeness(zs)
    r = rep.r_values
    print(f"{len(zs.zeros)} zeros, horizon {zs.t_max}")
    print(f"counting residuals in ({min(r):.5f}, {max(r):.5f})")
    print(f"max seed-order/gamma-rank deviation: {rep.max_rank_deviation}")
    if rep.flags:
        print("hard flags (|r| > 3):")
        for n, val in rep.flags:
            print(f"  ordinal {n}: r = {val:.3f}")
    if rep.shift_flags:
        print(f"residual level shifts near ordinals {rep.shift_flags} "
              f"(signature of a missed or spurious zero)")
    if not rep.ok:
        return 1
    print("no flags")
    return 0


def cmd_stats(args):
    zs = read_zeros(args.infile)
    if args.stat == "nt":
        rows = [(z.ordinal, float(z.gamma), st.predicted_n(float(z.gamma)),
                 st.predicted_n(float(z.gamma)) - z.ordinal) for z in zs.zeros]
        _print_or_emit("counting residuals", ["n", "gamma", "predicted", "residual"],
                       rows, args.out)
    elif args.stat == "fit":
        fit = st.fit_abc(zs, args.sigma)
        rows = [(fit.A, fit.B, fit.C, fit.m, fit.n, fit.mu)]
        _print_or_emit("counting model fit", ["A", "B", "C", "m", "n", "mu"], rows, args.out)
    elif args.stat == "records":
        recs = st.records(zs)
        ext = st.extremal_fit_check(recs) if len(recs) >= 3 else None
        rows = [(r.k, r.n_k, r.beta, r.gamma, r.delta, int(r.nearest_ok), int(r.jump))
                for r in recs]
        _print_or_emit("records of -beta", ["k", "n", "beta", "gamma", "delta",
                                            "nearest_ok", "jump"], rows, args.out)
        if ext is not None and ext.flags:
            print(f"extremal fit residual outside (-2, 2.5) at k = {ext.flags}")
            return 1
    elif args.stat == "hsum":
        grid = sorted({float(z.gamma) for z in zs.zeros}
                      | {2 * math.pi + 0.5 * k for k in
                         range(int((zs.t_max - 2 * math.pi) / 0.5) + 1)})
        rows = [(T, st.siegel_sum(zs, T), st.h_conj_residual(zs, T))
                for T in grid if T <= zs.t_max]
        _print_or_emit("h(T) and conjecture residual", ["T", "h", "residual"], rows, args.out)
    elif args.stat == "hist":
        rows = [(k, k / args.bins, d) for k, d in st.histogram(zs, args.bins)]
        _print_or_emit("beta histogram", ["k", "left_edge", "density"], rows, args.out)
    elif args.stat == "density":
        rows = st.density_evolution(zs)
        _print_or_emit("critical line density", ["t", "delta"], rows, args.out)
    elif args.stat == "annuli":
        rows = [(a.n, a.c_right, a.c_left, a.c_mid, a.c_neg) for a in st.annulus_table(zs)]
        _print_or_emit("annular section counts", ["n", "right", "left", "mid", "neg"],
                       rows, args.out)
    return 0


def cmd_xray(args):
    grid = xray_grid(tuple(args.region), args.res, weighted=args.weighted)
    rows = []
    pole_set = set(grid.poles)
    for j, t in enumerate(grid.ts):
        for i, sg in enumerate(grid.sigmas):
            rows.append((sg, t, grid.re_sign[j][i], grid.im_sign[j][i],
                         int((i, j) in pole_set)))
    emit_series("x-ray sign grid" + (" (weighted)" if args.weighted else ""),
                rows, args.out, header=["sigma", "t", "re_sign", "im_sign", "pole"])
    print(f"wrote {args.out} ({len(grid.sigmas)}x{len(grid.ts)} points, "
          f"{len(grid.poles)} pole cells)")
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {"eval": cmd_eval, "zeros": cmd_zeros, "verify": cmd_verify,
                "stats": cmd_stats, "xray": cmd_xray}
    try:
        return handlers[args.command](args)
    except (RZerosError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
