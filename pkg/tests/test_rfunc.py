"""The R evaluator against independent routes.

Three separate oracles keep this honest: Gauss-Legendre quadrature of
the raw integrand (different quadrature family than the trapezoid rule
under test), the Euler-Maclaurin zeta evaluator through the functional
identity, and closed forms for the periodic function P.
"""
import math
import random

import mpmath as mp
import pytest

from rzeros import (ConvergenceError, PoleError, PoleProximityError,
                    PrecisionContext, QuadratureParams, chi,
                    eval_path_integral, eval_r, eval_r_prime,
                    identity_residual, pfunc, theta, xi_weighted, z_function,
                    zeta_em)

_J = mp.mpc(0, 1)


def test_quadrature_params_validation():
    with pytest.raises(ValueError):
        QuadratureParams(crossing=2.5, step=0.0, halfwidth=5.0)
    with pytest.raises(ValueError):
        QuadratureParams(crossing=2.5, step=0.5, halfwidth=-1.0)
    with pytest.raises(PoleProximityError):
        QuadratureParams(crossing=3.1, step=0.5, halfwidth=5.0)
    QuadratureParams(crossing=0.5, step=0.5, halfwidth=5.0)   # centered: fine


def test_path_integral_against_gauss_legendre(ctx15):
    """Trapezoid route vs mpmath's own quadrature on the same segment."""
    s = mp.mpc(-1.5, 30.0)
    p = mp.mpf(5) / 2
    with mp.workdps(40):
        w = mp.exp(_J * mp.pi / 4)

        def g(u):
            x = p + u * w
            return mp.power(x, -s) * mp.exp(_J * mp.pi * x * x) \
                / (mp.exp(_J * mp.pi * x) - mp.exp(-_J * mp.pi * x))

        ref = -w * mp.quad(g, [-8, 0, 8])
    ours = eval_path_integral(s, QuadratureParams(crossing=2.5, step=0.5, halfwidth=8.0),
                              ctx15)
    assert abs(ours - ref) < mp.mpf("1e-19") * abs(ref)


def test_refinement_budget_exhaustion(ctx15):
    q = QuadratureParams(crossing=0.5, step=0.5, halfwidth=6.0, max_refinements=2)
    with pytest.raises(ConvergenceError):
        eval_path_integral(mp.mpc(0.5, 20.0), q, ctx15, rel_tol=mp.mpf("1e-30"))


def test_r_vanishes_at_first_trivial_zeros(ctx15):
    for s in (-2.0, -4.0):
        rv = eval_r(mp.mpc(s, 0), ctx15)
        assert abs(rv.value) < mp.mpf("1e-15")


def test_identity_residual_scattered(ctx15):
    for sg, t in ((0.5, 14.1), (-2.5, 81.0), (2.0, 33.3), (0.0, 3.0)):
        res = identity_residual(mp.mpc(sg, t), ctx15)
        assert res < mp.mpf("1e-15"), f"residual {mp.nstr(res, 3)} at ({sg},{t})"


def test_identity_residual_hits_chi_pole(ctx15):
    with pytest.raises(PoleError):
        identity_residual(mp.mpc(3, 0), ctx15)


def test_crossing_shift_invariance(ctx15):
    """R must not depend on where the contour crosses the real axis."""
    rng = random.Random(41)
    for _ in range(6):
        s = mp.mpc(rng.uniform(-3, 2), rng.uniform(8, 120))
        m = int(math.floor(math.sqrt(float(mp.im(s)) / (2 * math.pi))))
        base = eval_r(s, ctx15).value
        for shift in (-1, 1):
            if m + shift < 0:
                continue
            moved = eval_r(s, ctx15, m_override=m + shift).value
            assert abs(moved - base) < mp.mpf("1e-13") * max(1, abs(base))


def test_z_function_is_real_zeta_on_the_line(ctx15):
    """2 Re(e^{i theta} R) must equal e^{i theta} zeta(1/2+it) (which is real)."""
    for t in (14.0, 25.0, 100.5):
        zv = z_function(t, ctx15)
        with mp.workdps(ctx15.working_dps):
            w = mp.exp(_J * theta(t, ctx15)) * zeta_em(mp.mpc(0.5, t), ctx15)
            assert abs(mp.im(w)) < mp.mpf("1e-15")
            assert abs(zv - mp.re(w)) < mp.mpf("1e-14") * max(1, abs(w))


def test_r_prime_against_central_difference(ctx25):
    s = mp.mpc(0.3, 44.0)
    with mp.workdps(60):
        h = mp.mpf("1e-12")
        num = (eval_r(s + h, ctx25).value - eval_r(s - h, ctx25).value) / (2 * h)
        assert abs(eval_r_prime(s, ctx25) - num) < mp.mpf("1e-9") * max(1, abs(num))


def test_xi_weighted_poles_and_sign_change(ctx15):
    for s in (0.0, -2.0, -6.0):
        with pytest.raises(PoleError):
            xi_weighted(mp.mpc(s, 0), ctx15)
    # the real part flips sign exactly at the ordinates of the zeta zeros;
    # first one sits between 13.5 and 14.8
    lo = mp.re(xi_weighted(mp.mpc(0.5, 13.5), ctx15))
    hi = mp.re(xi_weighted(mp.mpc(0.5, 14.8), ctx15))
    assert lo < 0 < hi
    assert mp.re(xi_weighted(mp.mpc(0.5, 10.0), ctx15)) < 0


def test_pfunc_zeros_periodicity_and_parity():
    assert abs(pfunc(0.0)) < 1e-10
    assert abs(pfunc(0.5)) < 1e-10
    assert abs(pfunc(3.0)) < 1e-10
    rng = random.Random(11)
    for _ in range(40):
        x = rng.uniform(-3, 3)
        assert abs(pfunc(x + 1) - pfunc(x)) < 1e-9
        assert abs(pfunc(-x) + pfunc(x)) < 1e-9


def test_pfunc_quarter_value_and_mp_route_agree():
    with mp.workdps(30):
        target = float(2 * mp.catalan)
    assert abs(pfunc(0.25) - target) < 1e-10
    for x in (0.17, 0.25, 0.81):
        assert abs(pfunc(x, tol=1e-8) - pfunc(x, tol=1e-13)) < 1e-8


def test_chi_consistency_inside_identity(ctx15):
    """chi from the evaluator agrees with the zeta ratio where zeta is safe."""
    with mp.workdps(45):
        s = mp.mpc(0.3, 18.0)
        ratio = zeta_em(s, ctx15) - eval_r(s, ctx15).value
        other = chi(s, ctx15) * mp.conj(eval_r(1 - mp.conj(s), ctx15).value)
        assert abs(ratio - other) < mp.mpf("1e-14") * max(1, abs(other))
