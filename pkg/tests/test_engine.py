"""Fast scaled-double evaluator against the certified one.

The engine returns (mantissa, mantissa', scale L, error estimate) with
R = Rm e^L; on the far-left scan line e^L alone overflows a double, so
comparisons divide the certified value by e^L at extended precision and
check the mantissa directly.
"""
import mpmath as mp
import pytest

from rzeros import PrecisionContext
from rzeros._engine import eval_r_fast
from rzeros.rfunc import _eval_r_pair

_PTS = [(0.5, 14.134), (-1.0, 40.0), (2.0, 100.0), (-50.0, 200.0),
        (-100.0, 300.0), (0.0, 999.9)]


@pytest.mark.parametrize("sigma,t", _PTS)
def test_mantissa_matches_certified_value(sigma, t):
    Rm, Rpm, L, err = eval_r_fast(sigma, t)
    ctx = PrecisionContext(target_digits=20)
    rv, pr = _eval_r_pair(mp.mpc(sigma, t), ctx)
    with mp.workdps(40):
        ref_m = complex(rv.value / mp.exp(L))
        assert abs(Rm - ref_m) < 5e-7 * abs(ref_m), f"mantissa off at ({sigma},{t})"
        # logarithmic derivative is scale-free
        ours = Rpm / Rm
        ref = complex(pr / rv.value)
        assert abs(ours - ref) < 1e-5 * max(1.0, abs(ref))


def test_error_estimate_is_small_and_finite():
    for sigma, t in _PTS:
        Rm, _, L, err = eval_r_fast(sigma, t)
        assert err < 1e-6
        assert Rm == Rm and L == L   # no NaNs


def test_domain_guards():
    with pytest.raises(ArithmeticError):
        eval_r_fast(0.5, 2e7)
    with pytest.raises(ArithmeticError):
        eval_r_fast(-2e4, 10.0)


def test_crossing_shift_invariance_fast():
    sigma, t = -3.0, 77.0
    Rm0, _, L0, _ = eval_r_fast(sigma, t)
    Rm1, _, L1, _ = eval_r_fast(sigma, t, m_override=4)   # default m is 3
    with mp.workdps(30):
        v0 = mp.mpc(Rm0) * mp.exp(mp.mpf(L0))
        v1 = mp.mpc(Rm1) * mp.exp(mp.mpf(L1))
        assert abs(v0 - v1) < 1e-7 * abs(v0)
