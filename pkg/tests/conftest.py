"""Shared fixtures: one desk-scale census and one tiny high-precision set.

The desk set (176 zeros below 2 pi 100, 15 requested digits) backs all
statistics tests; it is computed once per session and its wall time is
kept because one acceptance check bounds it.  The tiny set (5 zeros
below 2 pi 9 at 25 digits) backs the persistence and refinement tests
where certificate width matters more than zero count.
"""
import math
import time

import pytest

from rzeros import PrecisionContext, compute_zeros


@pytest.fixture(scope="session")
def ctx15():
    return PrecisionContext(target_digits=15)


@pytest.fixture(scope="session")
def ctx25():
    return PrecisionContext(target_digits=25)


@pytest.fixture(scope="session")
def desk():
    """(ZeroSet below 2 pi 100 at 15 digits, census wall seconds)."""
    t0 = time.time()
    zs = compute_zeros(2 * math.pi * 100, digits=15)
    return zs, time.time() - t0


@pytest.fixture(scope="session")
def tiny25():
    """ZeroSet below 2 pi 9 at 25 digits: 5 zeros, certificates >= 25."""
    return compute_zeros(2 * math.pi * 9, digits=25)
