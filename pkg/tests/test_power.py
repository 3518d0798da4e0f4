import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from irs_ee.core import ChannelAmplitudes, SystemParams
from irs_ee.model import u_val, v_val, worst_case_ee, worst_case_snr
from irs_ee.power import (
    min_power_for_snr,
    optimal_power,
    stationarity_residual,
    unconstrained_optimal_power,
)

from conftest import random_instance


def bisect_root(u, v, eta):
    """Root of the stationarity residual by bisection; it is positive at p = 0."""
    lo, hi = 0.0, 1.0 / u
    while stationarity_residual(hi, u, v, eta) > 0:
        hi *= 2.0
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if stationarity_residual(mid, u, v, eta) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@settings(max_examples=300)
@given(
    st.floats(min_value=1e-3, max_value=1e6),
    st.floats(min_value=1e-3, max_value=10.0),
    st.floats(min_value=0.05, max_value=1.0),
)
def test_unconstrained_matches_bisection(u, v, eta):
    p = unconstrained_optimal_power(u, v, eta)
    assert p > 0
    assert p == pytest.approx(bisect_root(u, v, eta), rel=1e-9)


def test_unconstrained_small_product():
    # u v eta -> 0: the optimum behaves like sqrt(2 v / (u eta)) scaled to zero.
    p = unconstrained_optimal_power(1e-8, 1e-8, 1.0)
    assert p >= 0 and math.isfinite(p)


def test_min_power_for_snr_is_tight():
    rng = np.random.default_rng(3)
    for _ in range(2000):
        u, g = 10 ** rng.uniform(-6, 6), 10 ** rng.uniform(-6, 6)
        q = min_power_for_snr(u, g)
        assert u * q >= g
        assert u * math.nextafter(q, 0.0) < g or q == 0.0


def test_optimal_power_projection_cases():
    ch = ChannelAmplitudes([1.0, 0.5])
    x = np.array([1], dtype=np.uint8)
    params = SystemParams(1.0, 1.0, 1e-3, 1e-3, 0.1, 10.0, 1e-3, 1)
    u, v = u_val(ch, x, params), v_val(x, params)
    p_tilde = unconstrained_optimal_power(u, v, 1.0)
    # interior
    assert optimal_power(0.0, 10.0, ch, x, params) == p_tilde
    # clamped at the upper limit
    assert optimal_power(0.0, p_tilde / 2, ch, x, params) == p_tilde / 2
    # clamped at the lower limit
    assert optimal_power(2 * p_tilde, 10.0, ch, x, params) == 2 * p_tilde
    # SNR floor above the window
    tight = SystemParams(1.0, 1.0, 1e-3, 1e-3, 0.1, 10.0, u * 5.0, 1)
    assert optimal_power(0.0, 4.0, ch, x, tight) is None
    assert worst_case_snr(optimal_power(0.0, 10.0, ch, x, tight), ch, x, tight) >= tight.gamma_min


def test_optimal_power_beats_dense_grid(rng):
    for _ in range(300):
        ch, params = random_instance(rng, int(rng.integers(1, 10)))
        x = rng.integers(0, 2, ch.n_elements).astype(np.uint8)
        x[0] = 1
        p_l, p_u = sorted(rng.uniform(0, params.p_max, 2))
        p = optimal_power(p_l, p_u, ch, x, params)
        grid = np.linspace(p_l, p_u, 2001)
        feas = [q for q in grid if worst_case_snr(q, ch, x, params) >= params.gamma_min]
        if p is None:
            assert not feas
            continue
        assert p_l <= p <= p_u
        assert worst_case_snr(p, ch, x, params) >= params.gamma_min
        best = max(worst_case_ee(q, ch, x, params) for q in feas) if feas else -np.inf
        assert worst_case_ee(p, ch, x, params) >= best * (1 - 1e-12)
