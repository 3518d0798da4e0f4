import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from irs_ee.lambertw import w0


def fixed_point_w(z, w=1.0):
    """Newton form of w e^w = z written as a fixed-point map."""
    while True:
        nxt = (w * w + z * math.exp(-w)) / (w + 1.0)
        if abs(nxt * math.exp(nxt) - z) < 1e-14:
            return nxt
        w = nxt


def test_trivial_values():
    assert w0(0.0) == 0.0
    assert w0(math.e) == pytest.approx(1.0, abs=1e-12)
    assert w0(-1.0 / math.e) == -1.0


def test_omega_constant():
    ref = fixed_point_w(1.0)
    assert ref == pytest.approx(0.5671432904, abs=1e-10)
    assert w0(1.0) == pytest.approx(ref, abs=1e-14)


def test_clamp_and_domain():
    assert w0(-1.0 / math.e - 5e-16) == -1.0
    with pytest.raises(ValueError):
        w0(-1.0 / math.e - 1e-12)
    with pytest.raises(ValueError):
        w0(np.array([0.0, -0.5]))


@given(st.floats(min_value=-1.0 / math.e, max_value=1e6))
def test_defining_identity(z):
    w = w0(z)
    assert abs(w * math.exp(w) - z) <= 1e-12 * max(1.0, abs(z))
    assert w >= -1.0
    assert (w >= 0) == (z >= 0)


@given(st.floats(min_value=-1.0 / math.e, max_value=1e6), st.floats(min_value=-1.0 / math.e, max_value=1e6))
def test_monotone(a, b):
    lo, hi = sorted((a, b))
    assert w0(lo) <= w0(hi)


def test_vector_matches_scalar():
    rng = np.random.default_rng(1)
    z = np.concatenate([rng.uniform(-1 / np.e, 10, 2000), 10 ** rng.uniform(-10, 6, 2000)])
    vec = w0(z)
    scal = np.array([w0(float(v)) for v in z])
    np.testing.assert_allclose(vec, scal, rtol=1e-13, atol=1e-13)


def test_vector_special_values():
    out = w0(np.array([0.0, -1 / np.e, np.inf]))
    assert out.tolist() == [0.0, -1.0, np.inf]
