"""Principal branch W0 of the Lambert W function on the real axis.

Initial guesses follow Corless et al., "On the Lambert W function" (1996):
a branch-point series near -1/e, ``log1p`` in the middle range and the
asymptotic ``L1 - L2 + L2/L1`` expansion for large arguments.  Halley's
iteration then refines to machine precision.
"""

from __future__ import annotations

import math

import numpy as np

INV_E = math.exp(-1.0)
BRANCH_POINT = -INV_E
# inputs this close below -1/e are treated as rounding noise and clamped
CLAMP_TOL = 1e-15
MAX_ITERS = 50
STEP_TOL = 1e-14


def _guess(z: float) -> float:
    if z < -0.25:
        p = math.sqrt(2.0 * (math.e * z + 1.0))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    if z < 3.0:
        return math.log1p(z) * (1.0 - 0.15 * math.log1p(z)) if z > 0 else z * (1.0 - z)
    l1 = math.log(z)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def _w0_scalar(z: float) -> float:
    if math.isnan(z):
        return math.nan
    if z < BRANCH_POINT - CLAMP_TOL:
        raise ValueError(f"w0 argument {z!r} below -1/e")
    if z <= BRANCH_POINT:
        return -1.0
    if z == 0.0:
        return 0.0
    if math.isinf(z):
        return math.inf
    w = _guess(z)
    for _ in range(MAX_ITERS):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        step = f / denom
        w -= step
        if abs(step) <= STEP_TOL * (1.0 + abs(w)):
            break
    return max(w, -1.0)


def _w0_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if np.any(z < BRANCH_POINT - CLAMP_TOL):
        raise ValueError("w0 argument below -1/e")
    out = np.empty_like(z)
    branch = z <= BRANCH_POINT
    zero = z == 0.0
    inf = np.isinf(z)
    active = ~(branch | zero | inf | np.isnan(z))
    out[branch] = -1.0
    out[zero] = 0.0
    out[inf] = np.inf
    out[np.isnan(z)] = np.nan

    za = z[active]
    w = np.empty_like(za)
    near = za < -0.25
    mid = (~near) & (za < 3.0)
    far = za >= 3.0
    p = np.sqrt(2.0 * (np.e * za[near] + 1.0))
    w[near] = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    lm = np.log1p(za[mid])
    w[mid] = np.where(za[mid] > 0, lm * (1.0 - 0.15 * lm), za[mid] * (1.0 - za[mid]))
    l1 = np.log(za[far])
    l2 = np.log(l1)
    w[far] = l1 - l2 + l2 / l1

    todo = np.ones(za.shape, dtype=bool)
    for _ in range(MAX_ITERS):
        if not todo.any():
            break
        wt = w[todo]
        ew = np.exp(wt)
        f = wt * ew - za[todo]
        wp1 = wt + 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = ew * wp1 - (wt + 2.0) * f / (2.0 * wp1)
            step = np.where((wp1 != 0.0) & (denom != 0.0), f / denom, 0.0)
        wt = wt - step
        w[todo] = wt
        done = np.abs(step) <= STEP_TOL * (1.0 + np.abs(wt))
        idx = np.flatnonzero(todo)
        todo[idx[done]] = False
    out[active] = np.maximum(w, -1.0)
    return out


def w0(z):
    """Evaluate W0(z) for real ``z >= -1/e``.

    Accepts a scalar (returns ``float``) or an array (returns ``ndarray``).
    Raises ``ValueError`` for arguments more than 1e-15 below -1/e.
    """
    if isinstance(z, float) or np.ndim(z) == 0:
        return _w0_scalar(float(z))
    return _w0_array(z)
