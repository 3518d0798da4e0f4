"""Closed-form EE-optimal transmit power for a fixed activation vector."""

from __future__ import annotations

import math

import numpy as np

from .core import ChannelAmplitudes, SystemParams
from .lambertw import BRANCH_POINT, w0
from .model import u_val


def min_power_for_snr(u: float, gamma_min: float) -> float:
    """Smallest float q with ``u * q >= gamma_min`` (as the model computes it)."""
    q = gamma_min / u
    while u * q < gamma_min:
        q = math.nextafter(q, math.inf)
    while q > 0.0 and u * math.nextafter(q, 0.0) >= gamma_min:
        q = math.nextafter(q, 0.0)
    return q


def p_lower_effective(p_l: float, ch: ChannelAmplitudes, x: np.ndarray, params: SystemParams) -> float:
    """Lower power limit tightened so the SNR requirement holds."""
    return max(min_power_for_snr(u_val(ch, x, params), params.gamma_min), p_l)


def unconstrained_optimal_power(u: float, v: float, eta: float) -> float:
    """Maximizer over p >= 0 of log2(1 + u p) / (p/eta + v).

    Setting the derivative to zero gives y e^y = (u v eta - 1)/e with
    y = log((1 + u p)/e); the root is on the principal branch since y >= -1.
    """
    delta = (u * v * eta - 1.0) / math.e
    assert delta >= BRANCH_POINT, delta
    return math.expm1(w0(delta) + 1.0) / u


def stationarity_residual(p: float, u: float, v: float, eta: float) -> float:
    """Numerator of dEE/dp (up to a positive factor); zero at the optimum."""
    return u * (p / eta + v) - (1.0 + u * p) / eta * math.log1p(u * p)


def optimal_power(
    p_l: float, p_u: float, ch: ChannelAmplitudes, x: np.ndarray, params: SystemParams
) -> float | None:
    """Best power in [p_l, p_u] for activation ``x`` under the SNR constraint.

    Returns ``None`` when no power in the window meets the SNR requirement.
    """
    return optimal_power_uv(p_l, p_u, u_val(ch, x, params), int(np.sum(x)), params)


def optimal_power_uv(p_l: float, p_u: float, u: float, count: int, params: SystemParams) -> float | None:
    """:func:`optimal_power` for an element set given by its ``u`` and size.

    EE is unimodal in p, so the unconstrained optimum is clamped to the window.
    """
    if u <= 0.0:
        return None
    lo = max(min_power_for_snr(u, params.gamma_min), p_l)
    if lo > p_u:
        return None
    v = params.p_delta * count + params.p_fix
    p_tilde = unconstrained_optimal_power(u, v, params.amp_efficiency)
    return min(max(lo, p_tilde), p_u)
