"""Worst-case SNR / energy-efficiency evaluation and the feasibility test.

The helpers taking ``(f, count)`` are the single arithmetic path for every
objective value in the package; the activation-based functions and the
element selector both go through them, so equal inputs give bit-identical
floats regardless of which module computed them.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .core import ChannelAmplitudes, SystemParams, all_on

LN2 = math.log(2.0)


# ─── scalar kernels on (f, count) ────────────────────────────────


def snr_coefficient(f: float, count: int, ch: ChannelAmplitudes, params: SystemParams) -> float:
    """u = (f - g)^2 / sigma^2 for an element set with amplitude sum ``f``."""
    d = f - ch.xi * math.sqrt(1 + count)
    return d * d / params.noise_power


def circuit_power(count: int, params: SystemParams) -> float:
    """v: consumption not scaling with the transmit power."""
    return params.p_delta * count + params.p_fix


def prefix_snr_coefficient(k: int, ch: ChannelAmplitudes, params: SystemParams) -> float:
    """u of the k strongest elements; equals ``u_val`` on that activation."""
    return snr_coefficient(ch.prefix_f[k], k, ch, params)


@lru_cache(maxsize=256)
def count_tables(ch: ChannelAmplitudes, params: SystemParams) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """``(u, v)`` of the k strongest elements for k = 0..N."""
    n = ch.n_elements
    u = tuple(prefix_snr_coefficient(k, ch, params) for k in range(n + 1))
    v = tuple(circuit_power(k, params) for k in range(n + 1))
    return u, v


def ee_from(snr: float, p_tot: float) -> float:
    return math.log1p(snr) / LN2 / p_tot


def ee_count(p_num: float, p_den: float, u: float, count: int, params: SystemParams) -> float:
    """log2(1 + u p_num) / P_tot(p_den) for an element set with ``count`` on."""
    return ee_from(u * p_num, p_den / params.amp_efficiency + circuit_power(count, params))


# ─── activation-based API ────────────────────────────────────────


def f_val(ch: ChannelAmplitudes, x: np.ndarray) -> float:
    x = np.asarray(x)
    sel = ch.alpha_hat[1:][x.astype(bool)] if x.size else ()
    return math.fsum([float(ch.alpha_hat[0]), *np.asarray(sel, dtype=float).tolist()])


def g_val(ch: ChannelAmplitudes, x: np.ndarray) -> float:
    return ch.xi * math.sqrt(1 + int(np.sum(x)))


def u_val(ch: ChannelAmplitudes, x: np.ndarray, params: SystemParams) -> float:
    return snr_coefficient(f_val(ch, x), int(np.sum(x)), ch, params)


def v_val(x: np.ndarray, params: SystemParams) -> float:
    return circuit_power(int(np.sum(x)), params)


def worst_case_snr(p: float, ch: ChannelAmplitudes, x: np.ndarray, params: SystemParams) -> float:
    return u_val(ch, x, params) * p


def total_power(p: float, x: np.ndarray, params: SystemParams) -> float:
    return p / params.amp_efficiency + v_val(x, params)


def worst_case_ee(p: float, ch: ChannelAmplitudes, x: np.ndarray, params: SystemParams) -> float:
    return ee_count(p, p, u_val(ch, x, params), int(np.sum(x)), params)


def bound_objective(
    p_num: float, p_den: float, ch: ChannelAmplitudes, x: np.ndarray, params: SystemParams
) -> float:
    """EE with the SNR evaluated at ``p_num`` and the consumption at ``p_den``."""
    return ee_count(p_num, p_den, u_val(ch, x, params), int(np.sum(x)), params)


def is_feasible(p_u: float, ch: ChannelAmplitudes, params: SystemParams) -> bool:
    """Whether any (p, x) with p <= p_u meets the SNR requirement.

    The worst-case SNR is nondecreasing in p and in every x_n, so it is
    enough to test p_u with all elements on.
    """
    n = ch.n_elements
    return prefix_snr_coefficient(n, ch, params) * p_u >= params.gamma_min


def ee_upper_bound(ch: ChannelAmplitudes, params: SystemParams) -> float:
    """P_fix^-1 log2(1 + gamma_w(p_max, 1_N)), valid for every feasible point."""
    snr = worst_case_snr(params.p_max, ch, all_on(ch.n_elements), params)
    return math.log1p(snr) / LN2 / params.p_fix


def gap_constant(ch: ChannelAmplitudes, params: SystemParams) -> float:
    """Lipschitz constant M of the upper bound in the interval length."""
    return ee_upper_bound(ch, params) / params.amp_efficiency / params.p_fix
