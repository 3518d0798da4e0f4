"""Alternating optimization over transmit power and element activation.

Two ascent loops are run from the same starting point: one updates the
power first, the other the activation first.  The better end point wins.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import ChannelAmplitudes, Solution, Status, SystemParams, as_activation
from .model import count_tables, ee_count, ee_from, is_feasible, u_val, worst_case_snr
from .power import optimal_power_uv
from .select import best_count, top_k_activation

# relative slack when checking monotone ascent; covers last-ulp noise only
_ASCENT_RTOL = 1e-12


@dataclass(frozen=True)
class AoConfig:
    epsilon: float = 1e-3
    max_iters: int = 100
    init: tuple[float, np.ndarray] | None = None  # default (p_u, all on)

    def __post_init__(self) -> None:
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


class AoIterate(NamedTuple):
    loop: int  # 1: power first, 2: elements first
    iteration: int
    p: float
    count_on: int
    ee: float


class _Loop(NamedTuple):
    p: float
    count_on: int
    ee: float
    iterations: int
    capped: bool


def _check_iterate(p, u, p_l, p_u, params) -> None:
    if not (p_l <= p <= p_u):
        raise RuntimeError(f"AO iterate p={p!r} left [{p_l!r}, {p_u!r}]")
    if u * p < params.gamma_min:
        raise RuntimeError("AO iterate violates the SNR requirement")


def _ascend(loop_id, p0, k0, u0, ee0, p_l, p_u, ch, params, cfg, trace) -> _Loop:
    # After the first selection step every activation is a set of the k
    # strongest elements, so the loop carries k and reads u off the prefix sums.
    # (k0, u0) describe the start activation, which need not be such a set.
    p, k, u, ee = p0, k0, u0, ee0
    u_tab, v_tab = count_tables(ch, params)
    if trace is not None:
        trace.append(AoIterate(loop_id, 0, p, k, ee))
    for i in range(1, cfg.max_iters + 1):
        if loop_id == 1:
            p = optimal_power_uv(p_l, p_u, u, k, params)
            k, _ = best_count(p, p, ch, params)
        else:
            k, _ = best_count(p, p, ch, params)
            p = optimal_power_uv(p_l, p_u, u_tab[k], k, params)
        u = u_tab[k]
        new_ee = ee_from(u * p, p / params.amp_efficiency + v_tab[k])
        _check_iterate(p, u, p_l, p_u, params)
        if new_ee < ee - _ASCENT_RTOL * abs(ee):
            raise RuntimeError(f"AO ascent violated: {new_ee!r} < {ee!r}")
        if trace is not None:
            trace.append(AoIterate(loop_id, i, p, k, new_ee))
        converged = abs(new_ee - ee) < cfg.epsilon
        ee = new_ee
        if converged:
            return _Loop(p, k, ee, i, False)
    return _Loop(p, k, ee, cfg.max_iters, True)


def ao_solve(
    p_l: float,
    p_u: float,
    ch: ChannelAmplitudes,
    params: SystemParams,
    cfg: AoConfig | None = None,
    trace: list[AoIterate] | None = None,
) -> Solution:
    """Suboptimal solution of the EE problem with power restricted to [p_l, p_u].

    Returns an infeasible :class:`Solution` when even p_u with all elements
    on misses the SNR requirement.  ``trace``, if given, receives one
    :class:`AoIterate` per iteration of each loop (iteration 0 is the start).
    """
    cfg = cfg or AoConfig()
    if not (0.0 <= p_l <= p_u <= params.p_max):
        raise ValueError("require 0 <= p_l <= p_u <= p_max")
    start = time.perf_counter()
    if not is_feasible(p_u, ch, params):
        return Solution.infeasible(iterations=0)

    if cfg.init is None:
        p0, k0 = p_u, ch.n_elements
        u0 = count_tables(ch, params)[0][k0]
    else:
        p0, x0 = float(cfg.init[0]), as_activation(cfg.init[1], ch.n_elements)
        if not (p_l <= p0 <= p_u) or worst_case_snr(p0, ch, x0, params) < params.gamma_min:
            raise ValueError("AO initial point is infeasible")
        k0, u0 = int(x0.sum()), u_val(ch, x0, params)
    ee0 = ee_count(p0, p0, u0, k0, params)

    first = _ascend(1, p0, k0, u0, ee0, p_l, p_u, ch, params, cfg, trace)
    second = _ascend(2, p0, k0, u0, ee0, p_l, p_u, ch, params, cfg, trace)
    best = first if first.ee >= second.ee else second
    stats = {
        "iterations": first.iterations + second.iterations,
        "iterations_power_first": first.iterations,
        "iterations_elements_first": second.iterations,
        "ee_power_first": first.ee,
        "ee_elements_first": second.ee,
        "capped": first.capped or second.capped,
        "wall_time_s": time.perf_counter() - start,
    }
    return Solution(best.p, top_k_activation(ch, best.count_on), best.ee, Status.FEASIBLE, stats)


def ao(ch: ChannelAmplitudes, params: SystemParams, cfg: AoConfig | None = None) -> Solution:
    """AO over the full power range [0, p_max]."""
    return ao_solve(0.0, params.p_max, ch, params, cfg)

