"""Exact solver for the binary element-activation subproblems.

For a fixed number k of active elements, consumption and the uncertainty
term depend on x only through k, while the objective grows with the summed
amplitude.  The best k-subset is therefore the k strongest elements, and the
global optimum is the best of the N+1 sorted prefixes.  With the channel's
sort order and prefix sums cached, a solve is O(N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ChannelAmplitudes, SystemParams
from .model import LN2, count_tables


@dataclass(frozen=True)
class SelectInstance:
    """One activation problem.

    ``p_num`` is the power inside the SNR (numerator), ``p_den`` the power
    inside the consumption (denominator).  Equal values give the fixed-power
    problem; ``p_num = p_u, p_den = p_l`` gives the branch-and-bound relaxation.
    """

    p_num: float
    p_den: float
    ch: ChannelAmplitudes
    params: SystemParams

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_den <= self.p_num <= self.params.p_max:
            raise ValueError("require 0 <= p_den <= p_num <= p_max")


def best_count(p_num: float, p_den: float, ch: ChannelAmplitudes, params: SystemParams) -> tuple[int, float] | None:
    """Best number k of strongest elements to activate and its value, or ``None``."""
    u_tab, v_tab = count_tables(ch, params)
    gamma_min = params.gamma_min
    p_tx = p_den / params.amp_efficiency
    best_k, best_val = -1, -math.inf
    for k, u in enumerate(u_tab):
        snr = u * p_num
        if snr < gamma_min:
            continue
        # same operation order as model.ee_count
        val = math.log1p(snr) / LN2 / (p_tx + v_tab[k])
        if val > best_val:
            best_k, best_val = k, val
    return None if best_k < 0 else (best_k, best_val)


def top_k_activation(ch: ChannelAmplitudes, k: int) -> np.ndarray:
    x = np.zeros(ch.n_elements, dtype=np.uint8)
    x[ch.order[:k]] = 1
    return x


def solve_select(inst: SelectInstance) -> tuple[np.ndarray, float] | None:
    """Globally optimal activation and its objective value, or ``None``.

    ``None`` means no activation meets the SNR requirement at ``p_num``.
    Among equal values the smallest count wins, then the lowest indices.
    """
    res = best_count(inst.p_num, inst.p_den, inst.ch, inst.params)
    if res is None:
        return None
    return top_k_activation(inst.ch, res[0]), res[1]


def select_at(p: float, ch: ChannelAmplitudes, params: SystemParams) -> tuple[np.ndarray, float] | None:
    """Fixed-power activation problem at transmit power ``p``."""
    return solve_select(SelectInstance(p, p, ch, params))
