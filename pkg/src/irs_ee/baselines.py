"""Comparison schemes: elements only, power only, and neither."""

from __future__ import annotations

from .core import ChannelAmplitudes, Solution, Status, SystemParams, all_on
from .model import is_feasible, worst_case_ee
from .power import optimal_power
from .select import select_at


def oreo(ch: ChannelAmplitudes, params: SystemParams) -> Solution:
    """Optimize the activation with the transmit power fixed at p_max."""
    res = select_at(params.p_max, ch, params)
    if res is None:
        return Solution.infeasible(iterations=0)
    x, _ = res
    p = params.p_max
    return Solution(p, x, worst_case_ee(p, ch, x, params), Status.FEASIBLE, {"iterations": 1})


def opa(ch: ChannelAmplitudes, params: SystemParams) -> Solution:
    """Optimize the power on [0, p_max] with every element on."""
    x = all_on(ch.n_elements)
    p = optimal_power(0.0, params.p_max, ch, x, params)
    if p is None:
        return Solution.infeasible(iterations=0)
    return Solution(p, x, worst_case_ee(p, ch, x, params), Status.FEASIBLE, {"iterations": 1})


def mparea(ch: ChannelAmplitudes, params: SystemParams) -> Solution:
    """Maximum power with every element on."""
    if not is_feasible(params.p_max, ch, params):
        return Solution.infeasible(iterations=0)
    x = all_on(ch.n_elements)
    p = params.p_max
    return Solution(p, x, worst_case_ee(p, ch, x, params), Status.FEASIBLE, {"iterations": 0})
