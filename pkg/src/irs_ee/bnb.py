"""Globally epsilon-optimal branch-and-bound over the transmit-power interval.

Nodes are power intervals processed in FIFO order.  The upper bound of a
node evaluates the SNR at its right end and the consumption at its left end;
the lower bound is an AO run started from the right end with all elements
on, which is what makes the bound gap vanish as intervals shrink.
"""

from __future__ import annotations

import logging
import math
import time
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .ao import AoConfig, ao_solve
from .core import ChannelAmplitudes, Solution, Status, SystemParams
from .model import gap_constant, is_feasible
from .select import best_count

log = logging.getLogger(__name__)

ACTIONS = ("start", "prune_infeas", "prune_bound", "prune_exact", "branch", "prune_floor")


class BnbNode(NamedTuple):
    p_l: float
    p_u: float
    parent_ub: float = math.inf  # only used to report the residual gap on early stop


@dataclass(frozen=True)
class BnbConfig:
    epsilon: float = 1e-3
    max_iters: int = 1_000_000
    min_interval: float | None = None  # default p_max * 2**-52
    ao_epsilon: float | None = None  # default: same as epsilon
    ao_max_iters: int = 100

    def __post_init__(self) -> None:
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class TraceRow:
    iter: int
    p_l: float
    p_u: float
    ub: float | None
    lb: float | None
    incumbent: float
    q: int
    action: str


def upper_bound(node: BnbNode, ch: ChannelAmplitudes, params: SystemParams) -> float | None:
    """Relaxation bound of a node, or ``None`` if the node is infeasible."""
    res = best_count(node.p_u, node.p_l, ch, params)
    return None if res is None else res[1]


def bnb_solve(
    ch: ChannelAmplitudes,
    params: SystemParams,
    cfg: BnbConfig | None = None,
    trace: list[TraceRow] | None = None,
) -> Solution:
    """Epsilon-optimal solution of the full problem, p in [0, p_max].

    ``trace`` receives a start row (iteration 0, queue size 1) and then one
    row per processed node; ``q`` is the queue length after the node.
    """
    cfg = cfg or BnbConfig()
    ao_cfg = AoConfig(
        epsilon=cfg.ao_epsilon if cfg.ao_epsilon is not None else cfg.epsilon,
        max_iters=cfg.ao_max_iters,
    )
    min_interval = cfg.min_interval if cfg.min_interval is not None else params.p_max * 2.0**-52
    m_const = gap_constant(ch, params)
    start = time.perf_counter()

    queue: deque[BnbNode] = deque([BnbNode(0.0, params.p_max)])
    best_p, best_x, best_ee = math.nan, None, -math.inf
    counts = dict.fromkeys(ACTIONS[1:], 0)
    q_max = 1
    ao_iters = 0
    gap_violations = 0
    worst_gap_ratio = 0.0
    pruned_ub = -math.inf  # max UB over fathomed nodes, for the certificate
    if trace is not None:
        trace.append(TraceRow(0, 0.0, params.p_max, None, None, best_ee, 1, "start"))

    i = 0
    while queue:
        if i >= cfg.max_iters:
            break
        i += 1
        node = queue.popleft()
        p_l, p_u = node.p_l, node.p_u
        ub = lb = None

        if not is_feasible(p_u, ch, params):
            action = "prune_infeas"
        else:
            ub = upper_bound(node, ch, params)
            sol = ao_solve(p_l, p_u, ch, params, ao_cfg)
            assert sol.feasible and ub is not None, "node passed the feasibility test"
            lb = sol.ee
            ao_iters += sol.stats["iterations"]
            if lb > best_ee:
                best_p, best_x, best_ee = sol.p, sol.x, lb

            dp = p_u - p_l
            gap = ub - lb
            if gap > m_const * dp:
                gap_violations += 1
                log.warning("bound gap %.3e exceeds M*dp=%.3e on [%r, %r]", gap, m_const * dp, p_l, p_u)
            if dp > 0:
                worst_gap_ratio = max(worst_gap_ratio, gap / (m_const * dp))

            if ub <= best_ee + cfg.epsilon:
                action = "prune_bound"
            elif lb == ub:
                action = "prune_exact"
            elif dp <= min_interval:
                action = "prune_floor"
            else:
                action = "branch"
                p_m = 0.5 * (p_l + p_u)
                queue.append(BnbNode(p_l, p_m, ub))
                queue.append(BnbNode(p_m, p_u, ub))
            if action != "branch":
                pruned_ub = max(pruned_ub, ub)

        counts[action] += 1
        q_max = max(q_max, len(queue))
        if trace is not None:
            trace.append(TraceRow(i, p_l, p_u, ub, lb, best_ee, len(queue), action))

    stats = {
        "iterations": i,
        "q_max": q_max,
        "q_final": len(queue),
        "ao_iterations": ao_iters,
        "prune_counts": counts,
        "gap_bound_violations": gap_violations,
        "max_gap_ratio": worst_gap_ratio,
        "wall_time_s": time.perf_counter() - start,
    }
    if best_x is None:
        if queue:
            return Solution(math.nan, None, -math.inf, Status.LIMIT_REACHED, stats)
        return Solution.infeasible(**stats)

    stats["certificate_gap"] = pruned_ub - best_ee if pruned_ub > -math.inf else 0.0
    if queue:
        # safety cap hit: report how far the incumbent may still be from optimal
        stats["residual_gap"] = max(n.parent_ub for n in queue) - best_ee
        return Solution(best_p, best_x, best_ee, Status.LIMIT_REACHED, stats)
    return Solution(best_p, best_x, best_ee, Status.FEASIBLE, stats)
