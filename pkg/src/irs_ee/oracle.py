"""Brute-force global solver for small instances.

Deliberately shares no arithmetic with the production solvers: activations
are enumerated exhaustively, the power optimum of each uses its own Lambert W
evaluation by bisection, and all sums are plain numpy reductions.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .core import ChannelAmplitudes, Solution, Status, SystemParams

DEFAULT_N_CAP = 12


def w0_bisect(z, iters: int = 200) -> np.ndarray:
    """W0 by bisection on w e^w = z over [-1, max(1, log z)]."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    lo = np.full_like(z, -1.0)
    hi = np.maximum(1.0, np.log(np.maximum(z, 1.0)))
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        above = mid * np.exp(mid) > z
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
        if np.all(hi - lo <= 4e-16 * np.maximum(1.0, np.abs(mid))):
            break
    return 0.5 * (lo + hi)


def enumerate_activations(n: int) -> np.ndarray:
    """All 2^n binary vectors as rows, ordered by binary value (x_1 is the MSB)."""
    codes = np.arange(2**n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(np.uint8)


def ee_table(p: np.ndarray, xs: np.ndarray, ch: ChannelAmplitudes, params: SystemParams) -> np.ndarray:
    """Worst-case EE of each row of ``xs`` at the matching power ``p``."""
    count = xs.sum(axis=1)
    f = ch.alpha_hat[0] + xs @ ch.alpha_hat[1:]
    g = ch.xi * np.sqrt(1.0 + count)
    snr = np.asarray(p) * (f - g) ** 2 / params.noise_power
    ptot = np.asarray(p) / params.amp_efficiency + (params.p_on - params.p_off) * count
    ptot = ptot + params.p_static + ch.n_elements * params.p_off
    return np.log2(1.0 + snr) / ptot


def brute_force(ch: ChannelAmplitudes, params: SystemParams, n_cap: int = DEFAULT_N_CAP) -> Solution:
    """Global optimum over all activations with the exact optimal power for each."""
    n = ch.n_elements
    if n > n_cap:
        raise ValueError(f"n exceeds oracle cap ({n} > {n_cap})")
    start = time.perf_counter()
    xs = enumerate_activations(n)
    count = xs.sum(axis=1)
    f = ch.alpha_hat[0] + xs @ ch.alpha_hat[1:]
    g = ch.xi * np.sqrt(1.0 + count)
    u = (f - g) ** 2 / params.noise_power
    v = (params.p_on - params.p_off) * count + params.p_static + n * params.p_off
    eta = params.amp_efficiency

    feasible = u * params.p_max >= params.gamma_min
    if not feasible.any():
        return Solution.infeasible(enumerated=len(xs))

    with np.errstate(divide="ignore", invalid="ignore"):
        p_floor = np.where(u > 0, params.gamma_min / u, np.inf)
        y = w0_bisect((u * v * eta - 1.0) / math.e)
        p_star = np.where(u > 0, (np.exp(y + 1.0) - 1.0) / u, 0.0)
    p = np.minimum(np.maximum(p_star, p_floor), params.p_max)
    ee = np.where(feasible, ee_table(p, xs, ch, params), -np.inf)
    best = int(np.argmax(ee))  # first maximum: lowest binary value wins ties
    stats = {"enumerated": len(xs), "wall_time_s": time.perf_counter() - start}
    return Solution(float(p[best]), xs[best].copy(), float(ee[best]), Status.FEASIBLE, stats)
