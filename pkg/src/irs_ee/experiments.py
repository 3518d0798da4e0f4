"""Channel generation and Monte-Carlo sweeps over the comparison schemes.

Channels follow a distance-based path loss per hop with Rician small-scale
fading on every link.  Each trial draws from its own counter-based stream
keyed by (seed, N, trial), so results do not depend on execution order and
every abscissa point of a sweep reuses the same realizations.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Iterable

import numpy as np

from .ao import AoConfig, ao
from .baselines import mparea, opa, oreo
from .bnb import BnbConfig, TraceRow, bnb_solve
from .core import GAMMA_MIN_FLOOR, ChannelAmplitudes, Solution, SystemParams, all_on, db_to_linear
from .model import worst_case_snr

SCHEMES = ("ao", "bnb", "oreo", "opa", "mparea")
VS_N_COLUMNS = ("N", "trial", "tau", "scheme", "ee_bits_per_joule", "p_watts", "count_on", "iterations", "feasible")
VS_CHI_COLUMNS = ("chi",) + VS_N_COLUMNS[1:]
TRACE_COLUMNS = ("iter", "p_l", "p_u", "ub", "lb", "incumbent", "q", "action")


@dataclass(frozen=True)
class ScenarioConfig:
    tx_pos: tuple[float, float, float] = (0.0, 0.0, 0.0)
    rx_pos: tuple[float, float, float] = (80.0, 0.0, 0.0)
    irs_pos: tuple[float, float, float] = (40.0, 10.0, 5.0)
    rician_kappa_db: float = 6.0
    tau: float = 0.0
    chi: float = 0.4
    n_elements: int = 50
    trials: int = 100
    rng_seed: int = 0
    ple_direct: float = 3.5
    ple_irs: float = 2.2
    ref_loss_db: float = -30.0
    ref_distance: float = 1.0
    n_grid: tuple[int, ...] = (10, 20, 30, 40, 50, 60, 70)
    chi_grid: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    tau_grid: tuple[float, ...] = (0.0, 0.7)
    bnb_trials: int | None = None  # None: run B&B on every trial
    epsilon: float = 1e-3
    workers: int = 1

    def __post_init__(self) -> None:
        for name in ("tau", "chi"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} out of [0,1]")
        if any(not 0.0 <= t <= 1.0 for t in self.tau_grid + self.chi_grid):
            raise ValueError("tau_grid/chi_grid entries must lie in [0,1]")
        pos = {tuple(self.tx_pos), tuple(self.rx_pos), tuple(self.irs_pos)}
        if len(pos) != 3:
            raise ValueError("tx, rx and irs positions must be distinct")
        if self.trials < 1:
            raise ValueError("trials must be positive")

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ScenarioConfig:
        names = {f for f in cls.__dataclass_fields__}
        kw = {k: v for k, v in d.items() if k in names}
        if "seed" in d:
            kw["rng_seed"] = d["seed"]
        for k in ("tx_pos", "rx_pos", "irs_pos", "n_grid", "chi_grid", "tau_grid"):
            if k in kw:
                kw[k] = tuple(kw[k])
        return cls(**kw)


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, keys)])))


def _path_gain(d: float, ple: float, cfg: ScenarioConfig) -> float:
    return db_to_linear(cfg.ref_loss_db) * (d / cfg.ref_distance) ** (-ple)


def _rician(rng: np.random.Generator, size: int, kappa_db: float) -> np.ndarray:
    """Unit-power Rician samples; the LoS phase is set to zero."""
    nlos = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
    if math.isinf(kappa_db) and kappa_db > 0:
        return np.ones(size, dtype=complex)
    k = db_to_linear(kappa_db)
    return math.sqrt(k / (k + 1.0)) + math.sqrt(1.0 / (k + 1.0)) * nlos


def generate_complex_channels(cfg: ScenarioConfig, rng: np.random.Generator) -> tuple[complex, np.ndarray]:
    """Direct channel h0 and the N cascaded channels (Tx-IRS gain x IRS-Rx gain)."""
    tx, rx, irs = (np.asarray(p, dtype=float) for p in (cfg.tx_pos, cfg.rx_pos, cfg.irs_pos))
    d0 = float(np.linalg.norm(rx - tx))
    d1 = float(np.linalg.norm(irs - tx))
    d2 = float(np.linalg.norm(rx - irs))
    n = cfg.n_elements
    h0 = math.sqrt(_path_gain(d0, cfg.ple_direct, cfg)) * _rician(rng, 1, cfg.rician_kappa_db)[0]
    hop1 = math.sqrt(_path_gain(d1, cfg.ple_irs, cfg)) * _rician(rng, n, cfg.rician_kappa_db)
    hop2 = math.sqrt(_path_gain(d2, cfg.ple_irs, cfg)) * _rician(rng, n, cfg.rician_kappa_db)
    return complex(h0), hop1 * hop2


def generate_channels(cfg: ScenarioConfig, rng: np.random.Generator) -> ChannelAmplitudes:
    h0, hc = generate_complex_channels(cfg, rng)
    alpha = np.concatenate(([abs(h0)], np.abs(hc)))
    return ChannelAmplitudes(alpha, cfg.tau * float(alpha.min()))


def make_gamma_min(ch: ChannelAmplitudes, params: SystemParams, chi: float) -> float:
    """chi times the worst-case SNR at p_max, all on, with the largest admissible radius."""
    if not 0.0 <= chi <= 1.0:
        raise ValueError("chi out of [0,1]")
    if chi == 0.0:
        return GAMMA_MIN_FLOOR
    ref = worst_case_snr(params.p_max, ch.with_xi(ch.alpha_min), all_on(ch.n_elements), params)
    return max(chi * ref, GAMMA_MIN_FLOOR)


def build_instance(
    cfg: ScenarioConfig,
    base: SystemParams,
    n: int,
    trial: int,
    tau: float | None = None,
    chi: float | None = None,
) -> tuple[ChannelAmplitudes, SystemParams]:
    """Channel and parameters of one trial; the draw depends only on (seed, n, trial)."""
    tau = cfg.tau if tau is None else tau
    chi = cfg.chi if chi is None else chi
    ch = generate_channels(replace(cfg, n_elements=n, tau=tau), trial_rng(cfg.rng_seed, n, trial))
    params = replace(base, n_elements=n)
    return ch, replace(params, gamma_min=make_gamma_min(ch, params, chi))


def run_schemes(
    ch: ChannelAmplitudes, params: SystemParams, epsilon: float = 1e-3, with_bnb: bool = True
) -> dict[str, Solution]:
    out = {"ao": ao(ch, params, AoConfig(epsilon=epsilon))}
    if with_bnb:
        out["bnb"] = bnb_solve(ch, params, BnbConfig(epsilon=epsilon))
    out["oreo"] = oreo(ch, params)
    out["opa"] = opa(ch, params)
    out["mparea"] = mparea(ch, params)
    return out


def _rows_for(abscissa: tuple[str, Any], trial: int, tau: float, sols: dict[str, Solution]) -> list[dict]:
    rows = []
    for scheme in SCHEMES:
        if scheme not in sols:
            continue
        s = sols[scheme]
        rows.append(
            {
                abscissa[0]: abscissa[1],
                "trial": trial,
                "tau": tau,
                "scheme": scheme,
                "ee_bits_per_joule": s.ee if s.feasible else None,
                "p_watts": s.p if s.feasible else None,
                "count_on": int(s.x.sum()) if s.x is not None else None,
                "iterations": int(s.stats.get("iterations", 0)),
                "feasible": int(s.feasible),
            }
        )
    return rows


def _vs_n_job(args) -> list[dict]:
    cfg, base, n, trial = args
    with_bnb = cfg.bnb_trials is None or trial < cfg.bnb_trials
    rows = []
    for tau in cfg.tau_grid:
        ch, params = build_instance(cfg, base, n, trial, tau=tau)
        rows += _rows_for(("N", n), trial, tau, run_schemes(ch, params, cfg.epsilon, with_bnb))
    return rows


def _vs_chi_job(args) -> list[dict]:
    cfg, base, chi, trial = args
    with_bnb = cfg.bnb_trials is None or trial < cfg.bnb_trials
    ch, params = build_instance(cfg, base, cfg.n_elements, trial, chi=chi)
    return _rows_for(("chi", chi), trial, cfg.tau, run_schemes(ch, params, cfg.epsilon, with_bnb))


def _map(fn, jobs: list, workers: int) -> list[dict]:
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        parts = [fn(j) for j in jobs]
    return [row for part in parts for row in part]


def bnb_trace(cfg: ScenarioConfig, base: SystemParams, trial: int = 0) -> list[dict]:
    ch, params = build_instance(cfg, base, cfg.n_elements, trial)
    trace: list[TraceRow] = []
    bnb_solve(ch, params, BnbConfig(epsilon=cfg.epsilon), trace=trace)
    return [
        {
            "iter": r.iter,
            "p_l": r.p_l,
            "p_u": r.p_u,
            "ub": r.ub,
            "lb": r.lb,
            "incumbent": r.incumbent,
            "q": r.q,
            "action": r.action,
        }
        for r in trace
    ]


def sweep(kind: str, cfg: ScenarioConfig, base: SystemParams) -> list[dict]:
    """Per-trial result rows for ``kind`` in {"vs_N", "vs_chi", "bnb_trace"}.

    Rows come out ordered by (abscissa, trial); infeasible trials are kept
    as rows with ``feasible = 0``.
    """
    if kind == "vs_N":
        jobs = [(cfg, base, n, t) for n in cfg.n_grid for t in range(cfg.trials)]
        return _map(_vs_n_job, jobs, cfg.workers)
    if kind == "vs_chi":
        jobs = [(cfg, base, chi, t) for chi in cfg.chi_grid for t in range(cfg.trials)]
        return _map(_vs_chi_job, jobs, cfg.workers)
    if kind == "bnb_trace":
        return bnb_trace(cfg, base)
    raise ValueError(f"unknown sweep kind {kind!r}")


def columns_for(kind: str) -> tuple[str, ...]:
    return {"vs_N": VS_N_COLUMNS, "vs_chi": VS_CHI_COLUMNS, "bnb_trace": TRACE_COLUMNS}[kind]


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(rows: Iterable[dict], columns: tuple[str, ...]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def write_csv(rows: Iterable[dict], columns: tuple[str, ...], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(rows, columns))


def mean_ee(rows: Iterable[dict], abscissa: str) -> dict[tuple[Any, float, str], float]:
    """Mean EE per (abscissa value, tau, scheme) over feasible trials."""
    acc: dict[tuple, list[float]] = {}
    for r in rows:
        if r["feasible"]:
            acc.setdefault((r[abscissa], r["tau"], r["scheme"]), []).append(r["ee_bits_per_joule"])
    return {k: float(np.mean(v)) for k, v in acc.items()}


@dataclass
class IterationStats:
    bnb_iterations: list[int] = field(default_factory=list)
    q_max: list[int] = field(default_factory=list)
    ao_iterations: list[int] = field(default_factory=list)

    @property
    def mean_bnb_iterations(self) -> float:
        return float(np.mean(self.bnb_iterations))

    @property
    def mean_q_max(self) -> float:
        return float(np.mean(self.q_max))

    @property
    def mean_ao_iterations(self) -> float:
        return float(np.mean(self.ao_iterations))


def iteration_stats(cfg: ScenarioConfig, base: SystemParams, trials: int | None = None) -> IterationStats:
    """B&B and AO iteration counts over seeded trials at ``cfg.n_elements``."""
    out = IterationStats()
    for t in range(trials if trials is not None else cfg.trials):
        ch, params = build_instance(cfg, base, cfg.n_elements, t)
        b = bnb_solve(ch, params, BnbConfig(epsilon=cfg.epsilon))
        a = ao(ch, params, AoConfig(epsilon=cfg.epsilon))
        out.bnb_iterations.append(b.stats["iterations"])
        out.q_max.append(b.stats["q_max"])
        out.ao_iterations.append(a.stats["iterations"])
    return out
