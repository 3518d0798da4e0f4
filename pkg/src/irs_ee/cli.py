"""Command-line front end.

Exit codes: 0 solved (feasible), 1 input error, 2 infeasible,
3 B&B safety cap reached before the optimality certificate completed.
Command-line flags override config-file fields, which override defaults.
Set IRS_EE_LOG=DEBUG|INFO|WARNING for log output on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from typing import Any

import numpy as np

from . import baselines
from .ao import AoConfig, ao
from .bnb import BnbConfig, bnb_solve
from .core import (
    ChannelAmplitudes,
    Status,
    ValidationError,
    load_config,
    params_from_config,
    validate,
)
from .experiments import ScenarioConfig, build_instance, columns_for, make_gamma_min, sweep, to_csv, trial_rng
from .oracle import DEFAULT_N_CAP, brute_force

log = logging.getLogger("irs_ee")

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_LIMIT = 0, 1, 2, 3
ORACLE_TOL = 1e-9


def _setup_logging() -> None:
    level = os.environ.get("IRS_EE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    out = {}
    for flag, key in (("seed", "seed"), ("tau", "tau"), ("chi", "chi"), ("n_elements", "n_elements"),
                      ("epsilon", "epsilon"), ("trials", "trials"), ("workers", "workers"),
                      ("bnb_trials", "bnb_trials")):
        val = getattr(args, flag, None)
        if val is not None:
            out[key] = val
    return out


def _load(args: argparse.Namespace) -> dict[str, Any]:
    try:
        cfg = load_config(args.config)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {args.config}: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"cannot read {args.config}: {exc}") from exc
    cfg.update(_overrides(args))
    return cfg


def instance_from_config(cfg: dict[str, Any]) -> tuple[ChannelAmplitudes, Any]:
    """Explicit ``alpha_hat`` in the config wins; otherwise draw trial 0 from the scenario."""
    base, chi, tau = params_from_config(cfg)
    if "alpha_hat" in cfg:
        alpha = np.asarray(cfg["alpha_hat"], dtype=float)
        ch = ChannelAmplitudes(alpha, cfg.get("xi", tau * float(alpha.min())))
        params = replace(base, n_elements=ch.n_elements)
        if "gamma_min" not in cfg:
            params = replace(params, gamma_min=make_gamma_min(ch, params, chi))
    else:
        scen = ScenarioConfig.from_dict({**cfg, "tau": tau, "chi": chi})
        ch, params = build_instance(scen, base, base.n_elements, 0)
        if "gamma_min" in cfg:
            params = replace(params, gamma_min=float(cfg["gamma_min"]))
    validate(params, ch)
    return ch, params


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = _load(args)
    ch, params = instance_from_config(cfg)
    eps = float(cfg.get("epsilon", 1e-3))
    solvers = {
        "ao": lambda: ao(ch, params, AoConfig(epsilon=eps)),
        "bnb": lambda: bnb_solve(ch, params, BnbConfig(epsilon=eps)),
        "oreo": lambda: baselines.oreo(ch, params),
        "opa": lambda: baselines.opa(ch, params),
        "mparea": lambda: baselines.mparea(ch, params),
    }
    sol = solvers[args.algo]()
    doc = {"algo": args.algo, **sol.to_dict()}
    text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default)
    print(text)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if sol.status is Status.INFEASIBLE:
        return EXIT_INFEASIBLE
    return EXIT_LIMIT if sol.status is Status.LIMIT_REACHED else EXIT_OK


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(type(o))


def verify_instances(n: int, trials: int, seed: int):
    """Random scenario instances with tau and chi drawn per trial."""
    base, _, _ = params_from_config({"n_elements": n})
    for t in range(trials):
        rng = trial_rng(seed, n, t, 1)
        tau, chi = float(rng.uniform(0, 1)), float(rng.uniform(0, 1))
        scen = ScenarioConfig(n_elements=n, tau=tau, chi=chi, rng_seed=seed)
        yield build_instance(scen, base, n, t)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.n > DEFAULT_N_CAP:
        print(f"error: n exceeds oracle cap ({args.n} > {DEFAULT_N_CAP})", file=sys.stderr)
        return EXIT_INPUT
    if args.n < 1 or args.trials < 1 or not args.eps > 0:
        print("error: need n >= 1, trials >= 1 and eps > 0", file=sys.stderr)
        return EXIT_INPUT
    worst = 0.0
    failures = 0
    for ch, params in verify_instances(args.n, args.trials, args.seed):
        ref = brute_force(ch, params)
        got = bnb_solve(ch, params, BnbConfig(epsilon=args.eps))
        if ref.feasible != got.feasible:
            failures += 1
            continue
        if not ref.feasible:
            continue
        gap = abs(got.ee - ref.ee)
        worst = max(worst, gap)
        if gap > args.eps + ORACLE_TOL:
            failures += 1
    print(f"trials={args.trials} n={args.n} eps={args.eps:g} worst_gap={worst:.3e} failures={failures}")
    return EXIT_OK if failures == 0 else EXIT_INPUT


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load(args)
    base, chi, tau = params_from_config(cfg)
    scen = ScenarioConfig.from_dict({**cfg, "tau": tau, "chi": chi, "n_elements": base.n_elements})
    rows = sweep(args.kind, scen, base)
    text = to_csv(rows, columns_for(args.kind))
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        log.info("wrote %d rows to %s", len(rows), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # usage errors share the input-error exit code; 2 means infeasible here
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="irs-ee",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance and print the solution as JSON")
    s.add_argument("config", help="JSON parameter file")
    s.add_argument("--algo", choices=("ao", "bnb", "oreo", "opa", "mparea"), default="bnb")
    s.add_argument("--seed", type=int, help="channel seed (overrides config 'seed')")
    s.add_argument("--tau", type=float)
    s.add_argument("--chi", type=float)
    s.add_argument("--n-elements", dest="n_elements", type=int)
    s.add_argument("--epsilon", type=float)
    s.add_argument("--json-out", help="also write the JSON result to this path")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check B&B against the brute-force oracle")
    v.add_argument("--n", type=int, default=8)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--eps", type=float, default=1e-6)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", help="run a Monte-Carlo sweep and write CSV")
    w.add_argument("config", help="JSON parameter/scenario file")
    w.add_argument("--kind", choices=("vs_N", "vs_chi", "bnb_trace"), required=True)
    w.add_argument("--out", help="output CSV path ('-' or omitted: stdout)")
    w.add_argument("--seed", type=int)
    w.add_argument("--trials", type=int)
    w.add_argument("--bnb-trials", dest="bnb_trials", type=int)
    w.add_argument("--workers", type=int)
    w.add_argument("--tau", type=float)
    w.add_argument("--chi", type=float)
    w.add_argument("--n-elements", dest="n_elements", type=int)
    w.add_argument("--epsilon", type=float)
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

