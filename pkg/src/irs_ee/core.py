"""Domain types, unit conversions and parameter validation.

Everything inside the solvers works in linear SI units (watts, linear SNR);
dB/dBm values only appear when parameters are loaded or reported.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any

import numpy as np

# Smallest admissible SNR requirement; a zero requirement is mapped here so the
# strict gamma_min > 0 assumption of the solvers keeps holding.
GAMMA_MIN_FLOOR = 1e-12


class ValidationError(ValueError):
    """Raised when a parameter set or channel violates a model invariant."""


# ─── Unit conversions ────────────────────────────────────────────


def dbm_to_watts(v: float) -> float:
    return 10.0 ** (v / 10.0) * 1e-3


def watts_to_dbm(w: float) -> float:
    return 10.0 * math.log10(w / 1e-3)


def db_to_linear(v: float) -> float:
    return 10.0 ** (v / 10.0)


def linear_to_db(v: float) -> float:
    return 10.0 * math.log10(v)


# ─── Domain types ────────────────────────────────────────────────


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of one link, all in linear SI units.

    Attributes:
        noise_power: receiver noise power sigma^2 [W].
        amp_efficiency: power-amplifier efficiency eta in (0, 1].
        p_on: consumption of one activated reflecting element [W].
        p_off: consumption of one deactivated reflecting element [W].
        p_static: static circuit consumption of Tx and Rx [W].
        p_max: maximum transmit power [W].
        gamma_min: minimum worst-case SNR (linear).
        n_elements: number of reflecting elements N.
    """

    noise_power: float
    amp_efficiency: float
    p_on: float
    p_off: float
    p_static: float
    p_max: float
    gamma_min: float
    n_elements: int

    @property
    def p_fix(self) -> float:
        return self.p_static + self.n_elements * self.p_off

    @property
    def p_delta(self) -> float:
        """Extra consumption of switching one element on."""
        return self.p_on - self.p_off


@dataclass(frozen=True, eq=False)
class ChannelAmplitudes:
    """Estimated channel magnitudes and the CSI-uncertainty radius.

    ``alpha_hat[0]`` is the direct Tx-Rx link, ``alpha_hat[1:]`` the cascaded
    links through each reflecting element.
    """

    alpha_hat: np.ndarray
    xi: float = 0.0

    def __post_init__(self) -> None:
        a = np.array(self.alpha_hat, dtype=float).ravel()
        a.setflags(write=False)
        object.__setattr__(self, "alpha_hat", a)
        object.__setattr__(self, "xi", float(self.xi))

    @property
    def n_elements(self) -> int:
        return self.alpha_hat.size - 1

    @property
    def alpha_min(self) -> float:
        return float(self.alpha_hat.min())

    def with_xi(self, xi: float) -> ChannelAmplitudes:
        return ChannelAmplitudes(self.alpha_hat, xi)

    @cached_property
    def order(self) -> np.ndarray:
        """Element indices (0-based over alpha_hat[1:]) by decreasing amplitude.

        Equal amplitudes keep ascending index order.
        """
        return np.argsort(-self.alpha_hat[1:], kind="stable")

    @cached_property
    def prefix_f(self) -> tuple[float, ...]:
        """``alpha_hat[0]`` plus the k largest cascaded amplitudes, k = 0..N.

        Each entry is the correctly rounded value of the exact sum, so it is
        bit-identical to :func:`irs_ee.model.f_val` on the same element set.
        """
        ratios = [float(a).as_integer_ratio() for a in self.alpha_hat]
        scale = max(den for _, den in ratios)
        ints = [num * (scale // den) for num, den in ratios]
        acc = ints[0]
        out = [acc / scale]
        for i in self.order:
            acc += ints[i + 1]
            out.append(acc / scale)
        return tuple(out)

    def __repr__(self) -> str:
        return f"ChannelAmplitudes(N={self.n_elements}, xi={self.xi:.4g})"


def all_on(n: int) -> np.ndarray:
    return np.ones(n, dtype=np.uint8)


def as_activation(x, n: int | None = None) -> np.ndarray:
    """Coerce ``x`` into a binary activation vector, checking its entries."""
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValidationError("activation must be a 1-D vector")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValidationError("activation entries must be 0 or 1")
    if n is not None and arr.size != n:
        raise ValidationError(f"activation has length {arr.size}, expected {n}")
    return arr.astype(np.uint8)


def bitstring(x: np.ndarray | None) -> str:
    return "" if x is None else "".join(str(int(b)) for b in x)


class Status(str, enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    # safety cap hit before the optimality certificate was complete
    LIMIT_REACHED = "LimitReached"


@dataclass
class Solution:
    p: float
    x: np.ndarray | None
    ee: float
    status: Status
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE

    @classmethod
    def infeasible(cls, **stats: Any) -> Solution:
        return cls(math.nan, None, -math.inf, Status.INFEASIBLE, dict(stats))

    def to_dict(self) -> dict[str, Any]:
        return {
            "p_watts": None if math.isnan(self.p) else self.p,
            "x": bitstring(self.x),
            "ee": None if math.isinf(self.ee) else self.ee,
            "status": self.status.value,
            "stats": self.stats,
        }


# ─── Validation ──────────────────────────────────────────────────


def validate(params: SystemParams, ch: ChannelAmplitudes) -> None:
    """Raise :class:`ValidationError` naming the first violated invariant."""
    checks = [
        (params.noise_power > 0, "noise_power must be positive"),
        (0 < params.amp_efficiency <= 1, "amp_efficiency out of (0,1]"),
        (params.p_off > 0, "p_off must be positive"),
        (params.p_on >= params.p_off, "p_on must be >= p_off"),
        (params.p_static > 0, "p_static must be positive"),
        (params.p_max > 0, "p_max must be positive"),
        (params.gamma_min > 0, "gamma_min must be positive"),
        (
            isinstance(params.n_elements, (int, np.integer)) and params.n_elements >= 1,
            "n_elements must be a positive integer",
        ),
        (ch.alpha_hat.size == params.n_elements + 1, "alpha_hat must have N+1 entries"),
        (bool(np.isfinite(ch.alpha_hat).all()), "alpha_hat must be finite"),
        (bool((ch.alpha_hat >= 0).all()), "alpha_hat entries must be non-negative"),
        (ch.xi >= 0, "xi must be non-negative"),
        (ch.xi <= ch.alpha_min, "xi exceeds alpha_min"),
    ]
    for ok, msg in checks:
        if not ok:
            raise ValidationError(msg)


# ─── JSON parameter files ────────────────────────────────────────

# Default link budget and power model; every field can be set in the config file.
PARAM_DEFAULTS: dict[str, Any] = {
    "noise_power_dbm": -85.0,
    "eta": 0.8,
    "p_on_mw": 10.0,
    "p_off_mw": 0.4,
    "p_static_mw": 100.0,
    "p_max_dbm": 27.0,
    "chi": 0.4,
    "tau": 0.0,
    "n_elements": 50,
}


def load_config(path: str | Path) -> dict[str, Any]:
    """Read a JSON config file into a dict (no defaults applied)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValidationError("config must be a JSON object")
    return data


def params_from_config(cfg: dict[str, Any]) -> tuple[SystemParams, float, float]:
    """Build ``(params, chi, tau)`` from the JSON parameter schema.

    The returned params carry ``gamma_min`` from an explicit ``"gamma_min"``
    key when present, otherwise the floor value; callers that derive the SNR
    requirement from ``chi`` replace it once the channel is known.
    """
    merged = {**PARAM_DEFAULTS, **cfg}
    n = merged["n_elements"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValidationError("n_elements must be a positive integer")
    chi, tau = float(merged["chi"]), float(merged["tau"])
    if not 0.0 <= chi <= 1.0:
        raise ValidationError("chi out of [0,1]")
    if not 0.0 <= tau <= 1.0:
        raise ValidationError("tau out of [0,1]")
    params = SystemParams(
        noise_power=dbm_to_watts(float(merged["noise_power_dbm"])),
        amp_efficiency=float(merged["eta"]),
        p_on=float(merged["p_on_mw"]) * 1e-3,
        p_off=float(merged["p_off_mw"]) * 1e-3,
        p_static=float(merged["p_static_mw"]) * 1e-3,
        p_max=dbm_to_watts(float(merged["p_max_dbm"])),
        gamma_min=float(merged.get("gamma_min", GAMMA_MIN_FLOOR)),
        n_elements=n,
    )
    return params, chi, tau
