"""Worst-case energy-efficiency maximization for IRS-aided links.

Joint transmit-power allocation and binary reflecting-element activation
under bounded CSI error: alternating optimization, global branch-and-bound,
baselines, a brute-force oracle and a Monte-Carlo harness.
"""

from .ao import AoConfig, ao, ao_solve
from .baselines import mparea, opa, oreo
from .bnb import BnbConfig, BnbNode, bnb_solve, upper_bound
from .core import (
    ChannelAmplitudes,
    Solution,
    Status,
    SystemParams,
    ValidationError,
    db_to_linear,
    dbm_to_watts,
    validate,
    watts_to_dbm,
)
from .lambertw import w0
from .oracle import brute_force
from .power import optimal_power
from .select import SelectInstance, solve_select

__version__ = "0.1.0"

__all__ = [
    "AoConfig",
    "BnbConfig",
    "BnbNode",
    "ChannelAmplitudes",
    "SelectInstance",
    "Solution",
    "Status",
    "SystemParams",
    "ValidationError",
    "ao",
    "ao_solve",
    "bnb_solve",
    "brute_force",
    "db_to_linear",
    "dbm_to_watts",
    "mparea",
    "opa",
    "optimal_power",
    "oreo",
    "solve_select",
    "upper_bound",
    "validate",
    "w0",
    "watts_to_dbm",
]
