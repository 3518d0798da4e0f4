import numpy as np
import pytest

from irs_ee.ao import AoConfig, ao, ao_solve
from irs_ee.core import SystemParams, all_on
from irs_ee.model import worst_case_ee, worst_case_snr
from irs_ee.oracle import brute_force

from conftest import random_instance


def infeasible(ch, params):
    g = worst_case_snr(params.p_max, ch, all_on(ch.n_elements), params)
    return SystemParams(**{**params.__dict__, "gamma_min": 2.0 * g})


def test_monotone_feasible_and_terminates(rng):
    for _ in range(200):
        ch, params = random_instance(rng, int(rng.integers(1, 40)))
        trace = []
        sol = ao_solve(0.0, params.p_max, ch, params, AoConfig(epsilon=1e-6), trace)
        for loop in (1, 2):
            ees = [t.ee for t in trace if t.loop == loop]
            assert all(b >= a for a, b in zip(ees, ees[1:]))
            assert len(ees) - 1 <= 100
        assert not sol.stats["capped"]
        assert worst_case_snr(sol.p, ch, sol.x, params) >= params.gamma_min
        assert sol.ee == worst_case_ee(sol.p, ch, sol.x, params)
        assert sol.ee == max(sol.stats["ee_power_first"], sol.stats["ee_elements_first"])


def test_not_above_global_optimum(rng):
    for _ in range(200):
        ch, params = random_instance(rng, int(rng.integers(1, 9)))
        assert ao(ch, params).ee <= brute_force(ch, params).ee * (1 + 1e-12)


def test_infeasible_node():
    rng = np.random.default_rng(7)
    ch, params = random_instance(rng, 4)
    sol = ao(ch, infeasible(ch, params))
    assert not sol.feasible and sol.stats["iterations"] == 0


def test_custom_init_and_bad_inputs(rng):
    ch, params = random_instance(rng, 5, chi=0.1)
    x0 = all_on(5)
    sol = ao_solve(0.0, params.p_max, ch, params, AoConfig(init=(params.p_max, x0)))
    assert sol.ee >= worst_case_ee(params.p_max, ch, x0, params)
    with pytest.raises(ValueError):
        ao_solve(0.0, params.p_max, ch, params, AoConfig(init=(0.0, x0)))
    with pytest.raises(ValueError):
        ao_solve(1.0, 0.5, ch, params)
    with pytest.raises(ValueError):
        AoConfig(epsilon=0.0)


def test_subinterval_solution_stays_in_window(rng):
    for _ in range(100):
        ch, params = random_instance(rng, int(rng.integers(1, 20)))
        p_l, p_u = sorted(rng.uniform(0, params.p_max, 2))
        sol = ao_solve(p_l, p_u, ch, params)
        if sol.feasible:
            assert p_l <= sol.p <= p_u
