import numpy as np

from irs_ee.baselines import mparea, opa, oreo
from irs_ee.bnb import BnbConfig, bnb_solve
from irs_ee.core import SystemParams, all_on
from irs_ee.model import worst_case_ee, worst_case_snr
from irs_ee.oracle import enumerate_activations

from conftest import random_instance


def test_ordering(rng):
    for _ in range(200):
        ch, params = random_instance(rng, int(rng.integers(1, 10)))
        m, e, o = mparea(ch, params), oreo(ch, params), opa(ch, params)
        b = bnb_solve(ch, params, BnbConfig(epsilon=1e-6))
        assert m.ee <= e.ee and m.ee <= o.ee
        assert max(e.ee, o.ee) <= b.ee + 1e-6


def test_oreo_is_best_activation_at_p_max(rng):
    for _ in range(50):
        ch, params = random_instance(rng, int(rng.integers(1, 8)))
        best = max(
            worst_case_ee(params.p_max, ch, x, params)
            for x in enumerate_activations(ch.n_elements)
            if worst_case_snr(params.p_max, ch, x, params) >= params.gamma_min
        )
        assert oreo(ch, params).ee == best


def test_opa_uses_all_elements(rng):
    ch, params = random_instance(rng, 6)
    sol = opa(ch, params)
    assert sol.x.tolist() == [1] * 6
    grid = np.linspace(0, params.p_max, 5001)
    ok = [p for p in grid if worst_case_snr(p, ch, sol.x, params) >= params.gamma_min]
    assert sol.ee >= max(worst_case_ee(p, ch, sol.x, params) for p in ok) * (1 - 1e-12)


def test_mparea_value(rng):
    ch, params = random_instance(rng, 6)
    sol = mparea(ch, params)
    assert sol.p == params.p_max
    assert sol.ee == worst_case_ee(params.p_max, ch, all_on(6), params)


def test_all_infeasible(rng):
    ch, params = random_instance(rng, 4)
    g = worst_case_snr(params.p_max, ch, all_on(4), params)
    bad = SystemParams(**{**params.__dict__, "gamma_min": 2 * g})
    assert not any(s(ch, bad).feasible for s in (mparea, oreo, opa))
