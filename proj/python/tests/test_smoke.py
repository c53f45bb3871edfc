import math

import pytest

import bpo


def test_beta_delta():
    assert bpo.beta_delta(100, 0.01) == pytest.approx(4.2919320525786945, rel=1e-14)
    with pytest.raises(ValueError):
        bpo.beta_delta(2, 0.0)


def test_instance_validation():
    inst = bpo.Instance([0.6, 0.4], [10, 10])
    assert inst.arms == 2
    assert inst.means == [0.6, 0.4]
    with pytest.raises(ValueError):
        bpo.Instance([1.2, 0.4], [1, 1])
    assert bpo.Instance([1.2, 0.4], [1, 1], strict=False).arms == 2
    with pytest.raises(ValueError):
        bpo.Instance([0.6], [10, 10])


def test_policy_bias_and_selection():
    lcb = bpo.policy_bias("lcb", [100, 25], delta=0.1)
    assert lcb[0] == pytest.approx(-0.24477468306808165, rel=1e-13)
    assert bpo.policy_bias("greedy", [10, 5]) == [0.0, 0.0]
    assert bpo.select_arm([-0.1, 0.3], [0.6, 0.5], [1, 1]) == 2
    with pytest.raises(ValueError):
        bpo.policy_bias("thompson", [1, 1])


def test_exact_regret_two_arm():
    inst = bpo.Instance([0.6, 0.4], [10, 10])
    dist = bpo.exact_pick_probabilities(inst, [0.0, 0.0])
    assert dist["regret"] == pytest.approx(0.065472084601857703, rel=1e-8)
    assert sum(dist["probs"]) == pytest.approx(1.0)
    assert dist["rank_cdf"][0] == 1.0
    assert bpo.exact_regret(inst, [0.0, 0.0]) == pytest.approx(0.065472084601857703, rel=1e-12)


def test_bounds_dominate_exact_regret():
    inst = bpo.Instance([0.2, 0.9, 0.5, 0.4], [3, 1, 20, 8])
    bias = bpo.policy_bias("lcb", inst.counts, delta=0.1)
    report = bpo.regret_bound(inst, bias)
    assert report["method"] == "general"
    assert len(report["g_star"]) == 3
    assert bpo.exact_regret(inst, bias) <= report["regret_bound"] + 1e-8
    assert bpo.exact_regret(inst, bias) <= bpo.regret_bound_corollary("lcb", inst, 0.1)


def test_corollary_and_simplified_values():
    inst = bpo.Instance([0.6, 0.4], [100, 4])
    assert bpo.regret_bound_corollary("ucb", inst, 0.1) == pytest.approx(0.3)
    sym = bpo.Instance([1.0, 0.0], [100, 100])
    assert bpo.regret_bound_simplified(sym, [0.0, 0.0], 0.1) == pytest.approx(0.050000109896727379, rel=1e-12)


def test_minimax():
    delta_star, bound = bpo.minimax_upper([1000, 1000])
    assert delta_star == pytest.approx(0.25638789123803534, rel=1e-12)
    assert bound == pytest.approx(0.54388084952560141, rel=1e-12)
    assert bpo.minimax_lower_shape([1, 1, 1, 1]) == pytest.approx(math.sqrt(math.log(4)))
    with pytest.raises(bpo.NumericalError):
        bpo.minimax_upper([1, 1])
    assert issubclass(bpo.NumericalError, ArithmeticError)


def test_dominance_and_hard_pair():
    d = bpo.lcb_dominance(6, 3, 0.1, [1.0, 0.9, 0.8, 0.7, 0.6, 0.5])
    assert d["subsets"] == 20 and d["ucb_better"] == 1
    assert d["ucb_subset"] == [4, 5, 6]
    assert d["fraction_exact"] >= d["bound"]
    assert bpo.hard_pair_log_ratio(4, 4, 2.0) == pytest.approx(math.log(33.627216524153854), rel=1e-12)
    assert bpo.hard_pair_log_ratio(4, 4, 2.0) >= bpo.ratio_lower_bound_log(4, 2.0)
    assert bpo.prior_delta(100, 10) == pytest.approx(0.16319842935255986, rel=1e-12)


def test_simulation_is_deterministic():
    inst = bpo.Instance([0.6, 0.4], [10, 10])
    a = bpo.simulate(inst, [0.0, 0.0], reps=20000, seed=4)
    b = bpo.simulate(inst, [0.0, 0.0], reps=20000, seed=4, threads=2)
    assert a == b
    assert sum(a["pick_counts"]) == 20000
    assert abs(a["mean_regret"] - 0.065472084601857703) <= 4 * a["std_error"]


def test_hundred_arm_instance():
    inst = bpo.hundred_arm_instance("lcb1", 1000)
    assert inst.arms == 100
    assert inst.counts[0] == pytest.approx(300.0)
