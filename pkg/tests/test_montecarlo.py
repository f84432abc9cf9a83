import math

import numpy as np
import pytest

from spinlearn import memory, mo, optimal
from spinlearn.channels import average_from_entanglement, entanglement_fidelity
from spinlearn.montecarlo import mc_average_fidelity, per_rotation_fidelity
from spinlearn.rotations import haar_rotation
from spinlearn.strategies import (
    CaseChoiStrategy,
    DiscreteXYZ,
    ExactTarget,
    HeisenbergStrategy,
    MOStrategy,
    ThermalWrapped,
    UNotMixture,
)

N = 100000


def test_exact_target_is_one_with_zero_variance():
    est = mc_average_fidelity(ExactTarget(), 1.3, 2000, seed=0)
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert est.std_error < 1e-12
    est = mc_average_fidelity(ExactTarget(two_k=3), 2.1, 500, seed=0)
    assert est.value == pytest.approx(1.0, abs=1e-12)


def test_headline_quantum_value():
    est = mc_average_fidelity(HeisenbergStrategy(two_j=3), math.pi, N, seed=101)
    assert est.n_sigma(17 / 24) < 4.0


def test_headline_classical_value():
    tp = mo.optimal_theta_prime(3, math.pi)
    est = mc_average_fidelity(MOStrategy(two_j=3, two_m=3, xi_two_n=3, theta_prime=tp),
                              math.pi, N, seed=102)
    assert est.n_sigma(29 / 45) < 4.0


def test_unot_mixture_values():
    est = mc_average_fidelity(UNotMixture(alpha=2 / 3), math.pi, N, seed=103)
    assert est.n_sigma(5 / 9) < 4.0
    # alpha = 0 reduces to the plain interaction gate
    a = mc_average_fidelity(UNotMixture(alpha=0.0), 2.2, 50000, seed=104)
    b = optimal.case1_entanglement_fidelity(1, 1, 2.2)
    assert a.n_sigma(average_from_entanglement(b, 2)) < 4.0


def test_discrete_xyz_values():
    est = mc_average_fidelity(DiscreteXYZ(), math.pi, N, seed=105)
    assert est.n_sigma(11 / 15) < 4.0
    est = mc_average_fidelity(DiscreteXYZ(), math.pi / 2, N, seed=106)
    assert est.n_sigma(8 / 15) < 4.0


def test_thermal_wrapped_matches_exact_sum():
    gamma = 0.8
    expect = memory.thermal_fidelity(6, 2.5, gamma)
    est = mc_average_fidelity(ThermalWrapped(inner=HeisenbergStrategy(two_j=6), gamma=gamma),
                              2.5, N, seed=107)
    assert est.n_sigma(expect) < 4.0


def test_case_choi_strategies_match_covariant_fidelity():
    for case, two_j, two_m, theta in [(1, 4, 4, math.pi), (2, 1, 1, 2.9), (3, 4, 0, 2.8)]:
        fe, _ = optimal.case_fidelity(case, two_j, two_m, theta)
        strat = CaseChoiStrategy(case=case, two_j=two_j, two_m=two_m, theta=theta)
        est = mc_average_fidelity(strat, theta, 50000, seed=200 + case)
        assert est.n_sigma(average_from_entanglement(fe, 2)) < 4.0
    with pytest.raises(ValueError):
        mc_average_fidelity(CaseChoiStrategy(1, 4, 4, 1.0), 2.0, 100, seed=0)


def test_fidelity_reduction_relation_on_random_points(rng):
    """MC average equals the affine map of the exact entanglement fidelity.

    This validates the average-vs-entanglement fidelity relation numerically
    for the covariant channel strategies, rather than assuming it.
    """
    checked = 0
    for _ in range(20):
        two_j = int(rng.integers(1, 6))
        theta = float(rng.uniform(0.1, 2 * math.pi - 0.1))
        gate_fe = optimal.case1_entanglement_fidelity(two_j, two_j, theta)
        est = mc_average_fidelity(HeisenbergStrategy(two_j=two_j), theta, N,
                                  seed=int(rng.integers(0, 2**31)))
        assert est.n_sigma(average_from_entanglement(gate_fe, 2)) < 4.0
        checked += 1
    assert checked == 20


def test_fidelity_reduction_for_mixture_channel():
    # exact entanglement fidelity of the explicit channel vs the MC average
    theta = 2.9
    alpha = optimal.case2_alpha(theta)
    ch = optimal.unot_mixture_channel(alpha, theta)
    probe = np.array([1.0, 0.0], dtype=complex)
    v = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    fe = entanglement_fidelity(ch, probe, v).value
    est = mc_average_fidelity(UNotMixture(alpha=alpha), theta, N, seed=9)
    assert est.n_sigma(average_from_entanglement(fe, 2)) < 4.0


def test_spin_k_strategy_matches_exact():
    from spinlearn.heisenberg import spin_k_fidelity

    est = mc_average_fidelity(HeisenbergStrategy(two_j=8, two_k=3), 2.0, 50000, seed=11)
    assert est.n_sigma(spin_k_fidelity(8, 3, 2.0, "exact")) < 4.0


def test_covariance_of_per_rotation_fidelity(rng):
    expect = 17 / 24
    for _ in range(4):
        g = haar_rotation(rng)
        est = per_rotation_fidelity(HeisenbergStrategy(two_j=3), math.pi,
                                    g.quaternion, 50000, seed=13)
        assert est.n_sigma(expect) < 4.0


def test_partition_merge_is_bit_identical():
    a = mc_average_fidelity(HeisenbergStrategy(two_j=3), 2.0, 4096, seed=42, n_partitions=8)
    b = mc_average_fidelity(HeisenbergStrategy(two_j=3), 2.0, 4096, seed=42, n_partitions=8)
    assert a == b
    c = mc_average_fidelity(HeisenbergStrategy(two_j=3), 2.0, 4096, seed=42, n_partitions=1)
    assert c.n_sigma(a.value) < 5.0
    with pytest.raises(ValueError):
        mc_average_fidelity(HeisenbergStrategy(two_j=3), 2.0, 4, seed=0, n_partitions=9)


def test_strategy_validation_errors():
    with pytest.raises(ValueError):
        mc_average_fidelity(HeisenbergStrategy(two_j=3), 1.0, 0, seed=0)
    with pytest.raises(TypeError):
        mc_average_fidelity(object(), 1.0, 10, seed=0)
    with pytest.raises(ValueError):
        mc_average_fidelity(ThermalWrapped(inner=DiscreteXYZ(), gamma=1.0), 1.0, 10, seed=0)
