import math

import numpy as np
import pytest
from scipy.linalg import expm

from spinlearn import optimal, spins
from spinlearn.heisenberg import (
    f_angle,
    heisenberg_entanglement_fidelity,
    heisenberg_unitary,
    interaction_time,
    per_input_fidelity,
    spin_k_entanglement_fidelity_exact,
    spin_k_fidelity,
    spin_k_worst_case_asymptotic,
    worst_case_fidelity,
)
from spinlearn.rotations import haar_rotation


def _f_literal(two_j, theta):
    # arccot form with the explicit branch shift, for the grid comparison
    s = math.pi if theta > math.pi else 0.0
    arg = 1.0 / math.tan(theta) + 1.0 / ((two_j + 1) * math.sin(theta))
    return math.atan2(1.0, arg) + s


def test_f_angle_endpoints():
    assert f_angle(6, 0.0) == 0.0
    for two_j in (1, 2, 9, 200):
        assert f_angle(two_j, math.pi) == pytest.approx(math.pi, abs=1e-12)


def test_f_angle_matches_literal_arccot_on_grid():
    for two_j in (1, 3, 10):
        for theta in np.linspace(1e-3, 2 * math.pi - 1e-3, 1000):
            if abs(theta - math.pi) < 1e-9:
                continue
            assert f_angle(two_j, float(theta)) == pytest.approx(
                _f_literal(two_j, float(theta)), abs=1e-10)


def test_f_angle_large_j_close_to_theta():
    two_j = 200
    theta = math.pi / 2
    assert abs(f_angle(two_j, theta) - theta) < 1.0 / (two_j + 1) + 1e-6


def test_f_angle_continuous_across_pi():
    for two_j in (1, 5):
        left = f_angle(two_j, math.pi - 1e-9)
        right = f_angle(two_j, math.pi + 1e-9)
        assert abs(left - right) < 1e-6


def test_gate_identity_at_zero():
    gate = heisenberg_unitary(5, 1, 0.0)
    assert np.allclose(gate.matrix(), np.eye(12), atol=1e-12)


def test_gate_unitary_and_isotropic():
    gate = heisenberg_unitary(4, 1, 2.1)
    u = gate.matrix()
    assert np.max(np.abs(u.conj().T @ u - np.eye(10))) < 1e-10
    jp = spins.spin_operators(4)
    jt = spins.spin_operators(1)
    for a, b in zip(jp, jt):
        total = np.kron(a, np.eye(2)) + np.kron(np.eye(5), b)
        assert np.max(np.abs(u @ total - total @ u)) < 1e-10


def test_gate_qubit_pair_diagonal_on_total_spin_blocks():
    # two spin-1/2 particles: the gate is diagonal in the singlet/triplet basis
    u = heisenberg_unitary(1, 1, 2.4).matrix()
    singlet = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
    blocks = np.vstack([spins.coupled_basis_vectors(1, 1, 2), singlet[None, :]])
    in_coupled = blocks @ u @ blocks.T
    off = in_coupled - np.diag(np.diag(in_coupled))
    assert np.max(np.abs(off)) < 1e-12
    phases = np.diag(in_coupled)
    assert np.allclose(np.abs(phases), 1.0, atol=1e-12)
    assert np.allclose(phases[:3], phases[0], atol=1e-12)  # triplet degenerate


def test_gate_matches_matrix_exponential():
    two_j = 3
    theta = 1.9
    jp = spins.spin_operators(two_j)
    coupling = sum(np.kron(a, 2.0 * b) for a, b in zip(jp, spins.spin_operators(1)))
    oracle = expm(-1j * f_angle(two_j, theta) * coupling / (two_j + 1))
    assert np.max(np.abs(heisenberg_unitary(two_j, 1, theta).matrix() - oracle)) < 1e-10


def test_gate_block_structure():
    # U = e^{ih} [e^{-if} P_+ + P_-] on the two total-spin blocks
    two_j, theta = 5, 2.3
    f = f_angle(two_j, theta)
    u = heisenberg_unitary(two_j, 1, theta).matrix()
    pp = spins.coupled_basis_vectors(two_j, 1, two_j + 1)
    pm = spins.coupled_basis_vectors(two_j, 1, two_j - 1)
    proj_p = pp.T @ pp
    proj_m = pm.T @ pm
    target = np.exp(-1j * f) * proj_p + proj_m
    phase = np.trace(u.conj().T @ target) / u.shape[0]
    phase /= abs(phase)
    assert np.max(np.abs(u * phase - target)) < 1e-9


def test_gate_three_term_expansion_j5():
    # action on the aligned probe and half of an entangled pair, against the
    # three-term closed-form coefficients
    two_j, theta = 10, math.pi
    j = two_j / 2
    f = f_angle(two_j, theta)
    gate = heisenberg_unitary(two_j, 1, theta)
    dp = spins.dim(two_j)
    vec = np.zeros((2, dp * 2), dtype=complex)  # reference index leading
    for r in range(2):
        v = np.zeros((dp, 2), dtype=complex)
        v[0, r] = 1.0 / math.sqrt(2.0)
        vec[r] = v.reshape(-1)
    out = gate.apply(vec).reshape(2, dp, 2).transpose(1, 2, 0)  # (probe, target, ref)
    e = np.exp(-1j * f)
    expected = np.zeros_like(out)
    expected[0, 0, 0] = e / math.sqrt(2.0)
    expected[0, 1, 1] = (1.0 + (e - 1.0) / (2 * j + 1)) / math.sqrt(2.0)
    expected[1, 0, 1] = math.sqrt(j) * (e - 1.0) / (2 * j + 1)
    phase = np.vdot(out.reshape(-1), expected.reshape(-1))
    phase /= abs(phase)
    assert np.max(np.abs(out * phase - expected)) < 1e-9


def test_closed_form_fidelity_values():
    assert heisenberg_entanglement_fidelity(7, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert heisenberg_entanglement_fidelity(3, math.pi) == pytest.approx(0.5625, abs=1e-12)
    suboptimal = heisenberg_entanglement_fidelity(4, math.pi, f_override=math.pi / 2)
    assert suboptimal < 0.64 - 1e-6


@pytest.mark.parametrize("two_j", list(range(1, 41)))
def test_closed_form_equals_case1_optimum(two_j):
    for theta in np.linspace(0.0, 2 * math.pi, 50, endpoint=False):
        fh = heisenberg_entanglement_fidelity(two_j, float(theta))
        f1 = optimal.case1_entanglement_fidelity(two_j, two_j, float(theta))
        assert abs(fh - f1) < 1e-12


def test_f_maximizes_closed_form():
    for two_j in (1, 4, 15):
        for theta in (0.7, 2.0, 2.9, 4.5):
            f = f_angle(two_j, theta)
            eps = 1e-5
            deriv = (heisenberg_entanglement_fidelity(two_j, theta, f + eps)
                     - heisenberg_entanglement_fidelity(two_j, theta, f - eps)) / (2 * eps)
            assert abs(deriv) < 1e-6


def test_interaction_time():
    assert interaction_time(4, 0.0, 1.0) == 0.0
    assert interaction_time(4, 1.2, 2.0) == pytest.approx(interaction_time(4, 1.2, 1.0) / 2)
    assert interaction_time(20, math.pi, 1.0, hbar=1.0) == pytest.approx(math.pi / 21, abs=1e-12)
    with pytest.raises(ValueError):
        interaction_time(4, 1.0, 0.0)


def test_worst_case_approaches_one_at_small_theta():
    val, _ = worst_case_fidelity(8, 1e-4)
    assert val > 1.0 - 1e-6


def test_worst_case_leading_order_and_argmin():
    for two_j in (20, 100, 400):
        val, arg = worst_case_fidelity(two_j, math.pi)
        j = two_j / 2
        assert abs((1.0 - val) - 2.0 / j) < 0.15 * (2.0 / j)
        assert arg == pytest.approx(math.pi, abs=1e-3)


def test_worst_case_below_average():
    for two_j, theta in ((4, 2.0), (10, math.pi)):
        val, _ = worst_case_fidelity(two_j, theta)
        from spinlearn.heisenberg import heisenberg_average_fidelity

        assert val <= heisenberg_average_fidelity(two_j, theta) + 1e-12


def test_per_input_fidelity_rotation_invariant(rng):
    for _ in range(5):
        g = haar_rotation(rng)
        a = per_input_fidelity(6, 2.2, 0.9, 0.3)
        b = per_input_fidelity(6, 2.2, 0.9, 0.3, g=g)
        assert a == pytest.approx(b, abs=1e-10)


def test_asymptotic_average_error_rate():
    two_j = 2000
    for theta in (math.pi, math.pi / 2):
        favg = optimal.optimal_average_fidelity(two_j, theta)
        rate = (two_j / 2) * (1 - favg) / (1 - math.cos(theta))
        assert abs(rate - 1.0 / 3.0) < 0.05 / 3.0


def test_spin_k_exact_trivials():
    assert spin_k_fidelity(8, 2, 0.0, "exact") == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        spin_k_fidelity(8, 0, 1.0)
    with pytest.raises(ValueError):
        spin_k_fidelity(8, 2, 1.0, mode="bogus")


@pytest.mark.parametrize("two_k,theta,target", [(2, math.pi, 1.0), (3, math.pi / 2, 2.0)])
def test_spin_k_exact_asymptotic_rate(two_k, theta, target):
    two_j = 400
    f = spin_k_fidelity(two_j, two_k, theta, "exact")
    rate = (two_j / 2) * (1 - f) / (1 - math.cos(theta))
    assert abs(rate - target) < 0.1 * target


def test_spin_k_asymptotic_mode_formula():
    assert spin_k_fidelity(400, 2, math.pi, "asymptotic") == pytest.approx(1 - 3 * 2 / (3 * 200))
    assert spin_k_worst_case_asymptotic(400, 2, math.pi) == pytest.approx(1 - (2 + 0.25) * 2 / 200)
    assert spin_k_worst_case_asymptotic(400, 4, math.pi) == pytest.approx(1 - 6 * 2 / 200)
    with pytest.raises(ValueError):
        spin_k_worst_case_asymptotic(400, 3, math.pi)


def test_spin_k_qubit_consistency():
    # with the generic entanglement-fidelity route at small j
    fe = spin_k_entanglement_fidelity_exact(4, 2, 1.3)
    gate = heisenberg_unitary(4, 2, 1.3)
    ch = gate.as_channel()
    probe = np.zeros(5, dtype=complex)
    probe[0] = 1.0
    v = np.diag(np.exp(-1j * 1.3 * spins.m_values(2)))
    from spinlearn.channels import entanglement_fidelity

    assert fe == pytest.approx(entanglement_fidelity(ch, probe, v).value, abs=1e-11)
