"""Monte-Carlo average-fidelity oracle for every learning strategy.

Each strategy is simulated as an explicit physical process (unitary plus
partial trace, or measurement plus conditional operation) on Haar-random
training rotations and Fubini-Study-random target states.  No closed-form
fidelity enters anywhere, so these estimates independently validate the
analytic results.

Samples may be partitioned into independently seeded sub-streams; the merged
estimate is bit-identical for a fixed (seed, n_partitions) pair.
"""

from __future__ import annotations

import math
import numpy as np

from . import heisenberg, memory, mo, optimal, rotations, spins
from .channels import FidelityEstimate
from .strategies import (
    CaseChoiStrategy,
    DiscreteXYZ,
    ExactTarget,
    HeisenbergStrategy,
    MOStrategy,
    StrategyDescriptor,
    ThermalWrapped,
    UNotMixture,
)


def sample_pure_states(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """(n, d) complex unit vectors, Fubini-Study uniform."""
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _target_states_qubit(q_g: np.ndarray, theta: float, psi: np.ndarray) -> np.ndarray:
    """V_(theta,g) |psi> for each sample."""
    v = rotations.su2_from_quaternion(rotations.conjugated_z_rotation(q_g, theta))
    return np.einsum("nij,nj->ni", v, psi)


def _target_states_spin_k(two_k: int, q_g: np.ndarray, theta: float,
                          psi: np.ndarray) -> np.ndarray:
    u = spins.rotation_irrep_batch(two_k, q_g)
    mu = spins.m_values(two_k)
    vth = np.exp(-1j * theta * mu)
    rotated = np.einsum("nij,nj->ni", u.conj().transpose(0, 2, 1), psi)
    return np.einsum("nij,nj->ni", u, vth[None, :] * rotated)


def _conditional_fidelity_channel_output(out: np.ndarray, target: np.ndarray) -> np.ndarray:
    """sum_m |<target| out[m]>|^2 for outputs indexed by a traced register."""
    return np.sum(np.abs(np.einsum("nmi,ni->nm", out, target.conj())) ** 2, axis=1)


def _heisenberg_samples(strategy: HeisenbergStrategy, theta: float,
                        rng: np.random.Generator, n: int,
                        thermal_gamma: float | None = None,
                        q_g: np.ndarray | None = None) -> np.ndarray:
    two_j, two_k = strategy.two_j, strategy.two_k
    dp, dk = spins.dim(two_j), spins.dim(two_k)
    if q_g is None:
        q_g = rotations.haar_quaternions(rng, n)
    psi = sample_pure_states(rng, n, dk)
    if thermal_gamma is None:
        probe = spins.rotated_basis_states_batch(two_j, q_g, two_j)
    else:
        weights = memory.thermal_state(two_j, thermal_gamma).weights
        idx = rng.choice(dp, size=n, p=weights)
        two_ms = spins.two_m_values(two_j)[idx]
        probe = spins.rotated_basis_states_batch(two_j, q_g, two_ms)
    gate = heisenberg.heisenberg_unitary(two_j, two_k, theta, strategy.f_override)
    joint = np.einsum("np,nk->npk", probe, psi).reshape(n, dp * dk)
    out = gate.apply(joint).reshape(n, dp, dk)
    if two_k == 1:
        target = _target_states_qubit(q_g, theta, psi)
    else:
        target = _target_states_spin_k(two_k, q_g, theta, psi)
    return _conditional_fidelity_channel_output(out, target)


def _kraus_samples(kraus: np.ndarray, two_j: int, two_m: int, theta: float,
                   rng: np.random.Generator, n: int,
                   q_g: np.ndarray | None = None) -> np.ndarray:
    """Generic measure/operate action from a stacked Kraus family."""
    if q_g is None:
        q_g = rotations.haar_quaternions(rng, n)
    psi = sample_pure_states(rng, n, 2)
    probe = spins.rotated_basis_states_batch(two_j, q_g, two_m)
    joint = np.einsum("np,nk->npk", probe, psi).reshape(n, -1)
    out = np.einsum("rij,nj->nri", kraus, joint)
    target = _target_states_qubit(q_g, theta, psi)
    return _conditional_fidelity_channel_output(out, target)


def _mo_samples(strategy: MOStrategy, theta: float, rng: np.random.Generator,
                n: int, q_g: np.ndarray | None = None) -> np.ndarray:
    two_j = strategy.two_j
    if q_g is None:
        q_g = rotations.haar_quaternions(rng, n)
    psi = sample_pure_states(rng, n, 2)
    q_h = mo._povm_outcome_offsets(two_j, strategy.two_m, strategy.xi_two_n, n, rng)
    q_ghat = rotations.quat_multiply(q_g, q_h)
    v_cond = rotations.su2_from_quaternion(
        rotations.conjugated_z_rotation(q_ghat, strategy.theta_prime))
    out = np.einsum("nij,nj->ni", v_cond, psi)
    target = _target_states_qubit(q_g, theta, psi)
    return np.abs(np.einsum("ni,ni->n", out, target.conj())) ** 2


def _unot_mixture_samples(strategy: UNotMixture, theta: float,
                          rng: np.random.Generator, n: int,
                          q_g: np.ndarray | None = None) -> np.ndarray:
    alpha = strategy.alpha
    if q_g is None:
        q_g = rotations.haar_quaternions(rng, n)
    psi = sample_pure_states(rng, n, 2)
    probe = spins.rotated_basis_states_batch(1, q_g, 1)
    joint = np.einsum("np,nk->npk", probe, psi).reshape(n, 4)
    target = _target_states_qubit(q_g, theta, psi)

    singlet = np.zeros(4, dtype=complex)
    singlet[1] = 1.0 / math.sqrt(2.0)
    singlet[2] = -1.0 / math.sqrt(2.0)
    p0 = np.outer(singlet, singlet.conj())
    p1 = np.eye(4) - p0
    m_yes = math.sqrt(max(1.0 - 4.0 * alpha / 3.0, 0.0)) * p1 + p0
    gate = heisenberg.heisenberg_unitary(1, 1, theta)
    yes = gate.apply(joint @ m_yes.T).reshape(n, 2, 2)
    fid = _conditional_fidelity_channel_output(yes, target)

    if alpha > 0.0:
        # "no" branch: universal NOT evaluated by sampling its defining
        # coherent-state integral (uniform axis, density weight 3|<nn|.>|^2)
        z = joint @ (math.sqrt(4.0 * alpha / 3.0) * p1).T
        q_axis = rotations.haar_quaternions(rng, n)
        u_axis = rotations.su2_from_quaternion(q_axis)
        chi = u_axis[:, :, 0]       # U|0>, the random coherent axis state
        chi_flip = u_axis[:, :, 1]  # U|1>, the prepared flipped state
        pair = np.einsum("ni,nj->nij", chi, chi).reshape(n, 4)
        weight = 3.0 * np.abs(np.einsum("ni,ni->n", pair.conj(), z)) ** 2
        fid = fid + weight * np.abs(np.einsum("ni,ni->n", target.conj(), chi_flip)) ** 2
    return fid


def _discrete_xyz_samples(theta: float, rng: np.random.Generator, n: int,
                          q_g: np.ndarray | None = None) -> np.ndarray:
    if q_g is None:
        q_g = rotations.haar_quaternions(rng, n)
    psi = sample_pure_states(rng, n, 2)
    probe = spins.rotated_basis_states_batch(2, q_g, 0)
    target = _target_states_qubit(q_g, theta, psi)
    fid = np.zeros(n)
    for axis, state in optimal.discrete_xyz_projectors():
        prob = np.abs(probe @ state.conj()) ** 2
        flip = -1j * (axis[0] * optimal.PAULI["x"] + axis[1] * optimal.PAULI["y"]
                      + axis[2] * optimal.PAULI["z"])
        out = psi @ flip.T
        fid += prob * np.abs(np.einsum("ni,ni->n", target.conj(), out)) ** 2
    return fid


def _exact_target_samples(strategy: ExactTarget, theta: float,
                          rng: np.random.Generator, n: int) -> np.ndarray:
    q_g = rotations.haar_quaternions(rng, n)
    psi = sample_pure_states(rng, n, spins.dim(strategy.two_k))
    if strategy.two_k == 1:
        out = _target_states_qubit(q_g, theta, psi)
        target = _target_states_qubit(q_g, theta, psi)
    else:
        out = _target_states_spin_k(strategy.two_k, q_g, theta, psi)
        target = out
    return np.abs(np.einsum("ni,ni->n", out, target.conj())) ** 2


def _strategy_samples(strategy: StrategyDescriptor, theta: float,
                      rng: np.random.Generator, n: int,
                      q_g: np.ndarray | None = None) -> np.ndarray:
    if isinstance(strategy, ExactTarget):
        return _exact_target_samples(strategy, theta, rng, n)
    if isinstance(strategy, HeisenbergStrategy):
        return _heisenberg_samples(strategy, theta, rng, n, q_g=q_g)
    if isinstance(strategy, ThermalWrapped):
        if not isinstance(strategy.inner, HeisenbergStrategy):
            raise ValueError("thermal wrapping is defined for the spin-spin gate strategy")
        return _heisenberg_samples(strategy.inner, theta, rng, n,
                                   thermal_gamma=strategy.gamma, q_g=q_g)
    if isinstance(strategy, CaseChoiStrategy):
        if abs((strategy.theta - theta) % (2 * math.pi)) > 1e-12:
            raise ValueError("strategy was built for a different angle")
        channel = optimal.case_choi_channel(strategy)
        kraus = np.stack(channel.kraus)
        return _kraus_samples(kraus, strategy.two_j, strategy.two_m, theta, rng, n, q_g=q_g)
    if isinstance(strategy, MOStrategy):
        return _mo_samples(strategy, theta, rng, n, q_g=q_g)
    if isinstance(strategy, UNotMixture):
        return _unot_mixture_samples(strategy, theta, rng, n, q_g=q_g)
    if isinstance(strategy, DiscreteXYZ):
        return _discrete_xyz_samples(theta, rng, n, q_g=q_g)
    raise TypeError(f"unknown strategy {strategy!r}")


def mc_average_fidelity(strategy: StrategyDescriptor, theta: float, n_samples: int,
                        seed, n_partitions: int = 1) -> FidelityEstimate:
    """Monte-Carlo estimate of the Haar- and state-averaged gate fidelity.

    ``seed`` may be an integer or a numpy SeedSequence/Generator seed; the
    samples are split evenly over ``n_partitions`` sub-streams and merged by
    pooled sums, so a fixed (seed, n_partitions) is exactly reproducible.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    if n_partitions < 1 or n_partitions > n_samples:
        raise ValueError("invalid partition count")
    seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = seq.spawn(n_partitions)
    counts = [n_samples // n_partitions] * n_partitions
    for i in range(n_samples % n_partitions):
        counts[i] += 1
    # pooled mean and centered second moment, merged pairwise (Chan's update)
    n_acc = 0
    mean = 0.0
    m2 = 0.0
    for child, count in zip(children, counts):
        f = _strategy_samples(strategy, theta, np.random.default_rng(child), count)
        part_mean = float(np.mean(f))
        part_m2 = float(np.sum((f - part_mean) ** 2))
        delta = part_mean - mean
        total = n_acc + count
        m2 += part_m2 + delta * delta * n_acc * count / total
        mean += delta * count / total
        n_acc = total
    std = math.sqrt(m2 / (n_samples - 1) / n_samples) if n_samples > 1 else 0.0
    return FidelityEstimate(value=min(mean, 1.0), std_error=std, n_samples=n_samples)


def per_rotation_fidelity(strategy: StrategyDescriptor, theta: float, g_quaternion,
                          n_samples: int, seed) -> FidelityEstimate:
    """State-averaged fidelity at one fixed training rotation (covariance probe)."""
    rng = np.random.default_rng(seed)
    q_g = np.broadcast_to(np.asarray(g_quaternion, dtype=float), (n_samples, 4)).copy()
    f = _strategy_samples(strategy, theta, rng, n_samples, q_g=q_g)
    mean = float(np.mean(f))
    std = float(np.std(f, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    return FidelityEstimate(value=min(mean, 1.0), std_error=std, n_samples=n_samples)
