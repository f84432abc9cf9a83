"""Classical-memory (measure-and-operate) benchmark strategies.

The optimal classical strategy measures the probe with a covariant
coherent-state POVM and applies a conditional rotation about the estimated
axis.  Its entanglement fidelity reduces to three angular-momentum overlap
terms weighted by trigonometric factors of the target angle theta and the
conditional angle theta'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import rotations, spins
from .channels import ChoiOperator, FidelityEstimate, average_from_entanglement
from .optimal import RegimeReport, _bisect
from .spins import check_valid_m, clebsch_gordan
from .strategies import MOStrategy


@dataclass(frozen=True)
class MOParams:
    """Probe index m, measurement seed index n, and conditional angle theta'."""

    two_m: int
    xi_two_n: int
    theta_prime: float


def gamma_weights(theta: float, theta_prime: float) -> tuple[float, float, float]:
    """Trigonometric weights of the rank-0, 1, 2 overlap terms."""
    ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
    cp, sp = math.cos(theta_prime / 2.0), math.sin(theta_prime / 2.0)
    g0 = (cp * ch) ** 2 + (sp * sh) ** 2 / 3.0
    g1 = (2.0 / 3.0) * cp * ch * sp * sh
    g2 = (2.0 / 15.0) * (sp * sh) ** 2
    return g0, g1, g2


def _pair_overlap(two_j: int, two_m: int, two_l: int) -> float:
    """<j m; j -m | l 0> with the (j (x) j) pair coupled to total spin l."""
    return clebsch_gordan(two_j, two_m, two_j, -two_m, two_l, 0)


def mo_element_fidelity(two_j: int, two_m: int, xi_two_n: int, theta: float,
                        theta_prime: float) -> float:
    """Entanglement fidelity of the covariant MO strategy with the given knobs.

    The rank-2 term exists only for two_j >= 2; for a seed equal to the probe
    index the result reduces to the closed squared-overlap forms.
    """
    check_valid_m(two_j, two_m)
    check_valid_m(two_j, xi_two_n)
    g0, g1, g2 = gamma_weights(theta, theta_prime)
    sign = -1.0 if ((xi_two_n - two_m) // 2) % 2 else 1.0
    total = 0.0
    for two_l, g in ((0, g0), (2, g1), (4, g2)):
        if two_l > 2 * two_j:
            continue
        total += g * _pair_overlap(two_j, xi_two_n, two_l) * _pair_overlap(two_j, two_m, two_l)
    return (two_j + 1.0) * sign * total


def optimal_theta_prime(two_j: int, theta: float) -> float:
    """Conditional rotation angle maximizing the covariant MO fidelity at m = j.

    Branch-safe form of arccot[cot(theta) + (2cos(theta)+2j+1)/((2j^2+3j)
    sin(theta))] + s(theta).
    """
    j = two_j / 2.0
    d = (2.0 * j * j + 3.0 * j) * math.sin(theta)
    n = (2.0 * j * j + 3.0 * j) * math.cos(theta) + 2.0 * math.cos(theta) + 2.0 * j + 1.0
    return math.atan2(d, n) % (2.0 * math.pi)


def mo_fopt_formula(two_j: int, theta: float, theta_prime: float) -> float:
    """Average MO fidelity at probe m = j, seed n = j, for the given theta'."""
    j = two_j / 2.0
    return (
        (4.0 * j + 4.0 + (2.0 * j + 1.0) * math.cos(theta - theta_prime))
        / (3.0 * (2.0 * j + 3.0))
        + ((2.0 * j + 1.0) * (math.cos(theta) + math.cos(theta_prime))
           + math.cos(theta + theta_prime) + 1.0)
        / (3.0 * (j + 1.0) * (2.0 * j + 3.0))
    )


def anomalous_mo_fidelity(theta: float) -> float:
    """j = 1 average fidelity of the aligned-orbital strategy: 1/3 + (2/5)sin^2(theta/2)."""
    return 1.0 / 3.0 + 0.4 * math.sin(theta / 2.0) ** 2


@lru_cache(maxsize=1)
def j1_mo_threshold() -> float:
    """Distance |theta - pi| where the j = 1 MO strategy switches probes."""

    def gap(th: float) -> float:
        return mo_fopt_formula(2, th, optimal_theta_prime(2, th)) - anomalous_mo_fidelity(th)

    root = _bisect(gap, 1.8, math.pi - 1e-12, tol=1e-12)
    return math.pi - root


def mo_optimal_fidelity(two_j: int, theta: float, problem: int = 2) -> RegimeReport:
    """Optimal classical-memory average fidelity, with the j = 1 dispatch.

    For j != 1 both problems share the covariant strategy at probe m = j.
    For j = 1, problem 2 switches to the m = 0 probe with a fixed pi flip
    when theta is within the computed threshold of pi.
    """
    if problem not in (1, 2):
        raise ValueError("problem must be 1 or 2")
    theta = float(theta) % (2.0 * math.pi)
    if two_j == 2 and problem == 2 and abs(theta - math.pi) <= j1_mo_threshold():
        return RegimeReport(problem=problem, regime="mo_j1_anomalous", optimal_two_m=0,
                            fidelity=anomalous_mo_fidelity(theta),
                            strategy=MOStrategy(two_j=2, two_m=0, xi_two_n=0,
                                                theta_prime=math.pi))
    tp = optimal_theta_prime(two_j, theta)
    return RegimeReport(problem=problem, regime="mo_covariant", optimal_two_m=two_j,
                        fidelity=mo_fopt_formula(two_j, theta, tp),
                        strategy=MOStrategy(two_j=two_j, two_m=two_j, xi_two_n=two_j,
                                            theta_prime=tp))


def mo_average_fidelity(two_j: int, theta: float, problem: int = 2) -> float:
    return mo_optimal_fidelity(two_j, theta, problem).fidelity


def _povm_outcome_offsets(two_j: int, two_m: int, xi_two_n: int, n_samples: int,
                          rng: np.random.Generator) -> np.ndarray:
    """Outcome rotations h relative to the true g, drawn from the POVM density.

    Rejection sampling: propose h Haar-uniform and accept with probability
    |<xi| U_h |j,m>|^2; the acceptance weight is the POVM density against the
    Haar proposal, so accepted samples follow the exact outcome distribution.
    """
    vals, vecs = spins._jy_eigensystem(two_j)
    row = spins.basis_index(two_j, xi_two_n)
    col = spins.basis_index(two_j, two_m)
    chunks = []
    have = 0
    while have < n_samples:
        batch = max(2 * (n_samples - have) * (two_j + 1), 128)
        q = rotations.haar_quaternions(rng, batch)
        _, beta, _ = rotations.euler_zyz_from_quaternion(q)
        phases = np.exp(-1j * np.multiply.outer(beta, vals))
        amp = np.einsum("k,nk,k->n", vecs[row], phases, vecs.conj()[col])
        accept = rng.uniform(0.0, 1.0, batch) < np.abs(amp) ** 2
        q = q[accept]
        chunks.append(q)
        have += q.shape[0]
    return np.concatenate(chunks, axis=0)[:n_samples]


def mo_mc_oracle(two_j: int, params: MOParams, theta: float, n_samples: int,
                 rng) -> FidelityEstimate:
    """Monte-Carlo estimate of the covariant MO average fidelity.

    Samples the training rotation Haar-uniformly and the measurement outcome
    from the covariant POVM density, then scores the conditional rotation
    against the target through the entangled-state overlap.  No closed-form
    overlap enters; this is the independent check on mo_element_fidelity.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = np.random.default_rng(rng)
    check_valid_m(two_j, params.two_m)
    check_valid_m(two_j, params.xi_two_n)
    q_g = rotations.haar_quaternions(rng, n_samples)
    q_h = _povm_outcome_offsets(two_j, params.two_m, params.xi_two_n, n_samples, rng)
    q_ghat = rotations.quat_multiply(q_g, q_h)
    v_target = rotations.conjugated_z_rotation(q_g, theta)
    v_cond = rotations.conjugated_z_rotation(q_ghat, params.theta_prime)
    tau = rotations.relative_rotation_angle(v_cond, v_target)
    fe_samples = np.cos(tau / 2.0) ** 2
    mean = float(np.mean(fe_samples))
    std = float(np.std(fe_samples, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    return FidelityEstimate(value=min(average_from_entanglement(mean, 2), 1.0),
                            std_error=(2.0 / 3.0) * std, n_samples=n_samples)


def sample_coherent_povm_outcomes(two_j: int, rng: np.random.Generator,
                                  q_g: np.ndarray) -> np.ndarray:
    """Exact outcome sampling for the coherent-state POVM given true rotations.

    The outcome is g. h with h drawn from the POVM density: uniform axial
    angles and cos^2(beta/2) distributed as W^(1/(2j+1)) for uniform W.
    """
    n = q_g.shape[0]
    alpha = rng.uniform(0.0, 2.0 * math.pi, n)
    gamma = rng.uniform(0.0, 2.0 * math.pi, n)
    x = rng.uniform(0.0, 1.0, n) ** (1.0 / (two_j + 1.0))  # cos^2(beta/2)
    beta = 2.0 * np.arccos(np.sqrt(x))
    half = beta / 2.0
    qa = np.stack([np.cos(alpha / 2), np.zeros(n), np.zeros(n), np.sin(alpha / 2)], axis=1)
    qb = np.stack([np.cos(half), np.zeros(n), np.sin(half), np.zeros(n)], axis=1)
    qc = np.stack([np.cos(gamma / 2), np.zeros(n), np.zeros(n), np.sin(gamma / 2)], axis=1)
    q_h = rotations.quat_multiply(rotations.quat_multiply(qa, qb), qc)
    return rotations.quat_multiply(q_g, q_h)


def _character_ratio(two_k: int, tau: np.ndarray) -> np.ndarray:
    """sin((2k+1) tau/2) / ((2k+1) sin(tau/2)) with the tau -> 0 limit handled."""
    d = two_k + 1.0
    half = tau / 2.0
    s = np.sin(half)
    small = np.abs(s) < 1e-8
    safe = np.where(small, 1.0, s)
    out = np.sin(d * half) / (d * safe)
    return np.where(small, np.cos(d * half) / np.cos(half), out)


def spin_k_mo_asymptote(two_j: int, two_k: int, theta: float) -> float:
    """Leading-order MO average fidelity for a spin-k target."""
    j = two_j / 2.0
    k = two_k / 2.0
    return 1.0 - 2.0 * k * (2.0 * k + 1.0) * (1.0 - math.cos(theta)) / (3.0 * j)


def spin_k_mo_fidelity(two_j: int, two_k: int, theta: float, n_samples: int,
                       rng) -> tuple[FidelityEstimate, float]:
    """Monte-Carlo spin-k MO fidelity and the leading-order asymptote.

    Strategy: coherent-state POVM on the memory, then rotate the spin-k
    target by theta about the estimated axis.  The per-outcome entanglement
    fidelity is |tr(V'^dag V)|^2 / (2k+1)^2, evaluated through the rotation
    character.
    """
    if two_k < 1:
        raise ValueError("target must be at least a qubit (two_k >= 1)")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = np.random.default_rng(rng)
    q_g = rotations.haar_quaternions(rng, n_samples)
    q_ghat = sample_coherent_povm_outcomes(two_j, rng, q_g)
    v_target = rotations.conjugated_z_rotation(q_g, theta)
    v_cond = rotations.conjugated_z_rotation(q_ghat, theta)
    tau = rotations.relative_rotation_angle(v_cond, v_target)
    fe_samples = _character_ratio(two_k, tau) ** 2
    mean = float(np.mean(fe_samples))
    std = float(np.std(fe_samples, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    d = two_k + 1
    scale = d / (d + 1.0)
    est = FidelityEstimate(value=min(average_from_entanglement(mean, d), 1.0),
                           std_error=scale * std, n_samples=n_samples)
    return est, spin_k_mo_asymptote(two_j, two_k, theta)


def bell_basis() -> np.ndarray:
    """Columns |Phi+>, i(sx(x)I)|Phi+>, i(sy(x)I)|Phi+>, i(sz(x)I)|Phi+>."""
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1.0 / math.sqrt(2.0)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    cols = [phi] + [1j * np.kron(s, eye) @ phi for s in (sx, sy, sz)]
    return np.stack(cols, axis=1)


def unital_bell_reality_check(choi: ChoiOperator, tol: float = 1e-9) -> bool:
    """True when the qubit channel's Choi matrix is real in the Bell basis,
    which holds exactly for unital channels."""
    if choi.dim_in != 2 or choi.dim_out != 2:
        raise ValueError("expects a qubit-to-qubit Choi operator")
    b = bell_basis()
    in_bell = b.conj().T @ choi.matrix @ b
    return bool(np.max(np.abs(in_bell.imag)) <= tol)
