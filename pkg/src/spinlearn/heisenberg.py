"""Isotropic spin-spin interaction gates and their gate-learning fidelities.

The memory spin j and the target spin k interact through the rotationally
invariant coupling J.K; the gate is diagonal on total-spin blocks, which
makes its action cheap at any j.  For a qubit target the interaction angle
is the optimised function f(theta); for larger targets the angle is theta
itself (the large-j heuristic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import spins
from .channels import KrausChannel, average_from_entanglement
from .rotations import Rotation
from .spins import check_two_j, check_valid_m, clebsch_gordan, dim, two_m_values


def f_angle(two_j: int, theta: float) -> float:
    """Optimal interaction angle for a qubit target.

    Branch-safe two-argument-arctangent form of
    arccot[cot(theta) + 1/((2j+1) sin(theta))] + s(theta), continuous on
    (0, 2pi) and equal to 0 at theta = 0.
    """
    check_two_j(two_j)
    n = two_j + 1  # 2j + 1
    ang = math.atan2(n * math.sin(theta), n * math.cos(theta) + 1.0)
    return ang % (2.0 * math.pi)


def interaction_time(two_j: int, theta: float, coupling_alpha: float,
                     hbar: float = 1.0) -> float:
    """Evolution time t = f(theta) / ((2j+1) alpha hbar) realizing the gate."""
    if coupling_alpha <= 0:
        raise ValueError("coupling constant must be positive")
    return f_angle(two_j, theta) / ((two_j + 1) * coupling_alpha * hbar)


@lru_cache(maxsize=None)
def _coupling_sectors(two_j: int, two_k: int):
    """Per total-M sectors of the (j, k) product basis.

    Each sector is (pair_indices, two_t_list, G) with G[t, pair] the
    Clebsch-Gordan coefficient <j m; k mu | t M>.
    """
    check_two_j(two_j)
    check_two_j(two_k)
    dk = dim(two_k)
    two_ms = two_m_values(two_j)
    two_mus = two_m_values(two_k)
    sectors = {}
    for i1, tm in enumerate(two_ms):
        for i2, tmu in enumerate(two_mus):
            sectors.setdefault(tm + tmu, []).append((i1 * dk + i2, tm, tmu))
    out = []
    for two_M, entries in sectors.items():
        idx = np.array([e[0] for e in entries])
        two_ts = [t for t in range(abs(two_j - two_k), two_j + two_k + 2, 2)
                  if abs(two_M) <= t]
        g = np.array([[clebsch_gordan(two_j, tm, two_k, tmu, tt, two_M)
                       for (_, tm, tmu) in entries] for tt in two_ts])
        out.append((idx, np.array(two_ts), g))
    return tuple(out)


def _block_phases(two_j: int, two_k: int, two_ts: np.ndarray, angle: float) -> np.ndarray:
    # eigenvalue of 2 J.K on the total-spin-t block
    tt = two_ts / 2.0
    j = two_j / 2.0
    k = two_k / 2.0
    eig = tt * (tt + 1.0) - j * (j + 1.0) - k * (k + 1.0)
    return np.exp(-1j * angle * eig / (two_j + 1.0))


@dataclass(frozen=True)
class HeisenbergGate:
    """Unitary exp[-i * angle * 2 J.K / (2j+1)] on the (j (x) k) space."""

    two_j: int
    two_k: int
    theta: float
    angle: float  # resolved interaction angle (f(theta) for a qubit target)

    @property
    def dim_total(self) -> int:
        return dim(self.two_j) * dim(self.two_k)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Apply the gate to vectors with the product index on the last axis."""
        out = np.array(vec, dtype=complex, copy=True)
        for idx, two_ts, g in _coupling_sectors(self.two_j, self.two_k):
            phases = _block_phases(self.two_j, self.two_k, two_ts, self.angle)
            amps = out[..., idx]
            w = np.einsum("...p,tp->...t", amps, g) * phases
            out[..., idx] = np.einsum("...t,tp->...p", w, g)
        return out

    def matrix(self) -> np.ndarray:
        return self.apply(np.eye(self.dim_total, dtype=complex)).T

    def as_channel(self) -> KrausChannel:
        """Interact then trace out the memory: Kraus form of the learning channel."""
        return KrausChannel.from_unitary_with_trace(self.matrix(), dim(self.two_k))


def heisenberg_unitary(two_j: int, two_k: int, theta: float,
                       f_override: float | None = None) -> HeisenbergGate:
    if f_override is not None:
        angle = float(f_override)
    elif two_k == 1:
        angle = f_angle(two_j, theta)
    else:
        angle = float(theta)
    return HeisenbergGate(two_j=two_j, two_k=two_k, theta=float(theta), angle=angle)


def _u_coefficients(two_j: int, two_m: int, angle: float) -> tuple[complex, complex, complex, complex]:
    """Amplitudes of the gate on |j,m>|up> and |j,m>|down> (qubit target).

    Returns (u_plus, w_plus, u_minus, w_minus):
      U |j,m>|up>   = u_plus |j,m>|up>  + w_plus |j,m+1>|down>
      U |j,m>|down> = u_minus |j,m>|down> + w_minus |j,m-1>|up>
    up to the global phase of the gate.
    """
    j = two_j / 2.0
    m = two_m / 2.0
    n = two_j + 1.0
    e = np.exp(-1j * angle)
    u_plus = (e * (j + m + 1.0) + (j - m)) / n
    w_plus = (e - 1.0) * math.sqrt(max((j - m) * (j + m + 1.0), 0.0)) / n
    u_minus = (e * (j - m + 1.0) + (j + m)) / n
    w_minus = (e - 1.0) * math.sqrt(max((j + m) * (j - m + 1.0), 0.0)) / n
    return u_plus, w_plus, u_minus, w_minus


def entanglement_fidelity_given_m(two_j: int, two_m: int, theta: float,
                                  f_override: float | None = None) -> float:
    """Exact entanglement fidelity of the gate with memory state |j,m>_g.

    Evaluates the two-block spectral action in closed form; identical to
    feeding the explicit channel through the generic entanglement-fidelity
    computation.
    """
    check_valid_m(two_j, two_m)
    angle = f_angle(two_j, theta) if f_override is None else f_override
    u_plus, _, u_minus, _ = _u_coefficients(two_j, two_m, angle)
    cross = np.exp(1j * theta) * u_plus * np.conj(u_minus)
    return float(0.25 * (abs(u_plus) ** 2 + abs(u_minus) ** 2 + 2.0 * cross.real))


def heisenberg_entanglement_fidelity(two_j: int, theta: float,
                                     f_override: float | None = None) -> float:
    """Closed-form entanglement fidelity of the optimal-coupling realization."""
    check_two_j(two_j)
    j = two_j / 2.0
    f = f_angle(two_j, theta) if f_override is None else f_override
    n = 1.0 + 2.0 * j
    return (
        1.0 + 2.0 * j + 4.0 * j * j
        + 2.0 * j * math.cos(f)
        + n * math.cos(theta)
        + 2.0 * j * n * math.cos(theta - f)
    ) / (2.0 * n * n)


def heisenberg_average_fidelity(two_j: int, theta: float,
                                f_override: float | None = None) -> float:
    return average_from_entanglement(
        heisenberg_entanglement_fidelity(two_j, theta, f_override), 2)


def per_input_fidelity(two_j: int, theta: float, polar: float, azimuth: float = 0.0,
                       g: Rotation | None = None) -> float:
    """Exact fidelity for one target state at polar/azimuth angles from the axis.

    The memory holds the coherent state along the (possibly rotated) axis; the
    target state is parameterized relative to that axis.
    """
    gate = heisenberg_unitary(two_j, 1, theta)
    psi = np.array([math.cos(polar / 2.0),
                    np.exp(1j * azimuth) * math.sin(polar / 2.0)], dtype=complex)
    if g is None:
        probe = np.zeros(dim(two_j), dtype=complex)
        probe[0] = 1.0
        vg = Rotation.identity().qubit_unitary()
    else:
        probe = spins.coherent_state(two_j, g)
        vg = g.qubit_unitary()
        psi = vg @ psi  # state given at fixed angles from the rotated axis
    v_theta = np.diag(np.exp(-0.5j * theta * np.array([1.0, -1.0])))
    target = vg @ v_theta @ vg.conj().T @ psi
    out = gate.apply(np.kron(probe, psi)).reshape(dim(two_j), 2)
    return float(np.sum(np.abs(out @ target.conj()) ** 2))


def _golden_minimize(fun, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    x = 0.5 * (a + b)
    return x, fun(x)


def worst_case_fidelity(two_j: int, theta: float,
                        azimuth_check_tol: float = 1e-9) -> tuple[float, float]:
    """Minimum per-input fidelity and the minimizing polar angle.

    Asserts azimuth independence numerically at 8 azimuths, then runs a
    golden-section search over the polar angle on a coarse-grid bracket.
    """
    probe_polar = math.pi / 2.0
    ref = per_input_fidelity(two_j, theta, probe_polar, 0.0)
    for az in np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False):
        if abs(per_input_fidelity(two_j, theta, probe_polar, az) - ref) > azimuth_check_tol:
            raise AssertionError("per-input fidelity depends on azimuth")

    grid = np.linspace(0.0, math.pi, 65)
    vals = [per_input_fidelity(two_j, theta, a) for a in grid]
    i = int(np.argmin(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    x, fx = _golden_minimize(lambda a: per_input_fidelity(two_j, theta, a), lo, hi)
    if vals[i] < fx:
        x, fx = grid[i], vals[i]
    return float(fx), float(x)


def spin_k_entanglement_fidelity_exact(two_j: int, two_k: int, theta: float) -> float:
    """Entanglement fidelity of the spin-k gate on the maximally entangled state."""
    gate = heisenberg_unitary(two_j, two_k, theta)
    dp, dk = dim(two_j), dim(two_k)
    vec = np.zeros((dk, dp * dk), dtype=complex)  # reference index first
    for r in range(dk):
        v = np.zeros((dp, dk), dtype=complex)
        v[0, r] = 1.0 / math.sqrt(dk)
        vec[r] = v.reshape(-1)
    out = gate.apply(vec).reshape(dk, dp, dk).transpose(1, 2, 0)  # (probe, target, ref)
    mu = spins.m_values(two_k)
    phi_theta = np.diag(np.exp(-1j * theta * mu)) / math.sqrt(dk)  # (target, ref)
    overlaps = np.einsum("ptr,tr->p", out, phi_theta.conj())
    return float(np.sum(np.abs(overlaps) ** 2))


def spin_k_fidelity(two_j: int, two_k: int, theta: float, mode: str = "exact") -> float:
    """Average fidelity for rotating a spin-k target, exact or leading order."""
    if two_k < 1:
        raise ValueError("target must be at least a qubit (two_k >= 1)")
    k = two_k / 2.0
    j = two_j / 2.0
    if mode == "exact":
        fe = spin_k_entanglement_fidelity_exact(two_j, two_k, theta)
        return average_from_entanglement(fe, dim(two_k))
    if mode == "asymptotic":
        return 1.0 - k * (2.0 * k + 1.0) * (1.0 - math.cos(theta)) / (3.0 * j)
    raise ValueError(f"unknown mode {mode!r}")


def spin_k_worst_case_asymptotic(two_j: int, two_k: int, theta: float) -> float:
    """Leading-order worst-case fidelity; the constant c(k) is defined for integer k."""
    if two_k % 2 != 0:
        raise ValueError("worst-case constant is only defined for integer k")
    k = two_k // 2
    c = 0.0 if k % 2 == 0 else 0.25
    j = two_j / 2.0
    return 1.0 - (k * (k + 1.0) + c) * (1.0 - math.cos(theta)) / j
