"""Quantum states and channels: Choi operators, partial trace, fidelities.

Choi operators follow the trace-preservation convention Tr_out[C] = I_in
(total trace = dim_in).  The index layout is (input (x) output): the matrix
element C[(i,a),(j,b)] equals <a| N(|i><j|) |b> for a channel N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-10
POSITIVITY_TOL = 1e-10
CHOI_POSITIVITY_TOL = 1e-9
TRACE_PRESERVATION_TOL = 1e-9


def is_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def is_unitary(a: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    d = a.shape[0]
    return bool(np.max(np.abs(a.conj().T @ a - np.eye(d))) <= tol)


def min_eigenvalue(a: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0])


def is_positive_semidefinite(a: np.ndarray, tol: float = POSITIVITY_TOL) -> bool:
    return is_hermitian(a, tol) and min_eigenvalue(a) >= -tol


def is_density_matrix(rho: np.ndarray, tol: float = POSITIVITY_TOL) -> bool:
    return is_positive_semidefinite(rho, tol) and abs(np.trace(rho) - 1.0) <= tol


@dataclass(frozen=True)
class FidelityEstimate:
    """A fidelity value with Monte-Carlo error bars; n_samples == 0 is exact."""

    value: float
    std_error: float = 0.0
    n_samples: int = 0

    def __post_init__(self):
        if not -1e-9 <= self.value <= 1.0 + 1e-9:
            raise ValueError(f"fidelity {self.value} outside [0, 1]")
        if self.std_error < 0.0:
            raise ValueError("std_error must be non-negative")

    @classmethod
    def exact(cls, value: float) -> "FidelityEstimate":
        return cls(value=float(value), std_error=0.0, n_samples=0)

    def n_sigma(self, reference: float) -> float:
        """|value - reference| in units of the standard error."""
        if self.std_error == 0.0:
            return 0.0 if self.value == reference else float("inf")
        return abs(self.value - reference) / self.std_error


def partial_trace(rho: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep``.

    ``dims`` lists the subsystem dimensions in tensor order; ``keep`` is an
    iterable of subsystem indices retained in their original order.
    """
    dims = list(dims)
    n = len(dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"matrix shape {rho.shape} does not match dims {dims}")
    keep = sorted(set(keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError("keep indices out of range")
    traced = [i for i in range(n) if i not in keep]
    t = rho.reshape(dims + dims)
    for offset, ax in enumerate(traced):
        ax0 = ax - offset
        t = np.trace(t, axis1=ax0, axis2=ax0 + (n - offset))
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d_keep, d_keep)


def maximally_entangled(d: int) -> np.ndarray:
    """Canonical |Phi+> = sum_i |i,i> / sqrt(d) on a d x d bipartite space."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return v


@dataclass(frozen=True)
class ChoiOperator:
    """Choi matrix of a channel with Tr_out[C] = I_in."""

    matrix: np.ndarray
    dim_in: int
    dim_out: int

    def __post_init__(self):
        expected = self.dim_in * self.dim_out
        if self.matrix.shape != (expected, expected):
            raise ValueError("Choi matrix shape inconsistent with dims")

    def reshaped(self) -> np.ndarray:
        return self.matrix.reshape(self.dim_in, self.dim_out, self.dim_in, self.dim_out)

    def trace_out_output(self) -> np.ndarray:
        return np.einsum("iaja->ij", self.reshaped())

    def is_completely_positive(self, tol: float = CHOI_POSITIVITY_TOL) -> bool:
        return is_positive_semidefinite(self.matrix, tol)

    def is_trace_preserving(self, tol: float = TRACE_PRESERVATION_TOL) -> bool:
        return bool(np.max(np.abs(self.trace_out_output() - np.eye(self.dim_in))) <= tol)

    def validate(self, cp_tol: float = CHOI_POSITIVITY_TOL,
                 tp_tol: float = TRACE_PRESERVATION_TOL) -> None:
        if not self.is_completely_positive(cp_tol):
            raise ValueError(f"Choi operator not CP (min eig {min_eigenvalue(self.matrix):.3e})")
        if not self.is_trace_preserving(tp_tol):
            resid = np.max(np.abs(self.trace_out_output() - np.eye(self.dim_in)))
            raise ValueError(f"Choi operator not TP (residual {resid:.3e})")


def apply_choi(choi: ChoiOperator, rho: np.ndarray) -> np.ndarray:
    """Channel action N(rho) = Tr_in[(rho^T (x) I) C]."""
    if rho.shape != (choi.dim_in, choi.dim_in):
        raise ValueError(f"state dimension {rho.shape} does not match dim_in={choi.dim_in}")
    return np.einsum("ij,iajb->ab", rho, choi.reshaped())


def choi_from_kraus(kraus, dim_in: int, dim_out: int) -> ChoiOperator:
    mat = np.zeros((dim_in * dim_out, dim_in * dim_out), dtype=complex)
    for k in kraus:
        v = np.ascontiguousarray(k.T).reshape(-1)  # index (i, a) = K[a, i]
        mat += np.outer(v, v.conj())
    return ChoiOperator(matrix=mat, dim_in=dim_in, dim_out=dim_out)


def kraus_from_choi(choi: ChoiOperator, tol: float = 1e-12) -> list[np.ndarray]:
    """Kraus operators from the Choi eigendecomposition (Stinespring form)."""
    vals, vecs = np.linalg.eigh(0.5 * (choi.matrix + choi.matrix.conj().T))
    ops = []
    for lam, v in zip(vals, vecs.T):
        if lam > tol:
            ops.append(np.sqrt(lam) * v.reshape(choi.dim_in, choi.dim_out).T)
    return ops


@dataclass(frozen=True)
class KrausChannel:
    """A channel given by an explicit Kraus decomposition."""

    kraus: tuple
    dim_in: int
    dim_out: int

    @classmethod
    def from_operators(cls, ops) -> "KrausChannel":
        ops = tuple(np.asarray(k, dtype=complex) for k in ops)
        dim_out, dim_in = ops[0].shape
        return cls(kraus=ops, dim_in=dim_in, dim_out=dim_out)

    @classmethod
    def from_unitary_with_trace(cls, unitary: np.ndarray, dim_keep: int) -> "KrausChannel":
        """Stinespring channel: apply ``unitary`` then trace out the leading factor.

        The input space factors as (traced (x) kept) with the kept factor of
        dimension ``dim_keep`` last.
        """
        total = unitary.shape[0]
        d_tr = total // dim_keep
        u = unitary.reshape(d_tr, dim_keep, total)
        return cls(kraus=tuple(u[i] for i in range(d_tr)), dim_in=total, dim_out=dim_keep)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        out = np.zeros((self.dim_out, self.dim_out), dtype=complex)
        for k in self.kraus:
            out += k @ rho @ k.conj().T
        return out

    def to_choi(self) -> ChoiOperator:
        return choi_from_kraus(self.kraus, self.dim_in, self.dim_out)


def identity_choi(d: int) -> ChoiOperator:
    phi = maximally_entangled(d)
    return ChoiOperator(matrix=d * np.outer(phi, phi.conj()), dim_in=d, dim_out=d)


def average_from_entanglement(fe: float, target_dim: int) -> float:
    """Average gate fidelity (d*fe + 1)/(d + 1) from the entanglement fidelity."""
    return (target_dim * fe + 1.0) / (target_dim + 1.0)


def entanglement_from_average(favg: float, target_dim: int) -> float:
    return ((target_dim + 1.0) * favg - 1.0) / target_dim


def entanglement_fidelity(channel: KrausChannel, probe_state: np.ndarray,
                          target_unitary: np.ndarray) -> FidelityEstimate:
    """Exact entanglement fidelity of ``channel`` against ``target_unitary``.

    The channel maps (probe (x) target) to target; the target slot is fed
    half of a canonical maximally entangled pair and the output is compared
    with the gate acting on that half.
    """
    d_t = target_unitary.shape[0]
    d_p = channel.dim_in // d_t
    if channel.dim_in != d_p * d_t or channel.dim_out != d_t:
        raise ValueError("channel dimensions inconsistent with probe/target split")
    if probe_state.shape != (d_p,):
        raise ValueError("probe state has wrong dimension")
    phi = maximally_entangled(d_t)
    psi_in = np.einsum("p,tr->ptr", probe_state, phi.reshape(d_t, d_t)).reshape(-1)
    phi_v = (np.kron(target_unitary, np.eye(d_t)) @ phi)
    fe = 0.0
    psi_mat = psi_in.reshape(d_p * d_t, d_t)
    for k in channel.kraus:
        out = k @ psi_mat  # (d_t, d_t_ref)
        fe += abs(np.vdot(phi_v, out.reshape(-1))) ** 2
    return FidelityEstimate.exact(min(fe, 1.0))
