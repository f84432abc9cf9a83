"""Optimal quantum strategies from the covariant-channel parameterization.

The learning channel's Choi operator lives on (probe-in (x) out (x) qubit-in);
after absorbing the conjugate representations it block-diagonalizes over the
total spin, leaving two scalars (alpha, beta) on the stretched/shrunk blocks
and a 2x2 matrix M on the doubly-degenerate spin-j block.  Everything here is
written in those coordinates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import heisenberg, spins
from .channels import ChoiOperator, KrausChannel, average_from_entanglement, kraus_from_choi
from .spins import CouplingCoeffs, check_valid_m, coupling_decomposition, dim
from .strategies import (
    CaseChoiStrategy,
    DiscreteXYZ,
    HeisenbergStrategy,
    StrategyDescriptor,
    UNotMixture,
)

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class CaseNotApplicableError(ValueError):
    """Raised when a stationary case does not exist for the given spin/angle."""


@dataclass(frozen=True)
class CovariantChoiParams:
    """Block coordinates (alpha, beta, M) of a covariant learning channel.

    ``beta`` is None for two_j == 1, where the spin j-1 block does not exist
    and the second trace-preservation constraint degenerates.
    """

    alpha: float
    beta: float | None
    m_matrix: np.ndarray

    def m_diag(self) -> tuple[float, float]:
        return float(self.m_matrix[0, 0].real), float(self.m_matrix[1, 1].real)


def tp_residuals(params: CovariantChoiParams, two_j: int) -> tuple[float, float]:
    """Residuals of the two trace-preservation constraints (second is the
    degenerate one-block form when two_j == 1)."""
    j = two_j / 2.0
    t_plus, t_minus = params.m_diag()
    r1 = (2 * j + 3) / (2 * j + 2) * params.alpha + (2 * j + 1) / (2 * j + 2) * t_plus - 1.0
    if two_j == 1:
        r2 = (2 * j + 1) / (2 * j) * t_minus - 1.0
    else:
        r2 = (2 * j - 1) / (2 * j) * params.beta + (2 * j + 1) / (2 * j) * t_minus - 1.0
    return float(r1), float(r2)


def validate_params(params: CovariantChoiParams, two_j: int, tol: float = 1e-9) -> None:
    r1, r2 = tp_residuals(params, two_j)
    if abs(r1) > tol or abs(r2) > tol:
        raise ValueError(f"trace-preservation constraints violated: {r1:.2e}, {r2:.2e}")
    if params.alpha < -tol or (params.beta is not None and params.beta < -tol):
        raise ValueError("block weights must be non-negative")
    eigs = np.linalg.eigvalsh(0.5 * (params.m_matrix + params.m_matrix.conj().T))
    if eigs[0] < -tol:
        raise ValueError(f"M is not positive semidefinite (min eig {eigs[0]:.2e})")


@dataclass(frozen=True)
class RegimeReport:
    problem: int
    regime: str
    optimal_two_m: int
    fidelity: float
    strategy: StrategyDescriptor

    def __post_init__(self):
        if not (1.0 / 3.0 - 1e-12 <= self.fidelity <= 1.0 + 1e-12):
            raise ValueError(f"fidelity {self.fidelity} outside [1/3, 1]")


# ---------------------------------------------------------------------------
# Coupled basis on (probe, out, in), matched to the block-coefficient phases
# ---------------------------------------------------------------------------

def _phi_star(theta: float) -> np.ndarray:
    """(I (x) -i sy)(V_theta (x) I)|Phi+> as a (2, 2) array over (out, in)."""
    out = np.zeros((2, 2), dtype=complex)
    out[0, 1] = cmath.exp(-0.5j * theta) / math.sqrt(2.0)
    out[1, 0] = -cmath.exp(0.5j * theta) / math.sqrt(2.0)
    return out


def _raw_total_family(two_j: int, two_k_route: int, two_t: int) -> np.ndarray:
    """Vectors |T,M> built by coupling (probe, in) -> K_route, then with out.

    Returns a (2T+1, (2j+1)*4) array over total M descending; components are
    laid out on (probe, out, in).
    """
    dp = dim(two_j)
    inner = spins._pair_coupling_table(two_j, 1, two_k_route)       # (K, probe, in)
    outer = spins._pair_coupling_table(two_k_route, 1, two_t)       # (T, K, out)
    fam = np.einsum("tks,kpi->tpsi", outer, inner)
    return fam.reshape(dim(two_t), dp * 4)


def _test_vector(two_j: int, two_m: int, theta: float) -> np.ndarray:
    vec = np.zeros((dim(two_j), 2, 2), dtype=complex)
    vec[spins.basis_index(two_j, -two_m)] = _phi_star(theta)
    return vec.reshape(-1)


def decomposition_overlaps(two_j: int, two_m: int, theta: float) -> np.ndarray:
    """Expansion of |j,-m> (x) |Phi*_theta> in the route basis: (a, b, q+, q-).

    Oracle counterpart of coupling_decomposition.  The (a, b) entries match
    its output directly; (q+, q-) are the complex conjugates of its
    (c_plus, c_minus), which are expressed in the conjugate multiplicity
    basis.
    """
    basis = _coupled_basis(two_j)
    v = _test_vector(two_j, two_m, theta)

    def ov(fam, two_t):
        if fam is None or abs(two_m) > two_t:
            return 0.0 + 0.0j
        return np.vdot(fam[(two_t + two_m) // 2], v)  # row of M = -m

    return np.array([
        ov(basis["top"], two_j + 2),
        ov(basis["bottom"], two_j - 2),
        ov(basis["plus"], two_j),
        ov(basis["minus"], two_j),
    ])


@lru_cache(maxsize=None)
def _coupled_basis(two_j: int) -> dict:
    """Total-spin families on (probe, out, in), coupling (probe, in) first.

    The spin-j multiplicity pair ("plus" via K = j+1/2, "minus" via
    K = j-1/2) is kept real; in it the block trace over the output qubit is
    diagonal, which is what makes the two trace-preservation constraints
    block-local.  The stretched/shrunk families carry the phases of the a, b
    amplitudes of coupling_decomposition (verified at build time).
    """
    fam_top = _raw_total_family(two_j, two_j + 1, two_j + 2).astype(complex)
    fam_plus = _raw_total_family(two_j, two_j + 1, two_j)
    fam_minus = _raw_total_family(two_j, two_j - 1, two_j)
    fam_bottom = (_raw_total_family(two_j, two_j - 1, two_j - 2).astype(complex)
                  if two_j >= 2 else None)

    def row(fam, two_t, two_m):
        return fam[(two_t + two_m) // 2]  # index of M = -m in descending order

    theta_a = 1.1
    two_m1 = two_j
    v1 = _test_vector(two_j, two_m1, theta_a)
    coeff1 = coupling_decomposition(two_j, two_m1, theta_a)
    qa = np.vdot(row(fam_top, two_j + 2, two_m1), v1)
    fam_top *= np.conj(coeff1.a / qa)
    if fam_bottom is not None:
        two_m2 = two_j - 2
        v2 = _test_vector(two_j, two_m2, theta_a)
        coeff2 = coupling_decomposition(two_j, two_m2, theta_a)
        qb = np.vdot(row(fam_bottom, two_j - 2, two_m2), v2)
        fam_bottom *= np.conj(coeff2.b / qb)

    # consistency of the multiplicity pair: overlaps conjugate the c's
    for tm, th in ((two_m1, theta_a), (two_m1, 2.2), (max(-two_j, two_j - 2), 2.2)):
        v = _test_vector(two_j, tm, th)
        coeff = coupling_decomposition(two_j, tm, th)
        qp = np.vdot(row(fam_plus, two_j, tm), v)
        qm = np.vdot(row(fam_minus, two_j, tm), v)
        if (abs(qp - np.conj(coeff.c_plus)) > 1e-10
                or abs(qm - np.conj(coeff.c_minus)) > 1e-10):
            raise AssertionError("multiplicity basis does not match the block coefficients")

    out = {"top": fam_top, "plus": fam_plus, "minus": fam_minus, "bottom": fam_bottom}
    for fam in out.values():
        if fam is not None:
            fam.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _conjugation_operator(two_j: int) -> np.ndarray:
    """e^{i pi Jy} (x) I (x) sy, mapping block coordinates back to the Choi."""
    ry = spins.rotation_y_irrep(two_j, math.pi).conj().T  # e^{+i pi Jy}
    op = np.kron(np.kron(ry, PAULI["i"]), PAULI["y"])
    op.setflags(write=False)
    return op


def covariant_choi_build(params: CovariantChoiParams, two_j: int) -> ChoiOperator:
    """Assemble the Choi operator of the covariant channel with the given blocks.

    Returns it in the standard (input = probe (x) qubit, output = qubit)
    layout with Tr_out = I_in; raises if the parameters violate CP or TP.
    """
    validate_params(params, two_j)
    basis = _coupled_basis(two_j)
    dp = dim(two_j)
    d_total = dp * 4
    c_star = np.zeros((d_total, d_total), dtype=complex)
    c_star += params.alpha * basis["top"].T @ basis["top"].conj()
    if basis["bottom"] is not None and params.beta:
        c_star += params.beta * basis["bottom"].T @ basis["bottom"].conj()
    # M is expressed in the conjugate multiplicity convention used by the
    # block coefficients; on the real route basis its entries conjugate.
    # Fidelities are invariant.
    m_build = np.conj(params.m_matrix)
    fams = (basis["plus"], basis["minus"])
    for r in range(2):
        for s in range(2):
            if m_build[r, s] != 0.0:
                c_star += m_build[r, s] * fams[r].T @ fams[s].conj()

    e_op = _conjugation_operator(two_j)
    c_mat = e_op @ c_star @ e_op.conj().T
    # reorder slots (probe, out, in) -> ((probe, in), out)
    c_mat = (
        c_mat.reshape(dp, 2, 2, dp, 2, 2)
        .transpose(0, 2, 1, 3, 5, 4)
        .reshape(d_total, d_total)
    )
    choi = ChoiOperator(matrix=c_mat, dim_in=dp * 2, dim_out=2)
    choi.validate()
    return choi


def covariant_fidelity(params: CovariantChoiParams, two_j: int, two_m: int,
                       theta: float) -> float:
    """Entanglement fidelity (alpha |a|^2 + beta |b|^2 + <c|M|c>) / 2."""
    check_valid_m(two_j, two_m)
    coeff = coupling_decomposition(two_j, two_m, theta)
    c_vec = np.array([coeff.c_plus, coeff.c_minus])
    val = params.alpha * abs(coeff.a) ** 2
    if params.beta is not None:
        val += params.beta * abs(coeff.b) ** 2
    val += float(np.real(c_vec.conj() @ params.m_matrix @ c_vec))
    return 0.5 * val


def _rank_one_m(t_plus: float, t_minus: float, coeff: CouplingCoeffs) -> np.ndarray:
    """Rank-one M with the given diagonal and the fidelity-maximizing phase."""
    cross = np.conj(coeff.c_plus) * coeff.c_minus
    eta = cmath.phase(cross) if abs(cross) > 0 else 0.0
    v = np.array([math.sqrt(max(t_plus, 0.0)),
                  math.sqrt(max(t_minus, 0.0)) * cmath.exp(1j * eta)])
    return np.outer(v, v.conj())


def _t_minus_pinned(two_j: int) -> float:
    return two_j / (two_j + 1.0)  # 2j / (2j+1)


def _t_plus_max(two_j: int) -> float:
    return (two_j + 2.0) / (two_j + 1.0)  # (2j+2) / (2j+1)


def _alpha_from_t_plus(two_j: int, t_plus: float) -> float:
    return ((two_j + 2.0) - (two_j + 1.0) * t_plus) / (two_j + 3.0)


def _beta_from_t_minus(two_j: int, t_minus: float) -> float:
    return (two_j - (two_j + 1.0) * t_minus) / (two_j - 1.0)


def case_fidelity(case: int, two_j: int, two_m: int, theta: float
                  ) -> tuple[float, CovariantChoiParams]:
    """Stationary-point entanglement fidelity and parameters for one Lagrange case.

    Case 1: alpha = beta = 0, rank-one M saturating both constraints.
    Case 2: beta = 0, the shrunk-block weight rides on the stretched block.
    Case 3: alpha, beta at their maxima, M = 0 (needs two_j >= 2).
    Case 4: alpha = 0 mirror of case 2 (needs two_j >= 2); never optimal.
    """
    check_valid_m(two_j, two_m)
    coeff = coupling_decomposition(two_j, two_m, theta)
    j = two_j / 2.0
    if case == 1:
        m = _rank_one_m(_t_plus_max(two_j), _t_minus_pinned(two_j), coeff)
        params = CovariantChoiParams(alpha=0.0, beta=None if two_j == 1 else 0.0, m_matrix=m)
    elif case == 2:
        d2 = (2 * j + 1) / (2 * j + 3) * abs(coeff.a) ** 2 - abs(coeff.c_plus) ** 2
        if d2 <= 1e-14:
            raise CaseNotApplicableError("case 2 stationary point does not exist here")
        v_plus = math.sqrt(_t_minus_pinned(two_j)) * abs(coeff.c_plus * coeff.c_minus) / d2
        t_plus = v_plus**2
        alpha = _alpha_from_t_plus(two_j, t_plus)
        if alpha < -1e-12:
            raise CaseNotApplicableError("case 2 weight alpha is negative here")
        m = _rank_one_m(t_plus, _t_minus_pinned(two_j), coeff)
        params = CovariantChoiParams(alpha=max(alpha, 0.0),
                                     beta=None if two_j == 1 else 0.0, m_matrix=m)
    elif case == 3:
        if two_j < 2:
            raise CaseNotApplicableError("case 3 requires a spin j-1 block")
        params = CovariantChoiParams(alpha=(2 * j + 2) / (2 * j + 3),
                                     beta=2 * j / (2 * j - 1),
                                     m_matrix=np.zeros((2, 2), dtype=complex))
    elif case == 4:
        if two_j < 2:
            raise CaseNotApplicableError("case 4 requires a spin j-1 block")
        d4 = (2 * j + 1) / (2 * j - 1) * abs(coeff.b) ** 2 - abs(coeff.c_minus) ** 2
        if d4 <= 1e-14:
            raise CaseNotApplicableError("case 4 stationary point does not exist here")
        v_minus = math.sqrt(_t_plus_max(two_j)) * abs(coeff.c_plus * coeff.c_minus) / d4
        t_minus = v_minus**2
        beta = _beta_from_t_minus(two_j, t_minus)
        if beta < -1e-12:
            raise CaseNotApplicableError("case 4 weight beta is negative here")
        m = _rank_one_m(_t_plus_max(two_j), t_minus, coeff)
        params = CovariantChoiParams(alpha=0.0, beta=max(beta, 0.0), m_matrix=m)
    else:
        raise ValueError(f"unknown case {case}")
    return covariant_fidelity(params, two_j, two_m, theta), params


def case1_entanglement_fidelity(two_j: int, two_m: int, theta: float) -> float:
    """Closed form of the case-1 fidelity, (|A| + |B|)^2 / (2j+1)^2."""
    j = two_j / 2.0
    m = two_m / 2.0
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    a_mag = abs(complex(c * (j + 1.0), s * m))
    b_mag = abs(complex(c * j, -s * m))
    return (a_mag + b_mag) ** 2 / (2 * j + 1) ** 2


def case2_alpha(theta: float) -> float:
    """Weight of the stretched block in the j = 1/2 case-2 mixture."""
    c = math.cos(theta)
    return (1.0 + 8.0 * c + 9.0 * c * c) / (3.0 * (1.0 + 2.0 * c) ** 2)


def _bisect(fun, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    flo = fun(lo)
    fhi = fun(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("bisection endpoints do not bracket a root")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = fun(mid)
        if fmid == 0.0 or hi - lo < tol:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=1)
def delta_half() -> float:
    """Distance |theta - pi| where the j=1/2 strategy transition occurs.

    Found by bisecting the case-2 measurement weight alpha(theta), which
    crosses zero at the transition (the case-1/case-2 fidelities merge there
    tangentially, so the weight is the transversal root to hunt).
    """
    root = _bisect(lambda th: 9.0 * math.cos(th) ** 2 + 8.0 * math.cos(th) + 1.0,
                   2.0, 2.8, tol=1e-13)
    return math.pi - root


@lru_cache(maxsize=1)
def delta_one() -> float:
    """Distance |theta - pi| where case 3 overtakes case 1 for j = 1."""

    def gap(th: float) -> float:
        fe1 = case1_entanglement_fidelity(2, 2, th)
        fe3 = case_fidelity(3, 2, 0, th)[0]
        return fe1 - fe3

    root = _bisect(gap, 2.0, math.pi - 1e-12, tol=1e-12)
    return math.pi - root


def optimal_fidelity(two_j: int, theta: float, problem: int = 2) -> RegimeReport:
    """Optimal average fidelity with a quantum memory, with regime dispatch.

    Problem 1 fixes the probe to the aligned coherent state; problem 2 also
    optimizes the probe.  They differ only for j = 1 near theta = pi.
    """
    if problem not in (1, 2):
        raise ValueError("problem must be 1 or 2")
    theta = float(theta) % (2.0 * math.pi)
    dist = abs(theta - math.pi)

    if two_j == 1 and dist <= delta_half():
        fe, _ = case_fidelity(2, 1, 1, theta)
        return RegimeReport(problem=problem, regime="case2_mixture", optimal_two_m=1,
                            fidelity=average_from_entanglement(fe, 2),
                            strategy=UNotMixture(alpha=case2_alpha(theta)))
    if two_j == 2 and problem == 2 and dist <= delta_one():
        fe = case_fidelity(3, 2, 0, theta)[0]
        return RegimeReport(problem=problem, regime="j1_anomalous_problem2",
                            optimal_two_m=0,
                            fidelity=average_from_entanglement(fe, 2),
                            strategy=DiscreteXYZ())
    fe = case1_entanglement_fidelity(two_j, two_j, theta)
    return RegimeReport(problem=problem, regime="case1", optimal_two_m=two_j,
                        fidelity=average_from_entanglement(fe, 2),
                        strategy=HeisenbergStrategy(two_j=two_j))


def optimal_average_fidelity(two_j: int, theta: float, problem: int = 2) -> float:
    return optimal_fidelity(two_j, theta, problem).fidelity


def brute_force_optimum(two_j: int, two_m: int, theta: float,
                        grid_resolution: int = 64) -> float:
    """Grid-plus-refinement maximization of the covariant fidelity.

    Searches the trace-preservation polytope in the block diagonal
    coordinates (t+, t-) with the rank-one off-diagonal phase optimized
    analytically; deterministic by construction.
    """
    if grid_resolution < 16:
        raise ValueError("grid_resolution must be at least 16")
    coeff = coupling_decomposition(two_j, two_m, theta)
    a2 = abs(coeff.a) ** 2
    b2 = abs(coeff.b) ** 2
    cp = abs(coeff.c_plus)
    cm = abs(coeff.c_minus)
    t_plus_max = _t_plus_max(two_j)
    t_minus_max = _t_minus_pinned(two_j)

    if two_j == 1:
        def fe(tp: float, tm: float) -> float:
            return 0.5 * (_alpha_from_t_plus(two_j, tp) * a2
                          + (math.sqrt(tp) * cp + math.sqrt(tm) * cm) ** 2)

        grid = np.linspace(0.0, t_plus_max, grid_resolution)
        vals = [fe(t, t_minus_max) for t in grid]
        i = int(np.argmax(vals))
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
        x, fx = heisenberg._golden_minimize(lambda t: -fe(t, t_minus_max), lo, hi, tol=1e-12)
        return max(-fx, vals[i])

    def fe(tp: float, tm: float) -> float:
        return 0.5 * (_alpha_from_t_plus(two_j, tp) * a2
                      + _beta_from_t_minus(two_j, tm) * b2
                      + (math.sqrt(tp) * cp + math.sqrt(tm) * cm) ** 2)

    tps = np.linspace(0.0, t_plus_max, grid_resolution)
    tms = np.linspace(0.0, t_minus_max, grid_resolution)
    vals = np.array([[fe(tp, tm) for tm in tms] for tp in tps])
    ip, im = np.unravel_index(np.argmax(vals), vals.shape)
    tp, tm = tps[ip], tms[im]
    best = vals[ip, im]
    span_p = tps[1] - tps[0]
    span_m = tms[1] - tms[0]
    for _ in range(6):
        tp, neg = heisenberg._golden_minimize(
            lambda t: -fe(t, tm), max(tp - span_p, 0.0), min(tp + span_p, t_plus_max), tol=1e-13)
        tm, neg = heisenberg._golden_minimize(
            lambda t: -fe(tp, t), max(tm - span_m, 0.0), min(tm + span_m, t_minus_max), tol=1e-13)
        best = max(best, -neg)
        span_p *= 0.5
        span_m *= 0.5
    return float(best)


# ---------------------------------------------------------------------------
# Explicit strategy channels for j = 1/2 and j = 1
# ---------------------------------------------------------------------------

def _singlet_projector() -> np.ndarray:
    s = np.zeros(4, dtype=complex)
    s[1] = 1.0 / math.sqrt(2.0)
    s[2] = -1.0 / math.sqrt(2.0)
    return np.outer(s, s.conj())


def unot_channel() -> KrausChannel:
    """Optimal 2-to-1 universal NOT, exact via its Pauli transfer form.

    Trace preserving on the triplet (symmetric) subspace only; used as the
    conditional branch after projecting there.
    """
    labels = ["i", "x", "y", "z"]
    basis = [np.kron(PAULI[p], PAULI[q]) for p in labels for q in labels]

    def act(rho: np.ndarray) -> np.ndarray:
        r = np.array([np.trace(b @ rho) for b in basis]).reshape(4, 4)
        out = 0.375 * (r[0, 0] + (r[1, 1] + r[2, 2] + r[3, 3]) / 3.0) * PAULI["i"]
        for k, p in enumerate(("x", "y", "z"), start=1):
            out = out - 0.125 * (r[0, k] + r[k, 0]) * PAULI[p]
        return out

    blocks = []
    for i in range(4):
        row = []
        for jj in range(4):
            e = np.zeros((4, 4), dtype=complex)
            e[i, jj] = 1.0
            row.append(act(e))
        blocks.append(row)
    mat = np.array(blocks).transpose(0, 2, 1, 3).reshape(8, 8)
    choi = ChoiOperator(matrix=mat, dim_in=4, dim_out=2)
    return KrausChannel(kraus=tuple(kraus_from_choi(choi)), dim_in=4, dim_out=2)


def unot_mixture_channel(alpha: float, theta: float) -> KrausChannel:
    """j = 1/2 optimal strategy: two-outcome block measurement, then either the
    optimized spin-spin gate ("yes") or the 2-to-1 universal NOT ("no")."""
    if not 0.0 <= alpha <= 2.0 / 3.0 + 1e-12:
        raise ValueError("alpha must lie in [0, 2/3]")
    p0 = _singlet_projector()
    p1 = np.eye(4, dtype=complex) - p0
    m_yes = math.sqrt(max(1.0 - 4.0 * alpha / 3.0, 0.0)) * p1 + p0
    m_no = math.sqrt(4.0 * alpha / 3.0) * p1
    gate = heisenberg.heisenberg_unitary(1, 1, theta)
    yes_part = KrausChannel.from_unitary_with_trace(gate.matrix() @ m_yes, 2)
    kraus = list(yes_part.kraus)
    if alpha > 0.0:
        kraus.extend(k @ m_no for k in unot_channel().kraus)
    return KrausChannel(kraus=tuple(kraus), dim_in=4, dim_out=2)


def discrete_xyz_projectors() -> list[tuple[np.ndarray, np.ndarray]]:
    """(axis, state) pairs for the three-outcome spin-1 measurement.

    Each state is the zero-eigenvalue eigenstate of the spin component along
    the paired Cartesian axis; the conditional operation is a pi rotation
    about that axis.
    """
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    x_state = np.array([inv_sqrt2, 0.0, -inv_sqrt2], dtype=complex)
    y_state = np.array([inv_sqrt2, 0.0, inv_sqrt2], dtype=complex)
    z_state = np.array([0.0, 1.0, 0.0], dtype=complex)
    return [
        (np.array([1.0, 0.0, 0.0]), x_state),
        (np.array([0.0, 1.0, 0.0]), y_state),
        (np.array([0.0, 0.0, 1.0]), z_state),
    ]


def discrete_xyz_strategy() -> DiscreteXYZ:
    return DiscreteXYZ()


def discrete_xyz_channel() -> KrausChannel:
    """Kraus form of the three-outcome measure-and-flip strategy (j = 1)."""
    kraus = []
    for axis, state in discrete_xyz_projectors():
        flip = -1j * (axis[0] * PAULI["x"] + axis[1] * PAULI["y"] + axis[2] * PAULI["z"])
        bra = np.kron(state.conj()[None, :], np.eye(2, dtype=complex))
        kraus.append(flip @ bra)
    return KrausChannel(kraus=tuple(kraus), dim_in=6, dim_out=2)


def case_choi_channel(strategy: CaseChoiStrategy) -> KrausChannel:
    fe, params = case_fidelity(strategy.case, strategy.two_j, strategy.two_m, strategy.theta)
    choi = covariant_choi_build(params, strategy.two_j)
    return KrausChannel(kraus=tuple(kraus_from_choi(choi)),
                        dim_in=choi.dim_in, dim_out=choi.dim_out)
