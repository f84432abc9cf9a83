"""Finite-dimensional angular momentum algebra.

Half-integer spins are carried everywhere as ``two_j = 2j`` integers so the
special values j = 1/2, 1 dispatch exactly.  The |j,m> basis is ordered with
m descending, m = j, j-1, ..., -j, and Clebsch-Gordan coefficients follow the
Condon-Shortley phase convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rotations import Rotation, euler_zyz_from_quaternion


class InvalidQuantumNumbersError(ValueError):
    """Raised when spin/magnetic quantum numbers violate their constraints."""


def check_two_j(two_j: int) -> int:
    if not isinstance(two_j, (int, np.integer)) or two_j < 0:
        raise InvalidQuantumNumbersError(f"two_j must be a non-negative integer, got {two_j!r}")
    return int(two_j)


def dim(two_j: int) -> int:
    return check_two_j(two_j) + 1


def two_m_values(two_j: int) -> np.ndarray:
    """Magnetic numbers 2m in basis order (descending from two_j to -two_j)."""
    return np.arange(check_two_j(two_j), -two_j - 1, -2)


def m_values(two_j: int) -> np.ndarray:
    return two_m_values(two_j) / 2.0


def basis_index(two_j: int, two_m: int) -> int:
    check_valid_m(two_j, two_m)
    return (two_j - two_m) // 2


def check_valid_m(two_j: int, two_m: int) -> None:
    check_two_j(two_j)
    if abs(two_m) > two_j or (two_j - two_m) % 2 != 0:
        raise InvalidQuantumNumbersError(f"two_m={two_m} invalid for two_j={two_j}")


def spin_operators(two_j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin matrices (Jx, Jy, Jz) in the descending-m basis.

    Jz is diagonal and J+- are built from the ladder formula
    sqrt(j(j+1) - m(m+-1)).
    """
    d = dim(two_j)
    m = m_values(two_j)
    j = two_j / 2.0
    jz = np.diag(m).astype(complex)
    # J+ |j,m> = sqrt(j(j+1)-m(m+1)) |j,m+1>; row index m+1 sits one step up.
    ladder = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    jplus = np.zeros((d, d), dtype=complex)
    jplus[np.arange(d - 1), np.arange(1, d)] = ladder
    jminus = jplus.conj().T
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    return jx, jy, jz


@lru_cache(maxsize=None)
def _jy_eigensystem(two_j: int) -> tuple[np.ndarray, np.ndarray]:
    _, jy, _ = spin_operators(two_j)
    vals, vecs = np.linalg.eigh(jy)
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return vals, vecs


def rotation_y_irrep(two_j: int, beta) -> np.ndarray:
    """exp(-i*beta*Jy) via the spectral decomposition of Jy; batched over beta."""
    vals, vecs = _jy_eigensystem(two_j)
    beta = np.asarray(beta, dtype=float)
    phases = np.exp(-1j * beta[..., None] * vals)
    return np.einsum("ik,...k,jk->...ij", vecs, phases, vecs.conj())


def rotation_irrep_euler(two_j: int, alpha, beta, gamma) -> np.ndarray:
    """Irrep matrix exp(-i a Jz) exp(-i b Jy) exp(-i c Jz); batched over angles."""
    m = m_values(two_j)
    dmat = rotation_y_irrep(two_j, beta)
    alpha = np.asarray(alpha, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    left = np.exp(-1j * alpha[..., None] * m)
    right = np.exp(-1j * gamma[..., None] * m)
    return left[..., :, None] * dmat * right[..., None, :]


def rotation_irrep(two_j: int, g: Rotation) -> np.ndarray:
    """(2j+1)-dimensional unitary representing the rotation ``g``."""
    alpha, beta, gamma = g.euler_zyz()
    return rotation_irrep_euler(two_j, alpha, beta, gamma)


def rotation_irrep_batch(two_j: int, quaternions: np.ndarray) -> np.ndarray:
    alpha, beta, gamma = euler_zyz_from_quaternion(quaternions)
    return rotation_irrep_euler(two_j, alpha, beta, gamma)


def coherent_state(two_j: int, g: Rotation) -> np.ndarray:
    """Rotated maximal-weight state U_g |j,j> (column vector)."""
    return rotation_irrep(two_j, g)[:, 0]


def coherent_states_batch(two_j: int, quaternions: np.ndarray) -> np.ndarray:
    """(n, 2j+1) array of rotated |j,j> states."""
    return rotated_basis_states_batch(two_j, quaternions, two_j)


def rotated_basis_states_batch(two_j: int, quaternions: np.ndarray, two_m) -> np.ndarray:
    """(n, 2j+1) array of states U_g |j,m>; ``two_m`` scalar or per-sample array."""
    alpha, beta, gamma = euler_zyz_from_quaternion(quaternions)
    vals, vecs = _jy_eigensystem(two_j)
    m = m_values(two_j)
    two_m_arr = np.broadcast_to(np.asarray(two_m), alpha.shape)
    cols = (two_j - two_m_arr) // 2
    # column `col` of exp(-i beta Jy), batched
    col_vecs = vecs.conj()[cols, :]                       # (n, d)
    phases = np.exp(-1j * np.multiply.outer(beta, vals))  # (n, d)
    dcol = np.einsum("ik,nk->ni", vecs, phases * col_vecs)
    out = np.exp(-1j * np.multiply.outer(alpha, m)) * dcol
    out *= np.exp(-1j * gamma * (two_m_arr / 2.0))[:, None]
    return out


def _lnfact(n: int) -> float:
    return math.lgamma(n + 1)


def clebsch_gordan(two_j1: int, two_m1: int, two_j2: int, two_m2: int,
                   two_J: int, two_M: int) -> float:
    """Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.

    All arguments are twice the physical value.  Raises
    InvalidQuantumNumbersError when the quantum numbers violate the triangle
    inequality, the selection rule M = m1 + m2, or parity; vanishing but
    allowed coefficients return 0.0.
    """
    for two_j, two_m in ((two_j1, two_m1), (two_j2, two_m2), (two_J, two_M)):
        check_valid_m(two_j, two_m)
    if two_m1 + two_m2 != two_M:
        raise InvalidQuantumNumbersError("selection rule m1 + m2 = M violated")
    if not (abs(two_j1 - two_j2) <= two_J <= two_j1 + two_j2):
        raise InvalidQuantumNumbersError("triangle inequality violated")
    if (two_j1 + two_j2 + two_J) % 2 != 0:
        raise InvalidQuantumNumbersError("j1 + j2 + J must be an integer")

    # Racah's closed form with log-factorial accumulation.
    def f(two_n: int) -> float:
        if two_n % 2 != 0:
            raise InvalidQuantumNumbersError("half-integer factorial argument")
        return _lnfact(two_n // 2)

    log_pref = 0.5 * (
        math.log(two_J + 1.0)
        + f(two_j1 + two_j2 - two_J) + f(two_j1 - two_j2 + two_J)
        + f(-two_j1 + two_j2 + two_J) - f(two_j1 + two_j2 + two_J + 2)
        + f(two_J + two_M) + f(two_J - two_M)
        + f(two_j1 - two_m1) + f(two_j1 + two_m1)
        + f(two_j2 - two_m2) + f(two_j2 + two_m2)
    )

    two_kmin = max(0, two_j2 - two_J - two_m1, two_j1 + two_m2 - two_J)
    two_kmax = min(two_j1 + two_j2 - two_J, two_j1 - two_m1, two_j2 + two_m2)
    if two_kmax < two_kmin:
        return 0.0
    terms = []
    for two_k in range(two_kmin, two_kmax + 2, 2):
        log_den = (
            f(two_k) + f(two_j1 + two_j2 - two_J - two_k)
            + f(two_j1 - two_m1 - two_k) + f(two_j2 + two_m2 - two_k)
            + f(two_J - two_j2 + two_m1 + two_k) + f(two_J - two_j1 - two_m2 + two_k)
        )
        sign = -1.0 if (two_k // 2) % 2 else 1.0
        terms.append(sign * math.exp(log_pref - log_den))
    return math.fsum(terms)


@lru_cache(maxsize=None)
def _pair_coupling_table(two_j1: int, two_j2: int, two_J: int) -> np.ndarray:
    """Rows of <j1 m1; j2 m2 | J M> over the product basis, per M of J."""
    d1, d2, dJ = dim(two_j1), dim(two_j2), dim(two_J)
    table = np.zeros((dJ, d1, d2))
    for i1, two_m1 in enumerate(two_m_values(two_j1)):
        for i2, two_m2 in enumerate(two_m_values(two_j2)):
            two_M = two_m1 + two_m2
            if abs(two_M) > two_J:
                continue
            iJ = (two_J - two_M) // 2
            table[iJ, i1, i2] = clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_J, two_M)
    table.setflags(write=False)
    return table


def coupled_basis_vectors(two_j1: int, two_j2: int, two_J: int) -> np.ndarray:
    """(2J+1, d1*d2) array of total-spin basis vectors |J,M> (M descending)."""
    return _pair_coupling_table(two_j1, two_j2, two_J).reshape(dim(two_J), -1).copy()


@dataclass(frozen=True)
class CouplingCoeffs:
    """Coefficients of |j,-m> (x) |Phi*_theta> on the four covariant blocks."""

    a: complex
    b: complex
    c_plus: complex
    c_minus: complex

    def norm_sq(self) -> float:
        return float(abs(self.a) ** 2 + abs(self.b) ** 2
                     + abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2)


def coupling_decomposition(two_j: int, two_m: int, theta: float) -> CouplingCoeffs:
    """Block coefficients (a, b, c+, c-) for probe index m and angle theta.

    The j-1 amplitude ``b`` is identically 0 for two_j == 1, where that block
    does not exist.
    """
    check_valid_m(two_j, two_m)
    j = two_j / 2.0
    m = two_m / 2.0
    s = math.sin(theta / 2.0)
    c = math.cos(theta / 2.0)
    a = -1j * s * math.sqrt((j + 1 + m) * (j + 1 - m) / ((j + 1) * (2 * j + 1)))
    if two_j >= 2:
        b = 1j * s * math.sqrt((j + m) * (j - m) / (j * (2 * j + 1)))
    else:
        b = 0.0
    c_plus = -c * math.sqrt((j + 1) / (2 * j + 1)) - 1j * s * m / math.sqrt((j + 1) * (2 * j + 1))
    c_minus = c * math.sqrt(j / (2 * j + 1)) - 1j * s * m / math.sqrt(j * (2 * j + 1))
    return CouplingCoeffs(a=a, b=b, c_plus=c_plus, c_minus=c_minus)
