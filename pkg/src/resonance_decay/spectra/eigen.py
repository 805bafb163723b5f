import logging

import numpy as np
import scipy.linalg

from resonance_decay.constants import BIORTHOGONALITY_TOL, SELF_ORTHOGONALITY_TOL
from resonance_decay.exceptions import EPDegenerate
from resonance_decay.models.hamiltonian import EffectiveHamiltonian
from resonance_decay.models.resonance import PhaseRigidityReport, ResonanceState

logger = logging.getLogger(__name__)


def eigendecompose(hamiltonian: EffectiveHamiltonian) -> list[ResonanceState]:
    """
    Eigenpairs of a complex symmetric H_eff, sorted by ascending Re z.

    Right eigenvectors are normalized with the c-product (phi^T phi = 1); left eigenvectors are
    their transposes and are never computed separately. Vectors of (near-)degenerate
    eigenvalues are re-biorthonormalized with a symmetric Loewdin step. The component of largest
    modulus of every phi is given a positive real part.

    Raises:
        EPDegenerate: if some eigenvector is self-orthogonal, |v^T v| < 1e-6 * v^H v.
    """
    matrix = hamiltonian.matrix
    if hamiltonian.size == 0:
        return []

    values, vectors = scipy.linalg.eig(matrix)
    c_norms = np.einsum("ij,ij->j", vectors, vectors)
    h_norms = np.einsum("ij,ij->j", vectors.conj(), vectors).real
    for j in range(len(values)):
        if abs(c_norms[j]) < SELF_ORTHOGONALITY_TOL * h_norms[j]:
            partner = _nearest_other(values, j)
            raise EPDegenerate(
                f"Eigenvector of z = {values[j]:.12g} is self-orthogonal "
                f"(|phi^T phi| / phi^H phi = {abs(c_norms[j]) / h_norms[j]:.3g}); "
                f"nearest eigenvalue {partner:.12g}",
                pair=(complex(values[j]), complex(partner)),
            )

    phi = vectors / np.sqrt(c_norms)
    gram = phi.T @ phi
    residual = float(np.max(np.abs(gram - np.eye(len(values)))))
    if residual > BIORTHOGONALITY_TOL:
        logger.debug("Re-biorthonormalizing eigenvectors, c-product residual %.3g", residual)
        phi = phi @ scipy.linalg.fractional_matrix_power(gram, -0.5)

    order = np.lexsort((values.imag, values.real))
    states = []
    for j in order:
        vector = _fix_sign(phi[:, j])
        a_norm = float(np.vdot(vector, vector).real)
        states.append(
            ResonanceState(
                z=complex(values[j]), phi=vector, a_norm=a_norm, rigidity=1.0 / a_norm
            )
        )
    return states


def raw_eigenpairs(hamiltonian: EffectiveHamiltonian) -> list[ResonanceState]:
    """
    Eigenpairs without the c-product normalization, for use where eigendecompose refuses.

    Each phi has unit Hermitian norm and ``rigidity`` carries |phi^T phi|, which vanishes at an
    exceptional point.
    """
    if hamiltonian.size == 0:
        return []
    values, vectors = scipy.linalg.eig(hamiltonian.matrix)
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    order = np.lexsort((values.imag, values.real))
    states = []
    for j in order:
        vector = _fix_sign(vectors[:, j])
        states.append(
            ResonanceState(
                z=complex(values[j]),
                phi=vector,
                a_norm=1.0,
                rigidity=float(abs(vector @ vector)),
            )
        )
    return states


def phase_rigidity_report(states: list[ResonanceState]) -> PhaseRigidityReport:
    """
    A_l = <phi_l|phi_l> and the Hermitian overlaps B_l^l' = <phi_l|phi_l'>.

    The diagonal of the returned matrix carries A_l.
    """
    if not states:
        return PhaseRigidityReport(a_norms=[], overlaps=np.zeros((0, 0), dtype=complex))
    phi = np.column_stack([s.phi for s in states])
    overlaps = phi.conj().T @ phi
    a_norms = [float(a) for a in np.diag(overlaps).real]
    np.fill_diagonal(overlaps, a_norms)
    return PhaseRigidityReport(a_norms=a_norms, overlaps=overlaps)


def biorthogonality_residual(states: list[ResonanceState]) -> float:
    """max |phi_l^T phi_m - delta_lm|."""
    if not states:
        return 0.0
    phi = np.column_stack([s.phi for s in states])
    return float(np.max(np.abs(phi.T @ phi - np.eye(len(states)))))


def spectral_sum(states: list[ResonanceState]) -> np.ndarray:
    """sum_l z_l phi_l phi_l^T, which reconstructs H_eff away from exceptional points."""
    phi = np.column_stack([s.phi for s in states])
    z = np.array([s.z for s in states])
    return (phi * z) @ phi.T


def _fix_sign(vector: np.ndarray) -> np.ndarray:
    pivot = vector[int(np.argmax(np.abs(vector)))]
    if pivot.real < 0 or (pivot.real == 0 and pivot.imag < 0):
        return -vector
    return vector


def _nearest_other(values: np.ndarray, j: int) -> complex:
    distances = np.abs(values - values[j])
    distances[j] = np.inf
    return complex(values[int(np.argmin(distances))]) if len(values) > 1 else complex(values[j])


def overlap_matrix(reference: np.ndarray, states: list[ResonanceState]) -> np.ndarray:
    """|r_i^T phi_j| for reference vectors r_i (columns of ``reference``) against ``states``."""
    phi = np.column_stack([s.phi for s in states])
    return np.abs(np.atleast_2d(reference.T) @ phi)
