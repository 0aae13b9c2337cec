"""State-vector and density-matrix helpers over the working subspace."""
from __future__ import annotations

import numpy as np

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def basis_state(index: int, dim: int) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def density_matrix(state: np.ndarray) -> np.ndarray:
    """Promote a state vector to a density matrix; pass density matrices through."""
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return np.outer(state, state.conj())
    return state


def assert_state(rho: np.ndarray, tol: float = 1e-10) -> None:
    rho = density_matrix(rho)
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"state trace deviates from 1 by {abs(np.trace(rho) - 1):.3e}")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -tol:
        raise ValueError(f"state has negative eigenvalue {evals.min():.3e}")


def partial_trace(state: np.ndarray, keep: int, dims: tuple[int, ...]) -> np.ndarray:
    """Reduced density matrix of subsystem `keep` from a state over `dims`.

    `state` may be a vector or a density matrix whose dimension is the
    product of `dims`.
    """
    rho = density_matrix(state)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"state of dim {rho.shape[0]} does not factor as {dims}")
    if not 0 <= keep < len(dims):
        raise ValueError(f"subsystem index {keep} out of range")
    n = len(dims)
    rho = rho.reshape(dims + dims)
    # trace out all other subsystems, highest axis first to keep indices stable
    for sub in sorted((i for i in range(n) if i != keep), reverse=True):
        rho = np.trace(rho, axis1=sub, axis2=sub + n)
        n -= 1
    return rho


def bloch_vector(rho2: np.ndarray) -> np.ndarray:
    """(x, y, z) expectation values of a single-qubit density matrix."""
    rho2 = density_matrix(rho2)
    return np.array(
        [
            np.real(np.trace(rho2 @ PAULI_X)),
            np.real(np.trace(rho2 @ PAULI_Y)),
            np.real(np.trace(rho2 @ PAULI_Z)),
        ]
    )
