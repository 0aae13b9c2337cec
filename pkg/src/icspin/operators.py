"""Angular-momentum operators and tensor-product helpers.

All matrices are dense complex128 numpy arrays. Spin-1/2 operators use the
convention s_z = diag(+1/2, -1/2); spin-1 uses S_z = diag(1, 0, -1).
"""
from __future__ import annotations

import numpy as np

E2 = np.eye(2, dtype=complex)
E3 = np.eye(3, dtype=complex)

# spin-1/2 (also used for the electron pseudo-qubit spanned by m_S = 0, -1,
# with |0> playing the role of "up")
SX_HALF = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex)
SY_HALF = np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex)
SZ_HALF = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)

_SQ2 = np.sqrt(2.0)
SX_ONE = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _SQ2
SY_ONE = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / _SQ2
SZ_ONE = np.diag([1.0, 0.0, -1.0]).astype(complex)


def spin_operators(spin: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (S_x, S_y, S_z) for spin 1/2 or spin 1.

    Raises ValueError for any other spin quantum number.
    """
    if spin == 0.5:
        return SX_HALF.copy(), SY_HALF.copy(), SZ_HALF.copy()
    if spin == 1:
        return SX_ONE.copy(), SY_ONE.copy(), SZ_ONE.copy()
    raise ValueError(f"unsupported spin quantum number: {spin!r} (expected 1/2 or 1)")


def kron_all(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of the given operators, left to right."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def embed(op: np.ndarray, slot: int, n_slots: int) -> np.ndarray:
    """Embed a single-qubit operator at position `slot` of an n-qubit register."""
    ops = [E2] * n_slots
    ops[slot] = op
    return kron_all(*ops)


def electron_drive_ops(n_carbons: int) -> tuple[np.ndarray, np.ndarray]:
    """(s_x ⊗ E, s_y ⊗ E) acting on the electron pseudo-qubit of a register
    with `n_carbons` carbon spins."""
    ec = np.eye(2**n_carbons, dtype=complex)
    return np.kron(SX_HALF, ec), np.kron(SY_HALF, ec)


def assert_hermitian(h: np.ndarray, rtol: float = 1e-12) -> None:
    """Raise ValueError if `h` deviates from Hermiticity beyond `rtol` (relative
    to the largest matrix element)."""
    scale = max(np.abs(h).max(), 1.0)
    resid = np.abs(h - h.conj().T).max()
    if resid > rtol * scale:
        raise ValueError(f"matrix is not Hermitian: residual {resid:.3e} > {rtol:.1e} * {scale:.3e}")
