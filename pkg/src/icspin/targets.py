"""Target gates in the working subspace.

All targets act on the electron pseudo-qubit {|0>, |-1>} tensored with the
register carbons. The carbon-conditional gates trigger on electron |-1>;
the nitrogen condition is implicit because the whole subspace sits in
m_N = 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import E2, SX_HALF, kron_all
from .hamiltonian import PROJ_UP, PROJ_DOWN

HADAMARD_2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class TargetError(ValueError):
    """Unknown target name or invalid target parameters."""


@dataclass(frozen=True)
class TargetGate:
    name: str
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def x_rotation(theta: float) -> np.ndarray:
    """exp(-i theta I_x) on one carbon."""
    return np.cos(theta / 2) * E2 - 1j * np.sin(theta / 2) * 2 * SX_HALF


def hadamard_on_carbon(n_carbons: int = 1, carbon: int = 1) -> TargetGate:
    """Hadamard on one carbon, identity on the electron and other carbons."""
    _check_carbon(carbon, n_carbons)
    ops = [E2] * (n_carbons + 1)
    ops[carbon] = HADAMARD_2
    return TargetGate("hadamard", kron_all(*ops))


def cnot_on_carbon(n_carbons: int = 1, carbon: int = 1) -> TargetGate:
    """Carbon flip (exp(-i pi I_x)) conditioned on electron |-1>."""
    return TargetGate("cnot", _conditional_rotation(n_carbons, carbon, np.pi).matrix)


def cc_rotation(n_carbons: int, carbon: int, theta: float) -> TargetGate:
    """exp(-i theta I_x) on the chosen carbon conditioned on electron |-1>,
    identity on all other carbons."""
    gate = _conditional_rotation(n_carbons, carbon, theta)
    return TargetGate(f"ccrot({carbon},{np.degrees(theta):g}deg)", gate.matrix)


def _check_carbon(carbon: int, n_carbons: int) -> None:
    if not 1 <= carbon <= n_carbons:
        raise TargetError(f"carbon index {carbon} out of range 1..{n_carbons}")


def _conditional_rotation(n_carbons: int, carbon: int, theta: float) -> TargetGate:
    _check_carbon(carbon, n_carbons)
    rot_ops = [E2] * n_carbons
    rot_ops[carbon - 1] = x_rotation(theta)
    e_carb = np.eye(2**n_carbons, dtype=complex)
    matrix = kron_all(PROJ_UP, e_carb) + kron_all(PROJ_DOWN, kron_all(*rot_ops))
    return TargetGate("conditional-x", matrix)


def target_library(name: str, n_carbons: int = 1) -> TargetGate:
    """Build a target from its CLI spelling.

    Recognized forms: ``hadamard``, ``cnot``, ``ccrot:<carbon>,<theta_deg>``.
    """
    base, _, params = name.partition(":")
    base = base.strip().lower()
    if base == "hadamard":
        return hadamard_on_carbon(n_carbons)
    if base == "cnot":
        return cnot_on_carbon(n_carbons)
    if base == "ccrot":
        try:
            carbon_str, theta_str = params.split(",")
            carbon = int(carbon_str)
            theta = np.radians(float(theta_str))
        except ValueError as exc:
            raise TargetError(
                f"ccrot parameters must be '<carbon>,<theta_deg>', got {params!r}"
            ) from exc
        return cc_rotation(n_carbons, carbon, theta)
    raise TargetError(f"unknown target {name!r}")
