"""Trace fidelity and amplitude-robustness averaging."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .propagation import sequence_propagator
from .sequence import PulseSequence
from .targets import TargetGate

DEFAULT_OMEGA1_RANGE = (0.48, 0.52)
DEFAULT_GRID_POINTS = 5


def gate_fidelity(u: np.ndarray, u_target: np.ndarray) -> float:
    """|Tr(U^dag U_T)| / d, invariant under a global phase of either gate."""
    if u.shape != u_target.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {u_target.shape}")
    d = u.shape[0]
    return float(abs(np.trace(u.conj().T @ u_target)) / d)


def omega1_grid(omega1_range: tuple[float, float], points: int) -> np.ndarray:
    lo, hi = omega1_range
    if points < 1:
        raise ValueError("grid needs at least one point")
    if points == 1:
        return np.array([(lo + hi) / 2.0])
    return np.linspace(lo, hi, points)


@dataclass(frozen=True)
class RobustnessReport:
    """Per-amplitude fidelities over an omega1 grid, plus mean and min."""

    omega1s: np.ndarray
    fidelities: np.ndarray

    @property
    def mean(self) -> float:
        return float(self.fidelities.mean())

    @property
    def min(self) -> float:
        return float(self.fidelities.min())


def robust_fidelity(
    seq: PulseSequence,
    target: TargetGate | np.ndarray,
    h: np.ndarray,
    omega1_range: tuple[float, float] = DEFAULT_OMEGA1_RANGE,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> RobustnessReport:
    """Evaluate the sequence against the target across an amplitude grid."""
    u_target = target.matrix if isinstance(target, TargetGate) else target
    grid = omega1_grid(omega1_range, grid_points)
    fids = np.array(
        [gate_fidelity(sequence_propagator(seq, h, omega1=w), u_target) for w in grid]
    )
    return RobustnessReport(omega1s=grid, fidelities=fids)
