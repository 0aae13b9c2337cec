"""Simulated circuits and analytic results of the register.

Everything here is an ideal-circuit simulation: hard readout/preparation
pulses are instantaneous rotations on the electron pseudo-qubit, laser
physics is out of scope, and measurements are projective populations.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .eigenstructure import carbon_eigenstructure
from .hamiltonian import PROJ_UP, subspace_hamiltonian, upper_manifold_hamiltonian
from .operators import kron_all, electron_drive_ops
from .propagation import drive_hamiltonian, expm_hermitian, sequence_propagator
from .sequence import Pulse, PulseSequence
from .states import basis_state, bloch_vector, density_matrix, partial_trace
from .system import SpinSystemConfig
from .targets import TargetGate, cnot_on_carbon, hadamard_on_carbon

TWO_PI = 2.0 * np.pi


class InitializationDomainError(ValueError):
    """No analytic initialization delays exist for this coupling regime."""


class NyquistError(ValueError):
    """The requested time grid undersamples the expected spectrum."""


# ---------------------------------------------------------------------------
# result containers


@dataclass(frozen=True)
class Spectrum:
    """Frequency grid (MHz), real amplitudes, and the underlying stick list
    as (position_MHz, weight) pairs (empty for signal-derived spectra)."""

    frequencies: np.ndarray
    amplitudes: np.ndarray
    lines: tuple = ()

    def peak_frequency(self) -> float:
        return float(self.frequencies[np.argmax(self.amplitudes)])

    def resolvable_lines(self, threshold: float = 0.05) -> list[tuple[float, float]]:
        """Sticks whose weight is at least `threshold` of the strongest one."""
        if not self.lines:
            return []
        wmax = max(w for _, w in self.lines)
        return [(p, w) for p, w in self.lines if w >= threshold * wmax]

    def to_csv(self, path: str | Path) -> None:
        rows = ["frequency_MHz,amplitude"]
        rows += [f"{float(f)!r},{float(a)!r}" for f, a in zip(self.frequencies, self.amplitudes)]
        Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")

    def to_dict(self) -> dict:
        return {
            "frequencies_MHz": self.frequencies.tolist(),
            "amplitudes": self.amplitudes.tolist(),
            "lines": [[p, w] for p, w in self.lines],
        }


@dataclass(frozen=True)
class ScanResult:
    """A time-domain signal and its magnitude spectrum."""

    times: np.ndarray
    signal: np.ndarray
    spectrum: Spectrum

    def to_csv(self, path: str | Path) -> None:
        rows = ["time_us,signal"]
        rows += [f"{float(t)!r},{float(s)!r}" for t, s in zip(self.times, self.signal)]
        Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class Trajectory:
    """Bloch vectors of each subsystem sampled along a pulse sequence.

    vectors[k, s] is the (x, y, z) vector of subsystem s (0 = electron,
    then carbons in label order) at time times[k].
    """

    times: np.ndarray
    vectors: np.ndarray

    @property
    def n_subsystems(self) -> int:
        return self.vectors.shape[1]

    def to_csv(self, path: str | Path) -> None:
        if self.n_subsystems == 2:
            names = ["ex", "ey", "ez", "cx", "cy", "cz"]
        else:
            names = ["ex", "ey", "ez"]
            for j in range(1, self.n_subsystems):
                names += [f"c{j}x", f"c{j}y", f"c{j}z"]
        rows = ["time_us," + ",".join(names)]
        for k, t in enumerate(self.times):
            flat = self.vectors[k].reshape(-1)
            rows.append(f"{float(t)!r}," + ",".join(repr(float(v)) for v in flat))
        Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# analytic initialization delays


def analytic_init_delays(config: SpinSystemConfig) -> tuple[float, float]:
    """Delays (tau_1, tau_2) of the two-pulse mapping |0,up> -> |0,(up+dn)/sqrt2>.

    Raises InitializationDomainError when the carbon tilt angle is below 45
    degrees, where the arcsine argument leaves its domain.
    """
    eig = carbon_eigenstructure(config)
    kappa = abs(eig.kappa_minus)
    sin_k = np.sin(kappa)
    if sin_k < 1.0 / np.sqrt(2.0) - 1e-15:
        raise InitializationDomainError(
            "no solution for this coupling regime (tilt angle below 45 degrees)"
        )
    arg = min(1.0 / (np.sqrt(2.0) * sin_k), 1.0)
    tau1 = float(np.arcsin(arg) / (np.pi * eig.nu_minus))
    tau2 = float(np.arccos(np.cos(kappa) / sin_k) / (TWO_PI * config.nu_c))
    return tau1, tau2


def electron_rotation(angle: float, axis_phi: float, n_carbons: int = 1) -> np.ndarray:
    """Instantaneous hard rotation of the electron pseudo-qubit.

    axis_phi = 0 is an x rotation, pi/2 a y rotation.
    """
    sx, sy = electron_drive_ops(n_carbons)
    gen = np.cos(axis_phi) * sx + np.sin(axis_phi) * sy
    w, v = np.linalg.eigh(gen)
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


def simulate_init_sequence(config: SpinSystemConfig):
    """Statevector run of (180 - tau_1 - 180 - tau_2) with ideal pulses.

    Returns (populations of |0,up> and |0,dn>, coherence magnitude between
    them, final state).
    """
    tau1, tau2 = analytic_init_delays(config)
    h = subspace_hamiltonian(config)
    u_pi = electron_rotation(np.pi, 0.0)
    u = expm_hermitian(h, tau2) @ u_pi @ expm_hermitian(h, tau1) @ u_pi
    psi = u @ basis_state(0, 4)
    pops = (float(abs(psi[0]) ** 2), float(abs(psi[1]) ** 2))
    coherence = float(abs(psi[0] * np.conj(psi[1])))
    return pops, coherence, psi


# ---------------------------------------------------------------------------
# clean-up operation in the m_S = {0, +1} manifold


def cleanup_delay(config: SpinSystemConfig) -> float:
    a_zz = config.single_carbon().a_zz
    if a_zz == 0.0:
        raise ValueError("clean-up needs a non-zero secular coupling")
    return 1.0 / (2.0 * abs(a_zz))


def cleanup_propagator(config: SpinSystemConfig, ideal: bool = False) -> np.ndarray:
    """(90_x - tau_c - 90_y) on the m_S = {0, +1} manifold.

    Moves the |0,dn> population to |+1,dn> while returning |0,up> to itself.
    The second pulse rotates about -y, which closes the transfer for the
    phase accumulated over tau_c = 1/(2|a_zz|) under this sign convention.
    With ideal=True an exact |0,dn> <-> |+1,dn> swap is returned instead.
    """
    if ideal:
        u = np.eye(4, dtype=complex)
        u[[1, 1, 3, 3], [1, 3, 1, 3]] = [0.0, 1.0, 1.0, 0.0]
        return u
    h = upper_manifold_hamiltonian(config)
    tau_c = cleanup_delay(config)
    first = electron_rotation(np.pi / 2, 0.0)
    second = electron_rotation(-np.pi / 2, np.pi / 2)
    return second @ expm_hermitian(h, tau_c) @ first


# ---------------------------------------------------------------------------
# scans


def _gate_matrix(gate, h: np.ndarray, default: TargetGate) -> np.ndarray:
    """Resolve a gate argument: None/'ideal' -> default target matrix,
    'noop' -> identity, PulseSequence -> its propagator, ndarray passthrough."""
    if gate is None or (isinstance(gate, str) and gate.lower() == "ideal"):
        return default.matrix
    if isinstance(gate, str) and gate.lower() == "noop":
        return np.eye(h.shape[0], dtype=complex)
    if isinstance(gate, PulseSequence):
        return sequence_propagator(gate, h)
    if isinstance(gate, TargetGate):
        return gate.matrix
    return np.asarray(gate, dtype=complex)


def signal_spectrum(times: np.ndarray, signal: np.ndarray,
                    t2_star: float | None = None) -> Spectrum:
    """Magnitude DFT spectrum of a uniformly sampled, mean-subtracted signal."""
    dt = float(times[1] - times[0])
    work = signal - signal.mean()
    if t2_star is not None:
        work = work * np.exp(-(times - times[0]) / t2_star)
    amps = np.abs(np.fft.rfft(work))
    freqs = np.fft.rfftfreq(len(times), dt)
    return Spectrum(frequencies=freqs, amplitudes=amps)


def _check_uniform(t_grid: np.ndarray) -> np.ndarray:
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 2:
        raise ValueError("time grid needs at least two samples")
    steps = np.diff(t_grid)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
        raise ValueError("time grid must be uniform")
    return t_grid


def hadamard_circuit_scan(
    gate,
    t_grid: np.ndarray,
    config: SpinSystemConfig,
    first_gate=None,
    t2_star: float | None = None,
) -> ScanResult:
    """Population of |0,up> after (gate - free t - gate) applied to |0,up>.

    `gate` is the carbon Hadamard: 'ideal', a PulseSequence, or an explicit
    matrix. `first_gate` defaults to the same gate; pass 'noop' for the
    control run without the initial gate.
    """
    t_grid = _check_uniform(t_grid)
    h = subspace_hamiltonian(config)
    u_h = hadamard_on_carbon(1)
    g2 = _gate_matrix(gate, h, u_h)
    g1 = g2 if first_gate is None else _gate_matrix(first_gate, h, u_h)
    psi0 = basis_state(0, 4)
    after_first = g1 @ psi0

    w, v = np.linalg.eigh(h)
    coeff = v.conj().T @ after_first
    signal = np.empty(t_grid.size)
    for k, t in enumerate(t_grid):
        evolved = v @ (np.exp(-1j * TWO_PI * w * t) * coeff)
        signal[k] = abs((g2 @ evolved)[0]) ** 2
    return ScanResult(t_grid, signal, signal_spectrum(t_grid, signal, t2_star))


def transition_offsets(h: np.ndarray) -> np.ndarray:
    """Signed frequency offsets of all electron-flip transitions of `h`."""
    lines = esr_lines(h)
    return np.array([p for p, _ in lines])


def electron_fid_scan(
    state,
    nu_d: float,
    t_grid: np.ndarray,
    config: SpinSystemConfig | None = None,
    h: np.ndarray | None = None,
    t2_star: float | None = None,
) -> ScanResult:
    """Electron FID (90_x - t - 90_phi) with phase ramp phi(t) = -2pi nu_d t.

    The population of m_S = 0 is recorded as a function of t; its spectrum
    is centered at the detuning nu_d and split by the carbon state.
    """
    if h is None:
        if config is None:
            raise ValueError("provide a config or a Hamiltonian")
        h = subspace_hamiltonian(config)
    t_grid = _check_uniform(t_grid)
    dim = h.shape[0]
    n_carbons = int(np.log2(dim)) - 1

    offsets = transition_offsets(h)
    f_max = nu_d + float(np.abs(offsets).max())
    dt = float(t_grid[1] - t_grid[0])
    if f_max >= 0.5 / dt:
        raise NyquistError(
            f"dt = {dt} us undersamples f_max = {f_max} MHz (need dt < {0.5 / f_max:.4f})"
        )

    rho0 = density_matrix(np.asarray(state, dtype=complex))
    p0 = kron_all(PROJ_UP, np.eye(2**n_carbons, dtype=complex))
    first = electron_rotation(np.pi / 2, 0.0, n_carbons)
    rho1 = first @ rho0 @ first.conj().T

    w, v = np.linalg.eigh(h)
    rho1_eig = v.conj().T @ rho1 @ v
    signal = np.empty(t_grid.size)
    for k, t in enumerate(t_grid):
        phases = np.exp(-1j * TWO_PI * w * t)
        rho_t = v @ (np.outer(phases, phases.conj()) * rho1_eig) @ v.conj().T
        second = electron_rotation(np.pi / 2, -TWO_PI * nu_d * t, n_carbons)
        rho_f = second @ rho_t @ second.conj().T
        signal[k] = float(np.real(np.trace(p0 @ rho_f)))

    spec = signal_spectrum(t_grid, signal, t2_star)
    sticks = tuple((nu_d + p, wgt) for p, wgt in esr_lines(h))
    spec = Spectrum(spec.frequencies, spec.amplitudes, sticks)
    return ScanResult(t_grid, signal, spec)


def theta_scan(
    gate,
    theta_grid: np.ndarray,
    readout_branch: int,
    config: SpinSystemConfig,
) -> np.ndarray:
    """P(|0,dn>) after preparing cos(t/2)|0,up> + sin(t/2)|-1,up> and applying
    `gate` ('noop', 'cnot', a PulseSequence, or a matrix).

    readout_branch -1 inserts the hard 180_y that maps the m_S = -1
    population into m_S = 0 before the projective readout; branch 0 reads
    out directly.
    """
    if readout_branch not in (0, -1):
        raise ValueError("readout_branch must be 0 or -1")
    h = subspace_hamiltonian(config)
    if isinstance(gate, str) and gate.lower() == "cnot":
        gate = "ideal"
    g = _gate_matrix(gate, h, cnot_on_carbon(1))
    flip = electron_rotation(np.pi, np.pi / 2)
    psi0 = basis_state(0, 4)
    out = np.empty(np.asarray(theta_grid).size)
    for k, theta in enumerate(np.asarray(theta_grid, dtype=float)):
        prep = electron_rotation(theta, np.pi / 2)
        psi = g @ (prep @ psi0)
        if readout_branch == -1:
            psi = flip @ psi
        out[k] = abs(psi[1]) ** 2
    return out


# ---------------------------------------------------------------------------
# spectra


def esr_lines(h: np.ndarray, flip_op: np.ndarray | None = None) -> list[tuple[float, float]]:
    """Stick list of electron-flip transitions as (signed offset, weight).

    Offsets are E_upper - E_lower between eigenstates connected by the
    electron flip operator; weights are squared matrix elements.
    """
    dim = h.shape[0]
    n_carbons = int(np.log2(dim)) - 1
    ec = np.eye(2**n_carbons, dtype=complex)
    if flip_op is None:
        flip_op = kron_all(np.array([[0, 1], [1, 0]], dtype=complex), ec)
    p_lower = kron_all(PROJ_UP, ec)

    w, v = np.linalg.eigh(h)
    in_lower = np.real(np.einsum("ij,jk,ki->i", v.conj().T, p_lower, v)) > 0.5
    lines = []
    for i in np.where(in_lower)[0]:
        for f in np.where(~in_lower)[0]:
            weight = abs(v[:, f].conj() @ flip_op @ v[:, i]) ** 2
            if weight > 1e-12:
                lines.append((float(w[f] - w[i]), float(weight)))
    lines.sort()
    return lines


def esr_spectrum(
    h: np.ndarray,
    linewidth: float,
    detuning: float = 5.0,
    flip_op: np.ndarray | None = None,
    weights: str = "matrix_element",
    state=None,
    points: int = 4001,
) -> Spectrum:
    """Lorentzian-broadened electron spectrum of `h`.

    Stick positions sit at detuning + (E_upper - E_lower) for every pair of
    eigenstates connected by the electron flip operator. Weights are squared
    matrix elements, optionally scaled by the population difference of a
    provided `state` (weights='population').
    """
    if linewidth <= 0:
        raise ValueError("linewidth must be positive")
    if weights not in ("matrix_element", "population"):
        raise ValueError("weights must be 'matrix_element' or 'population'")
    sticks = esr_lines(h, flip_op)
    if weights == "population":
        if state is None:
            raise ValueError("population weighting needs a state")
        sticks = _population_weighted(h, flip_op, state)
    span = max(abs(p) for p, _ in sticks)
    if detuning < span:
        raise ValueError(f"detuning {detuning} MHz must exceed the line span {span:.4f}")
    positions = np.array([detuning + p for p, _ in sticks])
    wts = np.array([wgt for _, wgt in sticks])
    lo = positions.min() - 8 * linewidth
    hi = positions.max() + 8 * linewidth
    freqs = np.linspace(lo, hi, points)
    half = linewidth / 2.0
    amps = np.zeros_like(freqs)
    for pos, wgt in zip(positions, wts):
        amps += wgt * half**2 / ((freqs - pos) ** 2 + half**2)
    lines = tuple((float(p), float(wgt)) for p, wgt in zip(positions, wts))
    return Spectrum(frequencies=freqs, amplitudes=amps, lines=lines)


def _population_weighted(h, flip_op, state) -> list[tuple[float, float]]:
    rho = density_matrix(np.asarray(state, dtype=complex))
    dim = h.shape[0]
    n_carbons = int(np.log2(dim)) - 1
    ec = np.eye(2**n_carbons, dtype=complex)
    if flip_op is None:
        flip_op = kron_all(np.array([[0, 1], [1, 0]], dtype=complex), ec)
    p_lower = kron_all(PROJ_UP, ec)
    w, v = np.linalg.eigh(h)
    in_lower = np.real(np.einsum("ij,jk,ki->i", v.conj().T, p_lower, v)) > 0.5
    pops = np.real(np.einsum("ij,jk,ki->i", v.conj().T, rho, v))
    lines = []
    for i in np.where(in_lower)[0]:
        for f in np.where(~in_lower)[0]:
            me = abs(v[:, f].conj() @ flip_op @ v[:, i]) ** 2
            wgt = me * max(pops[i] - pops[f], 0.0)
            if wgt > 1e-12:
                lines.append((float(w[f] - w[i]), float(wgt)))
    lines.sort()
    return lines


# ---------------------------------------------------------------------------
# trajectories


def bloch_trajectory(
    seq: PulseSequence,
    h: np.ndarray,
    initial,
    dt: float,
) -> Trajectory:
    """Bloch vectors of the electron and each carbon sampled every `dt` us.

    Segment boundaries are always sampled, so the last point equals the
    one-shot sequence propagator applied to the initial state.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    dim = h.shape[0]
    n_sub = int(np.log2(dim))
    dims = (2,) * n_sub
    psi = np.asarray(initial, dtype=complex)
    rho_mode = psi.ndim == 2

    times = [0.0]
    states = [psi.copy()]
    now = 0.0
    for seg in seq.segments:
        h_seg = drive_hamiltonian(h, seq.omega1, seg.phi) if isinstance(seg, Pulse) else h
        w, v = np.linalg.eigh(h_seg)
        remaining = seg.duration
        while remaining > 1e-15:
            step = min(dt, remaining)
            u = (v * np.exp(-1j * TWO_PI * w * step)) @ v.conj().T
            psi = u @ psi @ u.conj().T if rho_mode else u @ psi
            remaining -= step
            now += step
            times.append(now)
            states.append(psi.copy())

    vectors = np.empty((len(times), n_sub, 3))
    for k, st in enumerate(states):
        for s in range(n_sub):
            vectors[k, s] = bloch_vector(partial_trace(st, s, dims))
    return Trajectory(times=np.array(times), vectors=vectors)


# ---------------------------------------------------------------------------
# coherence-time bound


def min_coherence_time(linewidth: float) -> float:
    """T2* (us) required to resolve lines of the given width (MHz)."""
    if linewidth <= 0:
        raise ValueError("linewidth must be positive")
    return 1.0 / (np.pi * linewidth)
