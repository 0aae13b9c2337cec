"""Pulse-sequence data model and JSON serialization.

A sequence alternates free-evolution delays and resonant microwave pulses;
the canonical template with n pulses carries n+1 delays (leading and
trailing included) and maps to the flat genome layout
[tau_1..tau_{n+1}, t_1..t_n, phi_1..phi_n] used by the optimizer.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * np.pi


class SequenceError(ValueError):
    """Raised for malformed sequence documents or parameters."""


@dataclass(frozen=True)
class Delay:
    """Free evolution for tau microseconds."""

    tau: float

    def __post_init__(self):
        if not np.isfinite(self.tau) or self.tau < 0:
            raise SequenceError(f"delay must be finite and >= 0, got {self.tau}")

    @property
    def duration(self) -> float:
        return self.tau


@dataclass(frozen=True)
class Pulse:
    """Microwave pulse of duration t (us) and phase phi (radians)."""

    t: float
    phi: float

    def __post_init__(self):
        if not np.isfinite(self.t) or self.t < 0:
            raise SequenceError(f"pulse duration must be finite and >= 0, got {self.t}")
        if not 0.0 <= self.phi < TWO_PI:
            raise SequenceError(f"phase must lie in [0, 2pi), got {self.phi}")

    @property
    def duration(self) -> float:
        return self.t


@dataclass(frozen=True)
class PulseSequence:
    """Ordered segments plus the nominal Rabi amplitude omega1 (MHz)."""

    segments: tuple
    omega1: float

    def __post_init__(self):
        if self.omega1 < 0:
            raise SequenceError("omega1 must be non-negative")
        for seg in self.segments:
            if not isinstance(seg, (Delay, Pulse)):
                raise SequenceError(f"unknown segment type: {type(seg).__name__}")

    @property
    def duration(self) -> float:
        return float(sum(seg.duration for seg in self.segments))

    @property
    def n_pulses(self) -> int:
        return sum(isinstance(seg, Pulse) for seg in self.segments)


def sequence_from_genome(genome, n_pulses: int, omega1: float) -> PulseSequence:
    """Decode [tau_1..tau_{n+1}, t_1..t_n, phi_1..phi_n] into a sequence."""
    genome = np.asarray(genome, dtype=float)
    if genome.shape != (3 * n_pulses + 1,):
        raise SequenceError(
            f"genome for {n_pulses} pulses needs {3 * n_pulses + 1} entries, "
            f"got {genome.shape}"
        )
    taus = genome[: n_pulses + 1]
    ts = genome[n_pulses + 1 : 2 * n_pulses + 1]
    phis = np.mod(genome[2 * n_pulses + 1 :], TWO_PI)
    segments: list = []
    for i in range(n_pulses):
        segments.append(Delay(float(taus[i])))
        segments.append(Pulse(float(ts[i]), float(phis[i])))
    segments.append(Delay(float(taus[-1])))
    return PulseSequence(tuple(segments), omega1)


def genome_from_sequence(seq: PulseSequence) -> np.ndarray:
    """Inverse of ``sequence_from_genome`` for canonical alternating sequences."""
    taus, ts, phis = [], [], []
    expect_delay = True
    for seg in seq.segments:
        if isinstance(seg, Delay) and expect_delay:
            taus.append(seg.tau)
            expect_delay = False
        elif isinstance(seg, Pulse) and not expect_delay:
            ts.append(seg.t)
            phis.append(seg.phi)
            expect_delay = True
        else:
            raise SequenceError("sequence does not follow the delay/pulse template")
    if len(taus) != len(ts) + 1:
        raise SequenceError("template requires a trailing delay")
    return np.array(taus + ts + phis, dtype=float)


def sequence_to_dict(seq: PulseSequence) -> dict:
    segments = []
    for seg in seq.segments:
        if isinstance(seg, Delay):
            segments.append({"delay_us": seg.tau})
        else:
            segments.append({"pulse_us": seg.t, "phase_rad": seg.phi})
    return {"omega1_MHz": seq.omega1, "segments": segments}


def sequence_from_dict(doc: dict) -> PulseSequence:
    if not isinstance(doc, dict) or "omega1_MHz" not in doc or "segments" not in doc:
        raise SequenceError("sequence document needs omega1_MHz and segments")
    segments: list = []
    for i, seg in enumerate(doc["segments"]):
        if not isinstance(seg, dict):
            raise SequenceError(f"segments[{i}] must be an object")
        if "delay_us" in seg:
            segments.append(Delay(float(seg["delay_us"])))
        elif "pulse_us" in seg:
            segments.append(Pulse(float(seg["pulse_us"]), float(seg.get("phase_rad", 0.0))))
        else:
            raise SequenceError(f"segments[{i}] needs delay_us or pulse_us")
    return PulseSequence(tuple(segments), float(doc["omega1_MHz"]))


def load_sequence(path: str | Path) -> PulseSequence:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SequenceError(f"cannot parse {path}: {exc}") from exc
    return sequence_from_dict(doc)


def save_sequence(seq: PulseSequence, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(sequence_to_dict(seq), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
