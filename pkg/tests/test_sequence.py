import json

import numpy as np
import pytest

from icspin.sequence import (
    Delay,
    Pulse,
    PulseSequence,
    SequenceError,
    genome_from_sequence,
    load_sequence,
    save_sequence,
    sequence_from_dict,
    sequence_from_genome,
    sequence_to_dict,
)
from icspin.system import data_path


def test_segment_validation():
    with pytest.raises(SequenceError):
        Delay(-0.1)
    with pytest.raises(SequenceError):
        Pulse(-1.0, 0.0)
    with pytest.raises(SequenceError):
        Pulse(1.0, 7.0)  # phase outside [0, 2pi)


def test_duration_sums_segments():
    seq = PulseSequence((Delay(1.0), Pulse(0.5, 0.0), Delay(2.0)), omega1=0.5)
    assert seq.duration == pytest.approx(3.5)
    assert seq.n_pulses == 1


def test_genome_roundtrip():
    genome = np.array([0.1, 0.2, 0.3, 0.4, 1.0, 1.1, 1.2, 0.5, 1.5, 2.5])
    seq = sequence_from_genome(genome, n_pulses=3, omega1=0.5)
    assert seq.n_pulses == 3
    assert len(seq.segments) == 7
    assert np.allclose(genome_from_sequence(seq), genome)


def test_genome_phase_wrapping():
    genome = np.array([0.0, 0.0, 1.0, -np.pi])
    seq = sequence_from_genome(genome, n_pulses=1, omega1=0.5)
    assert seq.segments[1].phi == pytest.approx(np.pi)


def test_genome_length_check():
    with pytest.raises(SequenceError, match="entries"):
        sequence_from_genome([0.0, 1.0], n_pulses=1, omega1=0.5)


def test_genome_from_non_template_sequence():
    seq = PulseSequence((Pulse(0.5, 0.0), Delay(1.0)), omega1=0.5)
    with pytest.raises(SequenceError, match="template"):
        genome_from_sequence(seq)


def test_json_roundtrip(tmp_path):
    seq = sequence_from_genome([0.1, 0.2, 0.9, 1.2], n_pulses=1, omega1=0.5)
    path = tmp_path / "seq.json"
    save_sequence(seq, path)
    again = load_sequence(path)
    assert again == seq


def test_dict_schema():
    doc = sequence_to_dict(PulseSequence((Delay(1.0), Pulse(0.5, 0.25)), omega1=0.5))
    assert doc == {
        "omega1_MHz": 0.5,
        "segments": [{"delay_us": 1.0}, {"pulse_us": 0.5, "phase_rad": 0.25}],
    }
    assert sequence_from_dict(doc).segments[1].phi == 0.25


def test_malformed_documents_rejected():
    with pytest.raises(SequenceError):
        sequence_from_dict({"segments": []})
    with pytest.raises(SequenceError):
        sequence_from_dict({"omega1_MHz": 0.5, "segments": [{"bogus": 1}]})


def test_bundled_tables_are_verbatim():
    """Bundled sequences carry the published parameters unchanged."""
    doc = json.loads(data_path("sequences/hadamard.json").read_text())
    delays = [s["delay_us"] for s in doc["segments"] if "delay_us" in s]
    pulses = [(s["pulse_us"], s["phase_rad"]) for s in doc["segments"] if "pulse_us" in s]
    assert delays == [0.74, 0.22, 0.43, 0.89]
    assert [p[0] for p in pulses] == [0.23, 1.26, 1.50]
    assert np.allclose([p[1] for p in pulses], [3 * np.pi / 2, 3 * np.pi / 2, np.pi / 2])
    assert doc["omega1_MHz"] == 0.5

    doc = json.loads(data_path("sequences/cnot.json").read_text())
    delays = [s["delay_us"] for s in doc["segments"] if "delay_us" in s]
    pulses = [(s["pulse_us"], s["phase_rad"]) for s in doc["segments"] if "pulse_us" in s]
    assert delays == [3.78, 2.11, 2.15, 0.63]
    assert [p[0] for p in pulses] == [1.88, 3.96, 1.90]
    assert np.allclose([p[1] for p in pulses], [0.0, np.pi / 5, np.pi / 2])


def test_bundled_multiqubit_suite_durations():
    suite = json.loads(data_path("suite_ccrot.json").read_text())
    assert len(suite["cases"]) == 7
    for case in suite["cases"]:
        seq = load_sequence(data_path(case["sequence"]))
        assert seq.n_pulses == 4
        assert seq.duration == pytest.approx(case["reference_duration_us"], abs=0.06)
