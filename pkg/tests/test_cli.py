import json
from pathlib import Path

import numpy as np
import pytest

import icspin
from icspin.cli import main
from icspin.system import data_path


SYSTEM = str(data_path("system_2q.json"))
HADAMARD = str(data_path("sequences/hadamard.json"))
CNOT = str(data_path("sequences/cnot.json"))


def run(args):
    return main(args)


def data_files(out: Path):
    return sorted(p for p in out.iterdir() if p.name != "manifest.json")


def test_verify_bundled_hadamard(tmp_path, capsys):
    out = tmp_path / "v"
    assert run(["verify", "--system", SYSTEM, "--sequence", HADAMARD,
                "--target", "hadamard", "--out", str(out)]) == 0
    doc = json.loads((out / "verify.json").read_text())
    assert doc["mean_fidelity"] >= 0.96
    assert len(doc["fidelities"]) == 5
    assert "mean F" in capsys.readouterr().out
    assert (out / "manifest.json").exists()


def test_verify_exit_zero_on_low_fidelity(tmp_path):
    """A poor match is data, not a failure."""
    out = tmp_path / "v"
    assert run(["verify", "--system", SYSTEM, "--sequence", HADAMARD,
                "--target", "cnot", "--out", str(out)]) == 0
    doc = json.loads((out / "verify.json").read_text())
    assert doc["mean_fidelity"] < 0.9


def test_verify_bad_config_is_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", "--system", str(bad), "--sequence", HADAMARD,
                "--target", "hadamard", "--out", str(tmp_path / "o")]) == 1


def test_verify_target_must_fit_register(tmp_path):
    multi = str(data_path("system_4c.json"))
    assert run(["verify", "--system", multi, "--sequence", HADAMARD,
                "--target", "ccrot:1,180", "--out", str(tmp_path / "o")]) == 0
    # carbon index beyond the register is a usage error
    assert run(["verify", "--system", multi, "--sequence", HADAMARD,
                "--target", "ccrot:7,180", "--out", str(tmp_path / "o2")]) == 1


def test_verify_unknown_target_is_usage_error(tmp_path):
    assert run(["verify", "--system", SYSTEM, "--sequence", HADAMARD,
                "--target", "nope", "--out", str(tmp_path / "o")]) == 1


def test_empty_sequence_against_identity(tmp_path):
    """A zero-duration genome scores unit fidelity against a zero-angle
    conditional rotation."""
    seq = tmp_path / "empty.json"
    seq.write_text(json.dumps({"omega1_MHz": 0.5, "segments": []}))
    out = tmp_path / "o"
    assert run(["verify", "--system", SYSTEM, "--sequence", str(seq),
                "--target", "ccrot:1,0", "--out", str(out)]) == 0
    doc = json.loads((out / "verify.json").read_text())
    assert doc["mean_fidelity"] == pytest.approx(1.0, abs=1e-12)


def test_optimize_writes_artifacts_and_is_deterministic(tmp_path):
    args = ["optimize", "--system", SYSTEM, "--target", "hadamard",
            "--pulses", "2", "--seed", "3",
            "--ga-config", str(tmp_path / "ga.json")]
    (tmp_path / "ga.json").write_text(json.dumps({"population": 20, "generations": 6}))
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert run(args + ["--out", str(out1)]) == 0
    assert run(args + ["--out", str(out2)]) == 0
    for name in ("best_sequence.json", "history.csv", "result.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    result = json.loads((out1 / "result.json").read_text())
    hist = result["history"]
    assert all(b >= a for a, b in zip(hist, hist[1:]))
    seq = icspin.load_sequence(out1 / "best_sequence.json")
    assert seq.n_pulses == 2


def test_optimize_zero_generations(tmp_path):
    (tmp_path / "ga.json").write_text(json.dumps({"population": 16, "generations": 0}))
    out = tmp_path / "o"
    assert run(["optimize", "--system", SYSTEM, "--target", "hadamard",
                "--pulses", "2", "--seed", "1",
                "--ga-config", str(tmp_path / "ga.json"), "--out", str(out)]) == 0
    result = json.loads((out / "result.json").read_text())
    assert len(result["history"]) == 1


def test_optimize_invalid_bounds_usage_error(tmp_path):
    assert run(["optimize", "--system", SYSTEM, "--target", "hadamard",
                "--pulses", "0", "--out", str(tmp_path / "o")]) == 1


def test_optimize_multiqubit_target(tmp_path):
    two_carbons = icspin.registers_system().subset([1, 2])
    sys_path = tmp_path / "system_2c.json"
    icspin.save_system(two_carbons, sys_path)
    (tmp_path / "ga.json").write_text(json.dumps({"population": 60, "generations": 60}))
    out = tmp_path / "o"
    assert run(["optimize", "--system", str(sys_path), "--target", "ccrot:1,180",
                "--pulses", "4", "--tau-max", "4.5", "--t-max", "2.5",
                "--seed", "1", "--ga-config", str(tmp_path / "ga.json"),
                "--out", str(out)]) == 0
    result = json.loads((out / "result.json").read_text())
    assert result["best_fitness"] > 0.8
    seq = icspin.load_sequence(out / "best_sequence.json")
    assert seq.duration < 20.0


def test_scan_hadamard_peak(tmp_path):
    out = tmp_path / "s"
    assert run(["scan", "--kind", "hadamard", "--system", SYSTEM,
                "--points", "512", "--dt", "0.2", "--out", str(out)]) == 0
    doc = json.loads((out / "hadamard.json").read_text())
    assert doc["peak_MHz"] == pytest.approx(0.158, abs=0.005)
    text = (out / "hadamard_signal.csv").read_text().splitlines()
    assert text[0] == "time_us,signal"
    assert len(text) == 513


def test_scan_theta_matches_law(tmp_path):
    out = tmp_path / "s"
    assert run(["scan", "--kind", "theta", "--system", SYSTEM, "--gate", "cnot",
                "--points", "101", "--out", str(out)]) == 0
    rows = (out / "theta_scan.csv").read_text().splitlines()[1:]
    thetas, p = np.array([[float(x) for x in r.split(",")] for r in rows]).T
    assert np.abs(p - (1 - np.cos(thetas)) / 2).max() < 1e-9


def test_scan_fid_and_spectrum_and_trajectory(tmp_path):
    out = tmp_path / "f"
    assert run(["scan", "--kind", "fid", "--system", SYSTEM, "--state", "thermal",
                "--points", "1024", "--dt", "0.12", "--out", str(out)]) == 0
    assert (out / "fid_spectrum.csv").exists()

    out = tmp_path / "sp"
    assert run(["scan", "--kind", "spectrum", "--system", SYSTEM,
                "--detuning", "3.0", "--out", str(out)]) == 0
    lines = json.loads((out / "esr_lines.json").read_text())["lines"]
    assert len(lines) == 4

    out = tmp_path / "tr"
    assert run(["scan", "--kind", "trajectory", "--system", SYSTEM,
                "--sequence", HADAMARD, "--dt", "0.1", "--out", str(out)]) == 0
    header = (out / "trajectory.csv").read_text().splitlines()[0]
    assert header == "time_us,ex,ey,ez,cx,cy,cz"


def test_scan_trajectory_requires_sequence(tmp_path):
    assert run(["scan", "--kind", "trajectory", "--system", SYSTEM,
                "--out", str(tmp_path / "o")]) == 1


def test_report_contents(tmp_path, capsys):
    out = tmp_path / "r"
    assert run(["report", "--system", SYSTEM, "--out", str(out)]) == 0
    doc = json.loads((out / "report.json").read_text())
    assert 86.0 <= doc["kappa_minus_deg"] <= 87.0
    assert doc["nu_minus_MHz"] == pytest.approx(0.110, abs=1e-3)
    assert doc["init_tau1_us"] == pytest.approx(2.28, abs=0.01)
    assert doc["init_tau2_us"] == pytest.approx(1.53, abs=0.01)
    assert doc["dipolar_r_nm"] == pytest.approx(0.8924, abs=0.01)
    assert doc["dipolar_theta_deg"] == pytest.approx(78.0, abs=1.0)
    assert doc["min_T2_star_us"] == pytest.approx(30.0, abs=0.2)
    assert (out / "report.txt").exists()


def test_report_linewidth_scaling(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    run(["report", "--system", SYSTEM, "--linewidth", "0.01", "--out", str(out1)])
    run(["report", "--system", SYSTEM, "--linewidth", "0.02", "--out", str(out2)])
    t1 = json.loads((out1 / "report.json").read_text())["min_T2_star_us"]
    t2 = json.loads((out2 / "report.json").read_text())["min_T2_star_us"]
    assert t2 == pytest.approx(t1 / 2, rel=1e-12)


def test_report_flags_unavailable_delays(tmp_path):
    cfg = {
        "D_MHz": 2870.0, "nu_e_MHz": -414.0, "nu_C_MHz": 0.158, "A_N_MHz": -2.16,
        "carbons": [{"A_zz_MHz": 0.3, "A_zx_MHz": 0.0}],
    }
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "r"
    assert run(["report", "--system", str(path), "--out", str(out)]) == 0
    doc = json.loads((out / "report.json").read_text())
    assert doc["init_tau1_us"] == "n/a"
    assert doc["kappa_minus_deg"] == 0.0


def test_rerun_reproduces_data_files_byte_identically(tmp_path):
    """Identical inputs and seed give byte-identical data files; only the
    manifest carries a timestamp."""
    for kind, extra in (
        ("verify", ["--sequence", CNOT, "--target", "cnot"]),
        ("scan", ["--kind", "hadamard", "--points", "128", "--dt", "0.2"]),
        ("report", []),
    ):
        out1, out2 = tmp_path / f"{kind}1", tmp_path / f"{kind}2"
        base = [kind, "--system", SYSTEM] + extra
        assert run(base + ["--out", str(out1)]) == 0
        assert run(base + ["--out", str(out2)]) == 0
        names1 = [p.name for p in data_files(out1)]
        names2 = [p.name for p in data_files(out2)]
        assert names1 == names2 and names1
        for name in names1:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), (kind, name)
