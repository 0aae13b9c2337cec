"""Batch command-line front end.

Subcommands
-----------
verify    evaluate a pulse sequence against a target over an amplitude grid
optimize  run the genetic-algorithm search and write the best sequence
scan      simulate a circuit scan (hadamard | theta | fid | spectrum | trajectory)
report    derived quantities of a register config

Exit codes: 0 = ran, 1 = usage/config error, 2 = internal invariant
violation. Low fidelity is data, never an error. Every run writes a
manifest next to its outputs; rerunning with the same inputs and seed
reproduces all data files byte for byte (timestamps live only in the
manifest).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .eigenstructure import carbon_eigenstructure
from .experiments import (
    InitializationDomainError,
    analytic_init_delays,
    bloch_trajectory,
    cleanup_delay,
    electron_fid_scan,
    esr_spectrum,
    hadamard_circuit_scan,
    min_coherence_time,
    theta_scan,
)
from .fidelity import robust_fidelity
from .geometry import GeometryError, dipolar_geometry
from .hamiltonian import multiqubit_hamiltonian, subspace_hamiltonian
from .optimize import ParameterBounds, ga_config_from_dict, ga_config_to_dict, optimize
from .sequence import SequenceError, load_sequence, save_sequence
from .states import basis_state, density_matrix
from .system import ConfigError, load_system
from .targets import TargetError, target_library

USAGE_ERROR = 1
INTERNAL_ERROR = 2


class CliError(Exception):
    """Usage or config problem; maps to exit code 1."""


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_manifest(out: Path, command: str, inputs: dict, seed: int | None) -> None:
    manifest = {
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "output_dir": str(out),
        "tool_version": __version__,
        "written_at_unix": time.time(),
    }
    _write_json(out / "manifest.json", manifest)


def _parse_grid(text: str) -> tuple[tuple[float, float], int]:
    try:
        lo, hi, points = text.split(",")
        return (float(lo), float(hi)), int(points)
    except ValueError as exc:
        raise CliError(f"--grid expects 'min,max,points', got {text!r}") from exc


def _load_system(path: str):
    try:
        return load_system(path)
    except (ConfigError, FileNotFoundError) as exc:
        raise CliError(str(exc)) from exc


def _hamiltonian_for(cfg):
    return subspace_hamiltonian(cfg) if cfg.n_carbons == 1 else multiqubit_hamiltonian(cfg)


def _target_for(name: str, cfg):
    try:
        return target_library(name, n_carbons=cfg.n_carbons)
    except TargetError as exc:
        raise CliError(str(exc)) from exc


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_verify(args) -> int:
    cfg = _load_system(args.system)
    try:
        seq = load_sequence(args.sequence)
    except (SequenceError, FileNotFoundError) as exc:
        raise CliError(str(exc)) from exc
    target = _target_for(args.target, cfg)
    h = _hamiltonian_for(cfg)
    if target.dim != h.shape[0]:
        raise CliError(
            f"target dimension {target.dim} does not match system dimension {h.shape[0]}"
        )
    omega1_range, points = _parse_grid(args.grid)
    report = robust_fidelity(seq, target, h, omega1_range, points)

    out = _out_dir(args)
    rows = ["omega1_MHz,fidelity"]
    rows += [f"{float(w)!r},{float(f)!r}" for w, f in zip(report.omega1s, report.fidelities)]
    (out / "fidelity_points.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    _write_json(
        out / "verify.json",
        {
            "system": str(args.system),
            "sequence": str(args.sequence),
            "target": args.target,
            "omega1_grid_MHz": report.omega1s.tolist(),
            "fidelities": report.fidelities.tolist(),
            "mean_fidelity": report.mean,
            "min_fidelity": report.min,
            "duration_us": seq.duration,
        },
    )
    _write_manifest(out, "verify",
                    {"system": str(args.system), "sequence": str(args.sequence),
                     "target": args.target, "grid": args.grid}, None)
    print(f"verify: target={args.target} duration={seq.duration:.4f} us")
    for w, f in zip(report.omega1s, report.fidelities):
        print(f"  omega1 = {w:.4f} MHz  F = {f:.6f}")
    print(f"  mean F = {report.mean:.6f}   min F = {report.min:.6f}")
    return 0


def cmd_optimize(args) -> int:
    cfg = _load_system(args.system)
    target = _target_for(args.target, cfg)
    h = _hamiltonian_for(cfg)
    ga_doc = {}
    if args.ga_config:
        try:
            ga_doc = json.loads(Path(args.ga_config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read GA config: {exc}") from exc
    ga_doc.setdefault("seed", args.seed)
    if args.grid:
        omega1_range, points = _parse_grid(args.grid)
        ga_doc["omega1_grid"] = {
            "min_MHz": omega1_range[0], "max_MHz": omega1_range[1], "points": points,
        }
    try:
        ga = ga_config_from_dict(ga_doc)
        bounds = ParameterBounds(args.pulses, args.tau_max, args.t_max)
    except (TypeError, ValueError) as exc:
        raise CliError(str(exc)) from exc

    result = optimize(target, h, bounds, ga)
    out = _out_dir(args)
    save_sequence(result.best_sequence(), out / "best_sequence.json")
    rows = ["generation,best_fitness"]
    rows += [f"{g},{float(f)!r}" for g, f in enumerate(result.history)]
    (out / "history.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    _write_json(out / "result.json", result.to_dict())
    _write_manifest(out, "optimize",
                    {"system": str(args.system), "target": args.target,
                     "pulses": args.pulses, "tau_max": args.tau_max,
                     "t_max": args.t_max, "ga": ga_config_to_dict(ga)},
                    ga.rng_seed)
    print(f"optimize: target={args.target} best mean-robust F = {result.best_fitness:.6f}")
    print(f"  duration = {result.best_sequence().duration:.4f} us over "
          f"{len(result.history) - 1} generations (seed {result.seed})")
    return 0


def _scan_hadamard(args, cfg, out: Path) -> None:
    t_grid = np.arange(args.points) * args.dt
    gate = "ideal" if not args.sequence else load_sequence(args.sequence)
    first = "noop" if args.noop else None
    result = hadamard_circuit_scan(gate, t_grid, cfg, first_gate=first)
    result.to_csv(out / "hadamard_signal.csv")
    result.spectrum.to_csv(out / "hadamard_spectrum.csv")
    _write_json(out / "hadamard.json", {
        "peak_MHz": result.spectrum.peak_frequency(),
        "signal": result.signal.tolist(),
        "times_us": result.times.tolist(),
    })
    print(f"scan hadamard: spectrum peak at {result.spectrum.peak_frequency():.4f} MHz")


def _scan_theta(args, cfg, out: Path) -> None:
    thetas = np.linspace(0.0, 2 * np.pi, args.points)
    gate = args.gate if not args.sequence else load_sequence(args.sequence)
    values = theta_scan(gate, thetas, args.readout, cfg)
    rows = ["theta_rad,p0_down"]
    rows += [f"{float(t)!r},{float(p)!r}" for t, p in zip(thetas, values)]
    (out / "theta_scan.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"scan theta: {args.points} points, readout m_S={args.readout}")


def _scan_fid(args, cfg, out: Path) -> None:
    t_grid = np.arange(args.points) * args.dt
    state = density_matrix(basis_state(0, 4))
    if args.state == "thermal":
        # electron polarized, carbon unpolarized: the no-carbon-init control.
        # A fully mixed 4-level state is unitary-invariant and gives no signal.
        state = np.kron(np.diag([1.0, 0.0]), np.eye(2) / 2.0).astype(complex)
    result = electron_fid_scan(state, args.detuning, t_grid, cfg)
    result.to_csv(out / "fid_signal.csv")
    result.spectrum.to_csv(out / "fid_spectrum.csv")
    _write_json(out / "fid_spectrum.json", result.spectrum.to_dict())
    print(f"scan fid: {len(result.spectrum.lines)} transition sticks")


def _scan_spectrum(args, cfg, out: Path) -> None:
    h = _hamiltonian_for(cfg)
    spec = esr_spectrum(h, linewidth=args.linewidth, detuning=args.detuning)
    spec.to_csv(out / "esr_spectrum.csv")
    _write_json(out / "esr_lines.json", {"lines": [[p, w] for p, w in spec.lines]})
    print(f"scan spectrum: {len(spec.lines)} sticks, "
          f"{len(spec.resolvable_lines())} resolvable")


def _scan_trajectory(args, cfg, out: Path) -> None:
    if not args.sequence:
        raise CliError("trajectory scan needs --sequence")
    seq = load_sequence(args.sequence)
    h = _hamiltonian_for(cfg)
    initial = basis_state(0, h.shape[0])
    traj = bloch_trajectory(seq, h, initial, args.dt)
    traj.to_csv(out / "trajectory.csv")
    _write_json(out / "trajectory.json", {
        "times_us": traj.times.tolist(),
        "bloch_vectors": traj.vectors.tolist(),
    })
    print(f"scan trajectory: {traj.times.size} samples over {traj.times[-1]:.4f} us")


def cmd_scan(args) -> int:
    cfg = _load_system(args.system)
    out = _out_dir(args)
    runner = {
        "hadamard": _scan_hadamard,
        "theta": _scan_theta,
        "fid": _scan_fid,
        "spectrum": _scan_spectrum,
        "trajectory": _scan_trajectory,
    }.get(args.kind)
    if runner is None:
        raise CliError(f"unknown scan kind {args.kind!r}")
    try:
        runner(args, cfg, out)
    except (SequenceError, FileNotFoundError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    _write_manifest(out, f"scan:{args.kind}",
                    {"system": str(args.system), "kind": args.kind,
                     "sequence": args.sequence or "", "points": args.points,
                     "dt": args.dt}, None)
    return 0


def cmd_report(args) -> int:
    cfg = _load_system(args.system)
    eig = carbon_eigenstructure(cfg.subset([cfg.carbons[0].label]))
    payload: dict = {
        "kappa_minus_deg": eig.kappa_minus_deg,
        "kappa_plus_deg": eig.kappa_plus_deg,
        "nu_minus_MHz": eig.nu_minus,
        "nu_plus_MHz": eig.nu_plus,
    }
    first_carbon = cfg.carbons[0]
    single = cfg.subset([first_carbon.label])
    try:
        tau1, tau2 = analytic_init_delays(single)
        payload["init_tau1_us"] = tau1
        payload["init_tau2_us"] = tau2
    except InitializationDomainError as exc:
        payload["init_tau1_us"] = "n/a"
        payload["init_tau2_us"] = "n/a"
        payload["init_delay_note"] = str(exc)
    payload["cleanup_tau_c_us"] = cleanup_delay(single)
    try:
        geom = dipolar_geometry(first_carbon)
        payload["dipolar_r_nm"] = geom.r_nm
        payload["dipolar_theta_deg"] = geom.theta_deg
    except GeometryError as exc:
        payload["dipolar_r_nm"] = "n/a"
        payload["dipolar_theta_deg"] = "n/a"
        payload["dipolar_note"] = str(exc)
    payload["esr_linewidth_MHz"] = args.linewidth
    payload["min_T2_star_us"] = min_coherence_time(args.linewidth)

    out = _out_dir(args)
    _write_json(out / "report.json", payload)
    lines = [f"{key:>22s} : {value}" for key, value in payload.items()]
    text = "\n".join(lines) + "\n"
    (out / "report.txt").write_text(text, encoding="utf-8")
    _write_manifest(out, "report",
                    {"system": str(args.system), "linewidth": args.linewidth}, None)
    print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icspin",
        description="Pulse-sequence simulator and compiler for electron-nuclear spin registers",
    )
    parser.add_argument("--version", action="version", version=f"icspin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="evaluate a sequence against a target")
    p.add_argument("--system", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--grid", default="0.48,0.52,5")
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("optimize", help="search pulse parameters for a target")
    p.add_argument("--system", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--pulses", type=int, default=3)
    p.add_argument("--tau-max", type=float, default=4.0)
    p.add_argument("--t-max", type=float, default=4.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ga-config", default=None)
    p.add_argument("--grid", default=None)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("scan", help="simulate a circuit scan")
    p.add_argument("--kind", required=True,
                   choices=["hadamard", "theta", "fid", "spectrum", "trajectory"])
    p.add_argument("--system", required=True)
    p.add_argument("--sequence", default=None)
    p.add_argument("--gate", default="cnot", choices=["noop", "cnot"])
    p.add_argument("--noop", action="store_true",
                   help="replace the first gate of the hadamard scan with NOOP")
    p.add_argument("--readout", type=int, default=-1, choices=[0, -1])
    p.add_argument("--points", type=int, default=256)
    p.add_argument("--dt", type=float, default=0.1)
    p.add_argument("--detuning", type=float, default=3.0)
    p.add_argument("--linewidth", type=float, default=0.0106)
    p.add_argument("--state", default="pure", choices=["pure", "thermal"])
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("report", help="derived quantities of a register")
    p.add_argument("--system", required=True)
    p.add_argument("--linewidth", type=float, default=0.0106)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except Exception as exc:  # invariant violations and bugs
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
