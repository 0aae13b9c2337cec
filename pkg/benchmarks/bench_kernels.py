"""Benchmark the batched fitness kernel: numba backend vs pure numpy.

Usage: python benchmarks/bench_kernels.py [--repeats N]

The same workload also honors the package-wide env switches, e.g.

    ICSPIN_NO_NUMBA=1 python benchmarks/bench_kernels.py

times only the numpy path. Expect numpy to win on small registers (its
batched matmuls amortize call overhead) and numba to win once the register
grows past a couple of carbons, where per-matrix work dominates.
"""
import argparse
import time

import numpy as np

import icspin
from icspin.kernels import HAS_NUMBA, FitnessKernel


def workload(n_carbons: int):
    if n_carbons == 1:
        cfg = icspin.default_system()
    else:
        cfg = icspin.registers_system().subset(list(range(1, n_carbons + 1)))
    h = icspin.multiqubit_hamiltonian(cfg)
    target = icspin.cc_rotation(n_carbons, 1, np.pi)
    return h, target


def time_backend(backend: str, h, target, genomes, n_pulses, grid, repeats: int) -> float:
    kern = FitnessKernel(h, target, grid, n_pulses, backend=backend)
    kern.evaluate(genomes[:2])  # warm up (JIT compile / allocation)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        kern.evaluate(genomes)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--population", type=int, default=100)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    grid = np.linspace(0.48, 0.52, 5)
    n_pulses = 4
    genomes = rng.uniform(0.0, 4.0, size=(args.population, 3 * n_pulses + 1))

    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    print(f"population={args.population}, pulses={n_pulses}, grid={grid.size} points, "
          f"best of {args.repeats}")
    header = f"{'register':>12s} {'dim':>4s}" + "".join(f"{b:>12s}" for b in backends)
    print(header)
    print("-" * len(header))
    for n_carbons in (1, 2, 3, 4):
        h, target = workload(n_carbons)
        times = [
            time_backend(b, h, target, genomes, n_pulses, grid, args.repeats)
            for b in backends
        ]
        row = f"{n_carbons} carbon(s) {h.shape[0]:>4d}"
        row += "".join(f"{1e3 * t:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"   numba/numpy = {times[1] / times[0]:.2f}x"
        print(row)


if __name__ == "__main__":
    main()
