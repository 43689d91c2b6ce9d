"""Time the Hilbert-basis solver with the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat N] [--full] [--method M]

``--full`` adds the S12 (p = 2) system, which takes tens of seconds per run
with numba and considerably longer with numpy.
"""
import argparse
import statistics
import time

from fusionchar import data_path
from fusionchar.analysis import constraints_from_restriction, load_restriction
from fusionchar.hilbert import hilbert_basis_kernel

CASES = ["pgl27_on_d16", "autm22", "s12_p3", "s10"]


def timed(system, backend, method, repeat):
    runs, size = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        basis = hilbert_basis_kernel(system, method=method, backend=backend)
        runs.append(time.perf_counter() - t0)
        size = len(basis)
    return statistics.median(runs), size, basis


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--full", action="store_true")
    parser.add_argument("--method", default="auto", choices=("auto", "incremental", "completion"))
    args = parser.parse_args()
    cases = CASES + (["s12_p2"] if args.full else [])

    # compile once so first-call JIT cost is not charged to a case
    warm = constraints_from_restriction(load_restriction(data_path("s4_restriction.json")))
    hilbert_basis_kernel(warm, backend="numba")

    print(f"{'case':<14}{'k':>4}{'rows':>6}{'|basis|':>9}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for name in cases:
        system = constraints_from_restriction(load_restriction(data_path(f"{name}_restriction.json")))
        t_nb, n_nb, b_nb = timed(system, "numba", args.method, args.repeat)
        t_np, n_np, b_np = timed(system, "numpy", args.method, args.repeat)
        if b_nb != b_np:
            raise SystemExit(f"{name}: backends disagree ({n_nb} vs {n_np} vectors)")
        print(f"{name:<14}{system.k:>4}{system.nrows:>6}{n_nb:>9}"
              f"{t_nb:>10.3f}{t_np:>10.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
