"""Compare the numba and numpy forms of the basis kernels.

    python3 benchmarks/bench_kernels.py [--qubits 16 18 20] [--repeat 5]
"""
import argparse
import time

import numpy as np

from xconc import kernels
from xconc._accel import HAVE_NUMBA


def best_of(func, args, repeat):
    func(*args)  # compile / warm up
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, nargs="+", default=[16, 18, 20])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy timings are shown")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<14}{'N':>4}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for n_qubits in args.qubits:
        diag = rng.dirichlet(np.ones(2**n_qubits))
        probs = rng.uniform(size=n_qubits)
        idx = np.arange(2**n_qubits, dtype=np.int64)
        targets = rng.permutation(n_qubits).astype(np.int64)
        cases = [
            ("damp_diagonal", kernels.damp_diagonal_numpy, kernels.damp_diagonal_jit,
             (diag, probs)),
            ("permute_basis", kernels.permute_basis_numpy, kernels.permute_basis_jit,
             (idx, targets, n_qubits)),
        ]
        for name, slow, fast, call_args in cases:
            t_np = best_of(slow, call_args, args.repeat) * 1e3
            if HAVE_NUMBA:
                t_nb = best_of(fast, call_args, args.repeat) * 1e3
                print(f"{name:<14}{n_qubits:>4}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")
            else:
                print(f"{name:<14}{n_qubits:>4}{t_np:>12.3f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
