"""Compare the compiled and pure-Python kernels on the hot paths.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 4000]
"""

import argparse
import timeit

import numpy as np

from spectral_phase import _backend
from spectral_phase.eigensolve import count_below, eigenvalues_in, truncation
from spectral_phase.model import ModulationParams
from spectral_phase.recurrence import backward_minimal, forward_solve


def cases(size):
    p = ModulationParams(1.5, 0.5)
    trunc = truncation(p, size)
    window = _window(trunc, 20)
    return {
        "sturm_count": lambda: count_below(trunc, 0.25),
        "bisect_20_eigenvalues": lambda: eigenvalues_in(trunc, *window, 1e-10),
        "forward_recurrence": lambda: forward_solve(p, 1.0, 1.0, 0.0, size),
        "backward_minimal": lambda: backward_minimal(ModulationParams(3, 1), 0.0, size),
    }


def _window(trunc, k):
    """Interval holding exactly the ``k`` smallest eigenvalues."""
    bound = float(np.max(np.abs(trunc.diag)) + 2 * np.max(np.abs(trunc.offdiag))) + 1
    lo, hi = -bound, bound
    a, b = lo, hi
    for _ in range(100):
        mid = 0.5 * (a + b)
        if count_below(trunc, mid) >= k:
            b = mid
        else:
            a = mid
    return lo, b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=4000)
    args = ap.parse_args(argv)

    names = sorted(_backend.AVAILABLE)
    results = {}
    for name in names:
        previous = _backend.set_backend(name)
        try:
            for case, fn in cases(args.size).items():
                fn()  # warm-up
                results[(case, name)] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        finally:
            _backend.set_backend(previous)

    header = f"{'kernel':<24}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(f"N = {args.size}, best of {args.repeat} (seconds)")
    print(header)
    for case in cases(args.size):
        row = f"{case:<24}" + "".join(f"{results[(case, n)]:>12.5f}" for n in names)
        if len(names) == 2:
            row += f"{results[(case, 'python')] / results[(case, 'cython')]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
