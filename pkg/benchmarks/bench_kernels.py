"""Compare the compiled tableau kernels with the pure-Python fallback.

Three measurements, exact arithmetic in all of them:

  * micro: pivot_all on a synthetic dense Fraction tableau;
  * in-process macro: the pairwise-independence certification over the full
    two-bit group action (the LP-heaviest workload in the package), with
    each kernel module injected into the solver;
  * subprocess macro: the same certification behind JOINLAB_KERNEL=...,
    timing a cold interpreter each way (startup included).

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--skip-subprocess]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
from fractions import Fraction

from joinlab import PolytopeSpec, Z2kContext, certify_triviality, full_action
from joinlab import _pyops

try:
    from joinlab import _speedups
except ImportError:
    _speedups = None


def micro_tableau(rows: int, cols: int):
    return [
        [Fraction((i * 7 + j * 13) % 11 - 5, (i + j) % 6 + 1) for j in range(cols)]
        for i in range(rows)
    ]


def bench_micro(module, repeats: int) -> float:
    zero, one = Fraction(0), Fraction(1)
    best = None
    for _ in range(repeats):
        tableau = micro_tableau(40, 120)
        for i in range(40):
            if tableau[i][i] == 0:
                tableau[i][i] = one
        start = time.perf_counter()
        for piv in range(40):
            module.pivot_all(tableau, piv, piv, zero, one)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def certify_workload(kernel_module):
    spec = PolytopeSpec(full_action(Z2kContext(2)), 3, 2)
    cert = certify_triviality(spec, kernel=kernel_module)
    assert not cert.trivial
    assert cert.max_deviation == Fraction(3, 64)


def bench_macro(kernel_module, repeats: int) -> float:
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        certify_workload(kernel_module)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


_SUBPROCESS_SNIPPET = (
    "from joinlab import PolytopeSpec, Z2kContext, certify_triviality, full_action;"
    "from fractions import Fraction;"
    "cert = certify_triviality(PolytopeSpec(full_action(Z2kContext(2)), 3, 2));"
    "assert not cert.trivial and cert.max_deviation == Fraction(3, 64)"
)


def bench_subprocess(backend: str, repeats: int) -> float:
    env = dict(os.environ, JOINLAB_KERNEL=backend)
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        subprocess.run(
            [sys.executable, "-c", _SUBPROCESS_SNIPPET], env=env, check=True
        )
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--skip-subprocess", action="store_true")
    args = parser.parse_args(argv)

    backends = [("python", _pyops)]
    if _speedups is not None:
        backends.append(("cython", _speedups))
    else:
        print("compiled extension not built; benchmarking pure Python only")

    rows = []
    for name, module in backends:
        micro = bench_micro(module, args.repeats)
        macro = bench_macro(module, args.repeats)
        sub = (
            None
            if args.skip_subprocess
            else bench_subprocess(name, args.repeats)
        )
        rows.append((name, micro, macro, sub))

    def fmt(x):
        return "-" if x is None else f"{x * 1000:9.1f}"

    print()
    print(f"{'backend':<8} {'pivot ms':>10} {'certify ms':>11} {'cold-run ms':>12}")
    for name, micro, macro, sub in rows:
        print(f"{name:<8} {fmt(micro):>10} {fmt(macro):>11} {fmt(sub):>12}")
    if len(rows) == 2:
        py, cy = rows[0], rows[1]
        print()
        print(
            f"speedup (python/cython): pivot {py[1] / cy[1]:.2f}x, "
            f"certify {py[2] / cy[2]:.2f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
