"""Timing comparison of the enumeration backends.

Runs the level-k trapezoid enumeration over all 2^L words with the numba
kernels and with the pure-numpy fallback, and prints a table.

    python benchmarks/bench_enumeration.py --levels 3 --lengths 14,16,18
"""

import argparse
import time

from bratteli import _kernels
from bratteli.trapezoids import WidenSchedule, enumerate_level


def time_backend(level, length, backend, repeats):
    best = float("inf")
    count = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        traps = enumerate_level(level, WidenSchedule((1,)), length, backend=backend)
        best = min(best, time.perf_counter() - t0)
        count = len(traps)
    return best, count


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=3)
    parser.add_argument("--lengths", default="14,16,18")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    lengths = [int(x) for x in args.lengths.split(",")]

    backends = ["numpy"]
    if _kernels._HAVE_NUMBA:
        # warm the JIT so compile time does not pollute the comparison
        enumerate_level(1, WidenSchedule((1,)), max(lengths) // 2 + 4, backend="numba")
        backends.insert(0, "numba")
    else:
        print("numba unavailable (or disabled via BRATTELI_PURE_NUMPY); "
              "timing numpy only")

    print(f"{'level':>5} {'L':>3} {'words':>9} " +
          " ".join(f"{b + ' [s]':>12}" for b in backends) + "   vertices")
    for level in range(1, args.levels + 1):
        for length in lengths:
            row = [f"{level:>5} {length:>3} {1 << length:>9}"]
            count = None
            for backend in backends:
                best, count = time_backend(level, length, backend, args.repeats)
                row.append(f"{best:>12.3f}")
            row.append(f"   {count}")
            print(" ".join(row))


if __name__ == "__main__":
    main()
