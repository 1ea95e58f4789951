"""Compiled vs pure-Python kernel timings.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import math
import timeit

from hybrid_bell import kernels


def cases(mod):
    x0 = [math.pi / 2, 0.3, -0.5, 0.2]
    step = [0.1, 0.1, 0.05, 0.05]
    return {
        "expectation": lambda: mod.expectation(0, 0.6, 1.1, 0.2, 0.3, -0.1, 0.9, 0.8),
        "bell_regime": lambda: mod.bell_regime(mod.REAL, 0, 0.458, 0.8, 0.8, x0),
        "nelder_mead": lambda: mod.nelder_mead_max(mod.REAL, 0, 0.458, 0.8, 0.8, x0, step, 1e-9, 1e-12, 2000),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    found = kernels.backends()
    rows = {}
    for name, mod in found.items():
        for case, fn in cases(mod).items():
            n, _ = timeit.Timer(fn).autorange()
            best = min(timeit.repeat(fn, number=n, repeat=args.repeat)) / n
            rows.setdefault(case, {})[name] = best
    print(f"{'case':<14}" + "".join(f"{b:>14}" for b in found) + f"{'speedup':>10}")
    for case, t in rows.items():
        sp = t["python"] / t["compiled"] if "compiled" in t else float("nan")
        print(f"{case:<14}" + "".join(f"{t[b] * 1e6:>12.2f}us" for b in found) + f"{sp:>9.1f}x")
    if "compiled" not in found:
        print("compiled backend not built; only the fallback was timed")


if __name__ == "__main__":
    main()
