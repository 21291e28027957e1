"""Compare the compiled and numpy backends of the hot kernels.

Usage: python3 benchmarks/bench_core.py [--size N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from polybergman._core import backends


def cases(size, rng):
    z = rng.uniform(-20, 20, size) + 1j * rng.uniform(0.1, 20, size)
    y = rng.uniform(0, 60, size)
    return {
        "loggamma": lambda m: m.loggamma(z),
        "digamma": lambda m: m.digamma(z),
        "laguerre_table(k=16)": lambda m: m.laguerre_table(16, y),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    mods = backends()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}" + "".join(f"{name:>12}" for name in mods) + f"{'speedup':>10}")
    for label, fn in cases(args.size, rng).items():
        times = {name: min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat))
                 for name, m in mods.items()}
        ref = fn(mods["pure"])
        for name, m in mods.items():
            assert np.allclose(fn(m), ref, rtol=1e-12, atol=1e-12), (label, name)
        speed = times["pure"] / times["ext"] if "ext" in times else float("nan")
        print(f"{label:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
              + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
