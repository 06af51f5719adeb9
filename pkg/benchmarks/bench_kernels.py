"""Compare the compiled and pure-Python kernels on membership workloads.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import itertools
import random
import timeit

from lambdastar import _pykernels
from lambdastar.multiword import coordinate_words

try:
    from lambdastar import _ckernels
except ImportError:
    _ckernels = None


def workload(seed: int = 0):
    rng = random.Random(seed)
    grid = list(itertools.product(coordinate_words(3, 4), coordinate_words(3, 3)))
    forbidden = [
        tuple(bytes(rng.randrange(3) for _ in range(rng.randint(0, 2))) for _ in range(2))
        for _ in range(6)
    ]
    forbidden = [f for f in forbidden if any(f)]
    words = coordinate_words(3, 4)
    return grid, forbidden, words


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    grid, forbidden, words = workload()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"grid={len(grid)} forbidden={len(forbidden)} words={len(words)}")
    base = {}
    for name, mod in backends:
        assert (mod.member_mask(grid, forbidden) == _pykernels.member_mask(grid, forbidden)).all()
        tasks = {
            "member_mask": lambda mod=mod: mod.member_mask(grid, forbidden),
            "factor_matrix": lambda mod=mod: mod.factor_matrix(words, words, b"0120"),
        }
        for task, fn in tasks.items():
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            base.setdefault(task, best)
            print(f"{name:7s} {task:14s} {best * 1e3:9.2f} ms  x{base[task] / best:5.1f}")
    if _ckernels is None:
        print("compiled kernels not built; run: pip install -e . --no-build-isolation")


if __name__ == "__main__":
    main()
