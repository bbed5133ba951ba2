#!/usr/bin/env python3
"""
Float-only reference values for qpsym
=====================================

Recomputes, without the library's exact arithmetic, the numbers the test
suite checks the density statistics and the unit search against:

- the norm-form units x + y*phi with x^2 + xy - y^2 = +-1
- the largest circular gap of frac(k / phi), |k| <= M
- the sampled sup-norm covering radius for the plastic-number flow

Usage:
    python scripts/compute_oracles.py
    python scripts/compute_oracles.py --max-m 10 100 1000 --grid 20
"""

import argparse
import itertools
import math
import sys
from typing import List, Sequence, Tuple


PHI = (1 + math.sqrt(5)) / 2


def plastic_root(iterations: int = 60) -> float:
    """Real root of z^3 - z - 1 in (1, 2), by float bisection."""
    lo, hi = 1.0, 2.0
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if mid ** 3 - mid - 1 < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def golden_units(height: int) -> List[Tuple[int, int]]:
    return sorted(
        (x, y)
        for x, y in itertools.product(range(-height, height + 1), repeat=2)
        if (x, y) != (0, 0) and x * x + x * y - y * y in (1, -1)
    )


def golden_gap(max_m: int) -> float:
    points = sorted({(k / PHI) % 1.0 for k in range(-max_m, max_m + 1)})
    gaps = [b - a for a, b in zip(points, points[1:])]
    gaps.append(1 + points[0] - points[-1])
    return max(gaps)


def covering_radius(ratios: Sequence[float], max_m: int, grid: int) -> float:
    points = [[(-k * r) % 1.0 for r in ratios] for k in range(-max_m, max_m + 1)]

    def distance(x, y):
        return max(min(abs(a - b), 1 - abs(a - b)) for a, b in zip(x, y))

    probes = itertools.product([i / grid for i in range(grid)], repeat=len(ratios))
    return max(min(distance(p, x) for x in points) for p in probes)


def main(argv=None) -> int:
    """Print the reference tables."""
    parser = argparse.ArgumentParser(description="Float-only reference values for qpsym")
    parser.add_argument("--max-m", type=int, nargs="+", default=[1, 3, 10, 100, 1000])
    parser.add_argument("--grid", type=int, default=20)
    parser.add_argument("--height", type=int, default=2)
    args = parser.parse_args(argv)

    print("# golden units x + y*phi")
    for x, y in golden_units(args.height):
        print(f"UNIT\t{x} {y}")

    print("# golden gap")
    for m in args.max_m:
        print(f"GAP\tM={m}\t{golden_gap(m):.12f}")

    beta = plastic_root()
    ratios = [1 / beta ** 2, 1 / beta]
    print("# plastic covering radius")
    for m in args.max_m:
        if m > 200:
            continue
        print(f"RADIUS\tM={m}\tgrid={args.grid}\t{covering_radius(ratios, m, args.grid):.12f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
