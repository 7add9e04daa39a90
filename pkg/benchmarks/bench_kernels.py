"""Time the compiled and pure-Python branch-and-bound kernels on the same instances.

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]

Both backends must return identical (value, witness, nodes); the script
exits non-zero if they ever disagree.
"""

from __future__ import annotations

import argparse
import sys
import time

from ryserlab import kernels
from ryserlab.constructions import projective_plane, random_linear_system, truncate
from ryserlab.invariants import line_order


def instances(seed: int):
    for q in (3, 4, 5, 7):
        yield f"plane q={q}", projective_plane(q).sys
    for q in (4, 5):
        yield f"truncated q={q}", truncate(projective_plane(q))[0]
    for i in range(3):
        yield f"random n=30 m=36 r=4 #{i}", random_linear_system(30, 36, 4, seed + i)


def tau_call(sys, backend):
    allowed = (1 << sys.num_points) - 1
    return kernels.hitting_set(sys.masks, sys.point_lines, 0, allowed, sys.num_lines + 1,
                               backend=backend)


def nu2_call(sys, backend):
    return kernels.packing(sys.masks, line_order(sys), 2, 0, sys.num_lines + 1, sys.num_points,
                           backend=backend)


def best_of(fn, repeat: int) -> tuple[float, tuple]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if kernels._kernels_c is None:
        print("compiled kernels unavailable; rebuild with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'instance':28} {'kernel':5} {'value':>5} {'nodes':>9} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    failed = False
    for name, sys_ in instances(args.seed):
        for label, call in (("tau", tau_call), ("nu2", nu2_call)):
            tc, rc = best_of(lambda: call(sys_, "cython"), args.repeat)
            tp, rp = best_of(lambda: call(sys_, "python"), args.repeat)
            if rc != rp:
                print(f"{name}: backends disagree on {label}: {rc[0]} vs {rp[0]}", file=sys.stderr)
                failed = True
            print(f"{name:28} {label:5} {rc[0]:>5} {rc[2]:>9} {tc:>10.4f} {tp:>10.4f} {tp / max(tc, 1e-9):>7.1f}x", flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
