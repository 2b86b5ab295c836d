"""Wall-clock timings of the exact kernels on representative inputs.

    python benchmarks/bench_core.py [--repeat N]
"""

import argparse
import time
from pathlib import Path

from hodgering.exactlinalg import rank
from hodgering.jacglobal import HypersurfaceRecord, jacobian_matrix, sequence_dims
from hodgering.localinv import LocalGerm, milnor_number, tau_min_search, tjurina_number
from hodgering.polycore import parse_polynomial

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
X4 = ["X0", "X1", "X2", "X3"]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    V = ["x", "y", "z"]
    g27 = LocalGerm(parse_polynomial("x^7+x^4*y^2+x^2*y^4+y^7+z^2", V))
    g324 = LocalGerm(parse_polynomial("x^3+y^10+z^19", V))
    F = parse_polynomial((DATA / "quartic_node.poly").read_text(), X4)
    M = jacobian_matrix(F, 9)
    H = HypersurfaceRecord.build(F, [(1, 1, 2, -1)])

    cases = [
        ("mu+tau x^7+x^4y^2+x^2y^4+y^7+z^2", lambda: (milnor_number(g27), tjurina_number(g27))),
        ("mu x^3+y^10+z^19", lambda: milnor_number(g324)),
        ("tau_min x^3+y^10+z^19, 8 samples", lambda: tau_min_search(g324, samples=8)),
        (f"rank {M.nrows}x{M.ncols} sparse", lambda: rank(M, sparse=True)),
        (f"rank {M.nrows}x{M.ncols} dense", lambda: rank(M, sparse=False)),
        ("sequence_dims one-node quartic", lambda: sequence_dims(H, check=False)),
    ]
    for name, fn in cases:
        print(f"{name:<40} {best_of(fn, args.repeat):8.3f}s")


if __name__ == "__main__":
    main()
