"""Time the Gram factorization DᵀD = M with each kernel backend.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from hopfcat import _kernels_py
from hopfcat import condensation as cd
from hopfcat.condensation import braided_input, factorize, hom_count_matrix
from hopfcat.fusion_ring import object_vector

CASES = [("RepS3", "A+C"), ("DoubleOfGroup(S3)", "A+B+2C"), ("DoubleOfGroup(S3)", "A+C+D"),
         ("SO8GaugedS3", "A+B+2C"), ("DFib", "11+ttb")]



def bench(M, repeat):
    t = time.perf_counter()
    for _ in range(repeat):
        factorize(M, all_solutions=True)
    return (time.perf_counter() - t) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    try:
        from hopfcat import _kernels as compiled
    except ImportError:
        compiled = None
    mats = []
    for key, obj in CASES:
        ring = braided_input(key).ring
        mats.append(hom_count_matrix(ring, object_vector(ring, obj)))
    rng = np.random.default_rng(1)
    for _ in range(6):
        D = rng.integers(0, 3, (4, 6))
        D[0] = 0
        D[0, 0] = 1
        mats.append(D.T @ D)
    backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
    for name, mod in backends:
        cd.candidate_rows, cd.feasible = mod.candidate_rows, mod.feasible
        total = sum(bench(M, args.repeat) for M in mats)
        print(f"{name:7s} {1e3 * total:9.2f} ms per sweep of {len(mats)} matrices")
    if compiled is None:
        print("compiled kernels not built")


if __name__ == "__main__":
    main()
