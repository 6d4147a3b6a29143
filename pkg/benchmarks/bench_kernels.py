"""Compare the compiled monomial kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends run the same workloads (products of random elements, then
normal forms) and must return identical results.
"""

import argparse
import random
import timeit

from ulpa import _kernels_py
from ulpa.algebra import Algebra, random_element
from ulpa.ultragraph import Ultragraph

try:
    from ulpa import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def graphs():
    two_petals = Ultragraph.build(["v"], [("a", "v", ["v"]), ("b", "v", ["v"])])
    mixed = Ultragraph.build(["u", "v", "w"], [("a", "u", ["u", "v"]), ("b", "v", ["v", "w"]),
                                               ("c", "w", ["u"]), ("d", "w", ["u", "v", "w"])])
    return {"two petals": two_petals, "three vertices": mixed}


def workload(U, rng, n=200):
    alg = Algebra(U)
    pairs = [(random_element(alg, rng, 4, 3).terms, random_element(alg, rng, 4, 3).terms)
             for _ in range(n)]
    src, rng_, out = U.src, U.rng, U.out_edges
    return pairs, (src, rng_, out)


def run(mod, pairs, data):
    src, rng, out = data
    return [mod.normalize_terms(mod.mul_terms(a, b, src), src, rng, out) for a, b in pairs]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels_c is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return
    print(f"{'graph':<16}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, U in graphs().items():
        pairs, data = workload(U, random.Random(7))
        assert run(_kernels_py, pairs, data) == run(_kernels_c, pairs, data)
        t_py = min(timeit.repeat(lambda: run(_kernels_py, pairs, data), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: run(_kernels_c, pairs, data), number=1, repeat=args.repeat))
        print(f"{name:<16}{t_py * 1e3:>14.1f}{t_c * 1e3:>14.1f}{t_py / t_c:>9.2f}x")


if __name__ == "__main__":
    main()
