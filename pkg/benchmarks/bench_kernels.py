"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Each row reports the best of ``--repeat`` runs for both backends on the same
inputs and checks that the answers agree.
"""
import argparse
import random
import sys
import timeit

from mmtensor import kernels
from mmtensor.gen import random_binary_dm


def random_matching(rng, n):
    nodes = list(range(n))
    rng.shuffle(nodes)
    m = [0] * n
    for a, b in zip(nodes[0::2], nodes[1::2]):
        m[a], m[b] = b, a
    return m


def cases(rng):
    nbits = 30
    bases = [rng.getrandbits(nbits) for _ in range(400)]
    queries = [rng.getrandbits(nbits) for _ in range(4000)]
    yield "rank_batch", lambda k: list(k.rank_batch(bases, queries))
    yield "min_symdiff_batch", lambda k: list(k.min_symdiff_batch(bases, queries))
    n = 20_000
    gap, side = random_matching(rng, n), random_matching(rng, n)
    yield "count_cycles", lambda k: k.count_cycles(gap, side)
    # a valid delta-matroid forces a full scan
    fam = sorted(random_binary_dm(rng, 11, even=False).masks)
    yield "exchange_ok", lambda k: bool(k.exchange_ok(fam, 11))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not available; build with `pip install -e .`", file=sys.stderr)
        return 1
    py, cy = backends["python"], backends["cython"]
    print(f"{'kernel':<20}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in cases(random.Random(args.seed)):
        if fn(py) != fn(cy):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:<20}{t_py * 1e3:>14.2f}{t_cy * 1e3:>14.2f}{t_py / t_cy:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
