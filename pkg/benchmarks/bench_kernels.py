"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

The first numba call (compilation or cache load) is excluded.
"""

import argparse
import timeit

import numpy as np

from qcrypta import kernels
from qcrypta.bch import log_tables
from qcrypta.rank_field import field


def cases():
    gen = np.random.default_rng(0)
    n = 6379
    dense = gen.integers(0, 2**63, (n + 63) // 64, dtype=np.uint64)
    dense[-1] &= np.uint64((1 << (n % 64)) - 1)
    pos = np.sort(gen.choice(n, 36, replace=False)).astype(np.int64)
    yield "ring_mul_positions n=6379 w=36", "ring_mul_positions", (dense, pos, n)

    F = field(53)
    a = F.to_limbs([int(x) for x in gen.integers(0, 1 << 53, 53)])
    b = F.to_limbs([int(x) for x in gen.integers(0, 1 << 53, 53)])
    yield "gf_mul 53 elems m=53", "gf_mul", (a, b, 53, F.limb_poly)
    yield "gf_ring_mul n=53 m=53", "gf_ring_mul", (a, b, 53, F.limb_poly)
    mat = F.to_limbs([int(x) for x in gen.integers(0, 1 << 53, 53 * 54)]).reshape(53, 54, 2)
    yield "gf_rref 53x54 m=53", "gf_rref", (mat, 53, F.limb_poly)

    gf = log_tables(8)
    epos = np.sort(gen.choice(255, 30, replace=False)).astype(np.int64)
    yield "bch_syndromes n1=255 2*delta=60", "bch_syndromes", (epos, gf.exp, gf.order, 60)
    lam = gen.integers(0, 255, 31).astype(np.int64)
    yield "chien_search deg 30", "chien_search", (lam, -1, gf.exp, gf.order, 255)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    nb = kernels.numba_backend()
    npb = kernels.numpy_backend
    print(f"{'kernel':34} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for label, name, call_args in cases():
        f_np = getattr(npb, name)
        t_np = min(timeit.repeat(lambda: f_np(*call_args), number=1, repeat=args.repeat))
        if nb is None:
            print(f"{label:34} {t_np * 1e3:10.3f}ms {'n/a':>12}")
            continue
        f_nb = getattr(nb, name)
        f_nb(*call_args)
        number = 20
        t_nb = min(timeit.repeat(lambda: f_nb(*call_args), number=number, repeat=args.repeat)) / number
        print(f"{label:34} {t_np * 1e3:10.3f}ms {t_nb * 1e3:10.3f}ms {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
