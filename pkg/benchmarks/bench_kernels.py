"""Compare the compiled kernels with the pure-Python fallback.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from fraisselab import _kernels_py as py

try:
    from fraisselab import _kernels as cy
except ImportError:
    cy = None


def workloads(mod):
    rng = random.Random(0)
    keys = [py.key_of(i) for i in rng.sample(range(1000), 8)]
    masks = [3] * len(keys)
    wants = [rng.choice([0, 1, 2, 3]) for _ in keys]
    n = 7
    codes = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            r = rng.randrange(2)
            codes[i * n + j], codes[j * n + i] = 1 | (r << 1), r << 1
    sub = [codes[i * n + j] for i in range(4) for j in range(4)]
    return {
        "key_of x 10^5": lambda: [mod.key_of(i) for i in range(100_000)],
        "scan 8 graph constraints (2^17)": lambda: mod.scan(py.FAM_GRAPH, 7, 0, 1 << 17, keys, masks, wants, -1),
        "scan 4 s2 constraints (2^17)": lambda: mod.scan(py.FAM_S2, 7, 0, 1 << 17, keys[:4], [3] * 4, wants[:4], 1),
        "embeddings 4 -> 7": lambda: mod.embeddings(4, sub, [0] * 4, n, codes, [0] * n, -1, False),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", py)] + ([("cython", cy)] if cy is not None else [])
    results = {name: {k: min(timeit.repeat(f, number=1, repeat=args.repeat)) for k, f in workloads(mod).items()}
               for name, mod in backends}
    print(f"{'workload':32} " + " ".join(f"{b:>10}" for b, _ in backends) + ("    speedup" if cy else ""))
    for k in results["python"]:
        row = " ".join(f"{results[b][k] * 1e3:9.1f}ms" for b, _ in backends)
        extra = f"  {results['python'][k] / results['cython'][k]:8.1f}x" if cy else ""
        print(f"{k:32} {row}{extra}")
    if cy is None:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
