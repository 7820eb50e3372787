"""Time the compiled census kernel against the pure-Python one.

    python benchmarks/bench_kernels.py --n 6 7 8 --repeat 3
"""

import argparse
import time

from vinglab import kernels
from vinglab.census import build_catalog
from vinglab.io import generate


def time_scan(cat, backend, k, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernels.scan(cat.conflict, cat.inc, cat.seg_at, k, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[6, 7, 8])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--shape", default="random")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python-above", type=int, default=8,
                    help="skip the Python kernel for larger N")
    args = ap.parse_args(argv)

    if not kernels.compiled_available():
        print("compiled kernel not built; only the Python kernel will run")
    print(f"{'N':>3} {'graphs':>10} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for n in args.n:
        cat = build_catalog(generate(args.shape, n, args.seed))
        tc = rc = None
        if kernels.compiled_available():
            tc, rc = time_scan(cat, "cython", args.k, args.repeat)
        tp = rp = None
        if n <= args.skip_python_above:
            tp, rp = time_scan(cat, "python", args.k, 1 if n >= 8 else args.repeat)
        if rc is not None and rp is not None and rc != rp:
            raise SystemExit(f"backends disagree at N={n}")
        count = (rc or rp)[0]
        speed = f"{tp / tc:8.1f}" if tc and tp else f"{'-':>8}"
        fmt = lambda t: f"{t:10.4f}" if t is not None else f"{'-':>10}"
        print(f"{n:>3} {count:>10} {fmt(tc)} {fmt(tp)} {speed}")


if __name__ == "__main__":
    main()
