"""Compare the pure-Python and compiled Weyl-group kernels.

    python3 benchmarks/bench_kernels.py            # quick cases
    python3 benchmarks/bench_kernels.py --full     # adds E7 on the Python side
"""

import argparse
import time

from conelat.folding import folded_weyl_order
from conelat.kernels import get_backend

CASES = [
    ("A5", "flip", "permutation"),
    ("D5", "flip", "permutation"),
    ("E6", "flip", "permutation"),
    ("D6", "flip", "orbit"),
    ("E6", "flip", "orbit"),
    ("E7", "identity", "orbit"),
]


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true", help="also time the slow Python runs")
    args = ap.parse_args()

    backends = {"python": get_backend("python")}
    try:
        backends["cython"] = get_backend("cython")
    except ImportError:
        print("compiled kernels not built; timing the Python fallback only")

    print(f"{'type':5} {'tau':9} {'method':12} {'order':>8} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, tau, method in CASES:
        row = {}
        order = None
        for bname, impl in backends.items():
            if bname == "python" and name == "E7" and not args.full:
                continue
            t, order = best_of(
                lambda: folded_weyl_order(name, tau, method=method, allow_large=True, backend=impl),
                args.repeat if bname == "cython" or name != "E7" else 1,
            )
            row[bname] = t
        cells = " ".join(f"{row[b]:9.3f}s" if b in row else f"{'-':>10}" for b in backends)
        speed = f"{row['python'] / row['cython']:8.1f}x" if len(row) == 2 else ""
        print(f"{name:5} {tau:9} {method:12} {order:8d} {cells} {speed}")


if __name__ == "__main__":
    main()
