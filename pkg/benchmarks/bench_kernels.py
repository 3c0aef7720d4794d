"""Compare the numba and numpy kernel backends on a few fixed workloads.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs once untimed so numba compilation is not counted.
"""

from __future__ import annotations

import argparse
import timeit

from pluscodes import _kernels
from pluscodes.codes import LinearCode, make_bch_check, make_golay, span_min_weight
from pluscodes.qstate import verify_orthogonal
from pluscodes.registry import Registry


def workloads():
    reg = Registry.load()
    golay = make_golay().generator
    bch21 = LinearCode.from_check(make_bch_check((0, 2), 5, 2)).generator
    bch16 = LinearCode.from_check(make_bch_check((0, 2), 5, 3)).generator
    steane = reg["steane-8-3-3"].signed()
    eleven = reg["signed-11-5-3"].signed()
    return {
        "min_weight golay [23,12]": lambda: span_min_weight(golay),
        "min_weight bch [31,16]": lambda: span_min_weight(bch16),
        "min_weight bch [31,21]": lambda: span_min_weight(bch21),
        "conflicts {8,3,3} t=2": lambda: verify_orthogonal(steane, t=2),
        "conflicts {11,5,3} t=2": lambda: verify_orthogonal(eleven, t=2),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    jobs = workloads()
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in jobs.items():
        best = {}
        for b in backends:
            _kernels.BACKEND = b
            fn()
            best[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        row = f"{name:28s}" + "".join(f"{best[b] * 1e3:10.2f}ms" for b in backends)
        if "numba" in best:
            row += f"  {best['numpy'] / best['numba']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
