"""Compiled vs pure-Python subset-sum kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each case times ``subset_table`` / ``subset_totals`` under both backends,
checks the outputs are identical, and prints the best wall time of N runs.
"""
from __future__ import annotations

import argparse
import time

from waring_sieve import kernels
from waring_sieve.domain import ValuedDomain

CASES = [
    ("table", 257, 2, 40),
    ("table", 1009, 2, 32),
    ("table", 2003, 2, 32),
    ("totals", 521, 1, None),
    ("totals", 2003, 2, None),
]


def _run(kind: str, slots: list[int], p: int, kmax):
    if kind == "table":
        return kernels.subset_table(slots, p, kmax)
    return kernels.subset_totals(slots, p)


def bench(kind: str, p: int, m: int, kmax, repeat: int) -> dict:
    slots = ValuedDomain.power_image(p, m).slots()
    timings, outputs = {}, {}
    for backend in kernels.available_backends():
        with kernels.use_backend(backend):
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                outputs[backend] = _run(kind, slots, p, kmax)
                best = min(best, time.perf_counter() - t0)
            timings[backend] = best
    values = list(outputs.values())
    return {"timings": timings, "agree": all(v == values[0] for v in values)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the p=2003 cases")
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; timing the python kernels only")
    header = f"{'kernel':8} {'p':>5} {'m':>3} {'kmax':>5} " + " ".join(f"{b:>10}" for b in backends)
    print(header + ("   speedup" if len(backends) > 1 else "") + "  agree")
    for kind, p, m, kmax in CASES:
        if args.quick and p > 1100:
            continue
        res = bench(kind, p, m, kmax, args.repeat)
        t = res["timings"]
        line = f"{kind:8} {p:>5} {m:>3} {str(kmax or '-'):>5} " + " ".join(f"{t[b]:>9.3f}s" for b in backends)
        if len(backends) > 1:
            line += f" {t['python'] / t['compiled']:>8.1f}x"
        print(line + f"  {res['agree']}")


if __name__ == "__main__":
    main()
