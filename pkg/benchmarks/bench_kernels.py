"""Compiled vs pure-Python search kernels on Grassmann-code workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each row times one exhaustive search on both backends and checks that the
value, witness and visited-leaf count agree.
"""
import argparse
import time

from grasswt.grasscode import build_code, g_s_search
from grasswt.lincode import higher_weight_search
from grasswt.search import AVAILABLE_BACKENDS, SearchConfig

# (label, ell, m, q, side, r, prune); the dual rows run unpruned to time raw enumeration
CASES = [
    ("C(2,4) q=2 d_3 primal", 2, 4, 2, "primal", 3, True),
    ("C(2,4) q=3 d_2 primal", 2, 4, 3, "primal", 2, True),
    ("C(2,5) q=2 d_3 primal", 2, 5, 2, "primal", 3, True),
    ("C(2,5) q=2 d_5 primal", 2, 5, 2, "primal", 5, True),
    ("C(2,5) q=2 g_6 dual", 2, 5, 2, "dual", 6, False),
    ("C(2,4) q=3 g_3 dual", 2, 4, 3, "dual", 3, False),
]


def _run(C, side, r, prune, backend):
    cfg = SearchConfig(backend=backend, prune=prune)
    if side == "primal":
        return higher_weight_search(C, r, cfg)
    return g_s_search(C, r, cfg)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    if "cython" not in AVAILABLE_BACKENDS:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
    codes = {}
    print(f"{'case':<26}{'leaves':>12}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, ell, m, q, side, r, prune in CASES:
        C = codes.setdefault((ell, m, q), build_code(ell, m, q))
        times, results = {}, {}
        for backend in AVAILABLE_BACKENDS:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[backend] = _run(C, side, r, prune, backend)
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
        ref = results["python"]
        for res in results.values():
            assert (res.value, res.rows, res.leaves) == (ref.value, ref.rows, ref.leaves), name
        py, cy = times["python"], times.get("cython")
        cy_txt = f"{cy:11.3f}{py / cy:8.1f}x" if cy else f"{'-':>11}{'-':>9}"
        print(f"{name:<26}{ref.leaves:>12}{py:11.3f}{cy_txt}")


if __name__ == "__main__":
    main()
