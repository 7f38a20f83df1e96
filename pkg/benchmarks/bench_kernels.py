#!/usr/bin/env python3
"""Benchmark the refinement kernels: numba @njit backend vs numpy fallback.

Runs whole-pipeline refinements (the service's hot path) at growing input
sizes and reports per-backend wall time. The numpy fallback is exercised in
a subprocess with CIRCLEAVG_PURE_NUMPY=1 so both backends measure the same
code paths they use in production.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

_WORKER = """
import json, sys, time
import numpy as np
from circleavg import _kernels
from circleavg.subdivision import PnpPolygon, SchemeConfig, refine

spec = json.loads(sys.argv[1])
_kernels.warmup()

results = []
for n, scheme, m, levels in spec["cases"]:
    ang = np.linspace(0, 2 * np.pi, n, endpoint=False)
    poly = PnpPolygon(
        np.column_stack((np.cos(ang), np.sin(ang))) * (2.0 + 0.3 * np.sin(5 * ang[:, None])),
        np.column_stack((np.cos(ang), np.sin(ang))),
        closed=True,
    )
    best = float("inf")
    for _ in range(spec["repeat"]):
        t0 = time.perf_counter()
        refine(poly, SchemeConfig(scheme, levels, m))
        best = min(best, time.perf_counter() - t0)
    results.append(best)
print(json.dumps({"backend": _kernels.backend_name(), "times": results}))
"""


def run_backend(spec: dict, force_numpy: bool) -> dict:
    env = dict(os.environ)
    if force_numpy:
        env["CIRCLEAVG_PURE_NUMPY"] = "1"
    else:
        env.pop("CIRCLEAVG_PURE_NUMPY", None)
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, json.dumps(spec)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    cases = [
        (16, "mlr", 1, 8),
        (16, "mlr", 3, 8),
        (16, "m4pt", 1, 8),
        (200, "mlr", 1, 8),
        (200, "m4pt", 1, 8),
        (200, "mlr", 2, 10),
    ]
    spec = {"cases": cases, "repeat": args.repeat}

    numba_res = run_backend(spec, force_numpy=False)
    numpy_res = run_backend(spec, force_numpy=True)

    print(f"{'case':<28} {'final verts':>11} {numba_res['backend']:>10} {numpy_res['backend']:>10} {'speedup':>8}")
    for (n, scheme, m, levels), t_nb, t_np in zip(cases, numba_res["times"], numpy_res["times"]):
        label = f"{scheme} m={m} n={n} L={levels}"
        final = n * 2**levels
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{label:<28} {final:>11} {t_nb*1e3:>8.2f}ms {t_np*1e3:>8.2f}ms {ratio:>7.2f}x")

    # the interactive budget: 200 vertices, 8 levels, within 50 ms
    budget_case = cases.index((200, "mlr", 1, 8))
    t = numba_res["times"][budget_case]
    verdict = "within" if t < 0.050 else "OVER"
    print(f"\nlatency budget (200 verts, 8 levels): {t*1e3:.1f} ms -- {verdict} 50 ms")


if __name__ == "__main__":
    main()
