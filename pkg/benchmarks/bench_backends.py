"""Time the default gap sweep with the numba kernels and with the numpy fallback.

Each backend runs in a fresh interpreter because the choice is made from
REENTRANT_CASIMIR_JIT at import time. Usage:

    python benchmarks/bench_backends.py [--repeat 3] [--workers 1]
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from reentrant_casimir import _kernels
from reentrant_casimir.sweep import emit_csv, parse_config, run_sweep, with_workers

spec = with_workers(parse_config(""), int(sys.argv[1]))
t0 = time.perf_counter()
run_sweep(spec)  # loads or compiles kernels, fills caches
first = time.perf_counter() - t0
times = []
for _ in range(int(sys.argv[2])):
    out = run_sweep(spec)
    times.append(out.timing.wall_time)
print(json.dumps({"backend": _kernels.BACKEND, "first": first, "best": min(times),
                  "evals": out.timing.n_evaluations, "csv": emit_csv(out.rows)}))
"""


def run(backend_flag, workers, repeat):
    env = dict(os.environ, REENTRANT_CASIMIR_JIT=backend_flag)
    proc = subprocess.run([sys.executable, "-c", CHILD, str(workers), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def _max_rel_diff(csv_a, csv_b):
    # error-estimate columns are |K15 - G7| differences and not compared
    header = csv_a.splitlines()[0].split(",")
    cols = [i for i, name in enumerate(header) if name.startswith("kC_")]
    worst = 0.0
    for la, lb in zip(csv_a.splitlines()[1:], csv_b.splitlines()[1:]):
        va, vb = la.split(","), lb.split(",")
        for i in cols:
            a, b = float(va[i]), float(vb[i])
            if a != b:
                worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    return worst


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    res = {flag: run(flag, args.workers, args.repeat) for flag in ("1", "0")}
    jit, ref = res["1"], res["0"]
    print(f"{'backend':>8} {'first run s':>12} {'best s':>10} {'evaluations':>12}")
    for r in (jit, ref):
        print(f"{r['backend']:>8} {r['first']:12.3f} {r['best']:10.4f} {r['evals']:12d}")
    print(f"speedup numba vs numpy: {ref['best'] / jit['best']:.1f}x")
    print(f"max relative k_C difference between backends: {_max_rel_diff(jit['csv'], ref['csv']):.2e}")


if __name__ == "__main__":
    main()
