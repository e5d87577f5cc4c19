"""Compiled kernels against the pure-Python fallback.

Each backend runs in its own interpreter, since the choice is made at
import time from ``SEPGRAPH_PURE``.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
from sepgraph import kernels
from sepgraph.surface import build_surface
from sepgraph.normal import curves, separating_curves, intersection_number

out = {"backend": kernels.BACKEND}
t = time.perf_counter()
cs, _ = curves(build_surface((2, 1)), 4)
out["enumerate S_{2,1} W=4"] = time.perf_counter() - t
out["curves"] = len(cs)
t = time.perf_counter()
seps, _ = separating_curves(build_surface((2, 1)), 6)
out["separating S_{2,1} W=6"] = time.perf_counter() - t
t = time.perf_counter()
sample = cs[:: max(1, len(cs) // 60)]
total = sum(intersection_number(a, b) for a in sample for b in sample)
out["intersections 60x60"] = time.perf_counter() - t
out["checksum"] = total
print(json.dumps(out))
"""


def run(pure: bool) -> dict:
    env = dict(os.environ)
    env["SEPGRAPH_PURE"] = "1" if pure else "0"
    res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    best = {}
    for pure in (False, True):
        runs = [run(pure) for _ in range(args.repeat)]
        head = runs[0]
        keys = [k for k, v in head.items() if isinstance(v, float)]
        best[head["backend"]] = {k: min(r[k] for r in runs) for k in keys} | {
            "checksum": head["checksum"],
            "curves": head["curves"],
        }
    names = list(best)
    if best[names[0]]["checksum"] != best[names[1]]["checksum"]:
        sys.exit("backends disagree")
    print(f"{'task':32s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}")
    for k in best[names[0]]:
        if k in ("checksum", "curves"):
            continue
        a, b = best[names[0]][k], best[names[1]][k]
        print(f"{k:32s}{a:12.3f}{b:12.3f}{b / a:10.1f}x")


if __name__ == "__main__":
    main()
