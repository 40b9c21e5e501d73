"""Wall-clock comparison of the gmpy2 and pure-Python rational backends.

Each workload runs in a fresh interpreter so the backend switch
(KMINKOWSKI_PURE=1) and the per-process caches do not leak between runs.

    python3 benchmarks/bench_backends.py [--repeat 3] [--only poincare-n3]
"""

import argparse
import os
import statistics
import subprocess
import sys

WORKLOADS = {
    "normalize-n4": "from kminkowski.cli import parse_expression; from kminkowski.coaction import build_context;"
                    "from kminkowski.minkowski import Metric; c = build_context(Metric.minkowski(4));"
                    "parse_expression('(x0 + x1*x2 + k^-1*x3)^5', c)",
    "hopf-minkowski-n4": "from kminkowski.minkowski import *; verify_hopf_minkowski(build_minkowski(Metric.minkowski(4)), 3)",
    "poincare-n3": "from kminkowski.poincare import *; from kminkowski.minkowski import Metric;"
                   "verify_hopf_poincare(build_poincare(Metric.minkowski(3)), 2)",
    "coaction-n2": "from kminkowski.coaction import *; from kminkowski.minkowski import Metric;"
                   "verify_coaction_suite(build_context(Metric.minkowski(2)), 3, 50, 0)",
    "calculus-n4": "from kminkowski.calculus import *; from kminkowski.minkowski import Metric;"
                   "verify_calculus_suite(build_calculus(Metric.minkowski(4)), 4, 30, 0)",
    "classify-n4": "from kminkowski.ideal_lab import classify; from kminkowski.coaction import build_context;"
                   "from kminkowski.minkowski import Metric; classify(build_context(Metric.minkowski(4)), 4)",
}

TIMER = "import time; t = time.perf_counter(); {body}; print(time.perf_counter() - t)"


def run(body: str, pure: bool) -> float:
    env = dict(os.environ)
    env.pop("KMINKOWSKI_PURE", None)
    if pure:
        env["KMINKOWSKI_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", TIMER.format(body=body)], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", action="append", choices=sorted(WORKLOADS))
    args = ap.parse_args(argv)
    try:
        import gmpy2  # noqa: F401
    except ImportError:
        print("gmpy2 is not installed; only the pure backend can be timed", file=sys.stderr)
        return 1
    names = args.only or list(WORKLOADS)
    print(f"{'workload':<20} {'gmpy2 [s]':>10} {'pure [s]':>10} {'speedup':>8}")
    for name in names:
        fast = statistics.median(run(WORKLOADS[name], False) for _ in range(args.repeat))
        slow = statistics.median(run(WORKLOADS[name], True) for _ in range(args.repeat))
        print(f"{name:<20} {fast:>10.3f} {slow:>10.3f} {slow / fast:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
