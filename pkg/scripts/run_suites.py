"""Run every verification suite and print a one-line summary per suite."""

import argparse
import time

from grpscheme.suites import SUITES, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    cfg = SuiteConfig(seed=args.seed, jobs=args.jobs)
    failed = 0
    for name in SUITES:
        t0 = time.perf_counter()
        rep = run_suite(name, cfg)
        bad = rep.failures()
        failed += len(bad)
        print(f"{name:15s} {len(rep.checks):4d} checks  {len(bad):3d} failed  {time.perf_counter() - t0:6.1f}s")
        for c in bad:
            print(f"    FAIL {c.name}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
