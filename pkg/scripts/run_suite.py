"""Run the default suite and write JSON and markdown reports.

    python3 scripts/run_suite.py [--out-dir results] [--seed 0] [--no-cache]
"""
import argparse
import sys
import time
from pathlib import Path

from starlab.report import SuiteConfig, emit_report, exit_status, run_suite, verify_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-cache", action="store_true")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    report = run_suite(None, SuiteConfig(seed=args.seed, use_cache=not args.no_cache))
    dt = time.perf_counter() - t0
    emit_report(report, "json", out / "suite.json")
    emit_report(report, "markdown", out / "suite.md")

    for t in report["theorems"]:
        tag = "VACUOUS" if t["vacuous"] else ("FAIL" if t["counterexamples"] else "ok")
        print(f"{t['id']:<13} {t['passCount']:>3}/{t['hypothesisCount']:<3} {tag}")
    n, failures = verify_report(report)
    print(f"{len(report['corpus'])} rings in {dt:.1f}s; {n - len(failures)}/{n} witnesses verified")
    return exit_status(report)


if __name__ == "__main__":
    sys.exit(main())
