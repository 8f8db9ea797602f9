"""Run every open-question hunt with a larger budget and list the findings.

    python3 scripts/hunt_all.py [--budget 80] [--seed 0]
"""
import argparse
import json

from starlab.hunts import QUESTIONS, hunt_counterexample
from starlab.properties import PropertyCache


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int, default=80)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()
    cache = PropertyCache()
    results = []
    for q in QUESTIONS:
        res = hunt_counterexample(q, args.budget, args.seed, cache)
        results.append(res)
        print(f"{q:<8} examined {res['examined']:>3}  in class {res['inClass']:>3}  findings {len(res['findings'])}"
              f"  skipped {len(res['skipped'])}")
        for f in res["findings"]:
            print(f"         {f['ring']} (order {f['order']})")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
