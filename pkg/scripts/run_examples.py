"""Run the worked examples and print their subnorm counts and checks."""
from __future__ import annotations

import argparse
import json

from normkit.examples import EXAMPLES, run_worked_example


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=sorted(EXAMPLES))
    ap.add_argument("--n", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    reports = [run_worked_example(name, args.n, args.k, strict=False) for name in args.names]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True, default=str))
    else:
        for r in reports:
            print(f"{r.name}  {r.source.name} -> {r.target.name}  "
                  f"{len(r.subnorms)} subnorms  {'PASS' if r.passed else 'FAIL'}")
            for a in r.assertions:
                if not a.passed:
                    print(f"    {a.name} fails at {a.witness}")
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
