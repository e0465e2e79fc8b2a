"""Exhaustive pointwise-preorder census over small carriers."""
from __future__ import annotations

import argparse
import json
import time

from normkit.census import pointwise_order_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    res = pointwise_order_census(args.max_size)
    if args.json:
        print(json.dumps(res.to_json(), indent=2, sort_keys=True))
    else:
        print("preorders by carrier size:", res.preorder_counts)
        print(f"precomposition instances:  {res.precomposition_checked}")
        print(f"postcomposition instances: {res.postcomposition_checked}")
        print(f"antisymmetry cases:        {res.antisymmetry_checked}")
        print(f"violations: {len(res.violations)}  ({time.perf_counter() - t0:.2f}s)")
    return 0 if res.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
