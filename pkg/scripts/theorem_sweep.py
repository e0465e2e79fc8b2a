"""Sweep the structural facts over every Z_n / N_k pair and report counts.

Also runs the ring-restriction equivalence and, with ``--closure``, the
composition check over the standard model family.
"""
from __future__ import annotations

import argparse
import time

from normkit.examples import restriction_sweep, standard_family, theorem_sweep
from normkit.prenorm import composition_closure


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--closure", action="store_true", help="also compose all prenorms in the standard family")
    args = ap.parse_args()

    results = list(theorem_sweep(args.max_n, args.max_k).values())
    results.append(restriction_sweep(args.max_n, args.max_k))
    ok = True
    for r in results:
        ok &= r.passed
        print(f"{r.name:<30} {r.checked:>8} checked  {len(r.violations)} violations")
    if args.closure:
        t0 = time.perf_counter()
        rep = composition_closure(standard_family())
        ok &= rep.passed
        print(f"{'composition closure':<30} {rep.checked:>8} checked  {len(rep.violations)} violations"
              f"  ({rep.prenorms} prenorms, {time.perf_counter() - t0:.1f}s)")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
