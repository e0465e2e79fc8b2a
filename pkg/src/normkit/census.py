"""Exhaustive checks of how the pointwise preorder interacts with composition.

For carriers ``P``, ``Q``, ``R`` and preorders on ``Q`` and ``R`` this checks,
over every choice of maps:

* precomposition: ``g1 <= g2`` pointwise implies ``g1 . f <= g2 . f``;
* postcomposition: ``f1 <= f2`` pointwise and ``g`` monotone implies
  ``g . f1 <= g . f2``;
* the pointwise preorder on ``P -> Q`` is antisymmetric whenever the order on
  ``Q`` is a partial order.

Maps are integer arrays of images, so each size triple is a handful of numpy
broadcasts rather than a Python loop per map.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .structure import enumerate_preorders


def _maps(n_dom: int, n_cod: int) -> np.ndarray:
    """All maps ``range(n_dom) -> range(n_cod)`` as rows, lexicographic."""
    rows = list(itertools.product(range(n_cod), repeat=n_dom))
    return np.array(rows, dtype=np.intp).reshape(len(rows), n_dom)


def _order_matrix(n: int, rel) -> np.ndarray:
    m = np.zeros((n, n), dtype=bool)
    for a, b in rel:
        m[a, b] = True
    return m


def _pointwise(leq: np.ndarray, maps: np.ndarray) -> np.ndarray:
    """``out[i, j]`` iff ``maps[i] <= maps[j]`` at every point."""
    return leq[maps[:, None, :], maps[None, :, :]].all(axis=-1)


def _is_antisymmetric(leq: np.ndarray) -> bool:
    both = leq & leq.T
    return not (both & ~np.eye(len(leq), dtype=bool)).any()


@dataclass
class CensusResult:
    max_size: int
    preorder_counts: dict = field(default_factory=dict)   # carrier size -> count
    precomposition_checked: int = 0
    postcomposition_checked: int = 0
    antisymmetry_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self):
        return {
            "max_size": self.max_size,
            "preorder_counts": {str(k): v for k, v in sorted(self.preorder_counts.items())},
            "precomposition_checked": self.precomposition_checked,
            "postcomposition_checked": self.postcomposition_checked,
            "antisymmetry_checked": self.antisymmetry_checked,
            "violations": [list(v) for v in self.violations],
            "passed": self.passed,
        }


def _check_sizes(p: int, q: int, r: int, orders: dict, out: CensusResult, limit: int):
    F = _maps(p, q)               # P -> Q
    G = _maps(q, r)               # Q -> R
    GF = G[:, F] if len(F) else np.zeros((len(G), 0, p), dtype=np.intp)  # [g, f, x] = g(f(x))
    for qi, leq_q in enumerate(orders[q]):
        above_pq = _pointwise(leq_q, F)
        if r == 0 and _is_antisymmetric(leq_q):   # independent of R, so once per (P, Q)
            out.antisymmetry_checked += 1
            if (above_pq & above_pq.T & ~np.eye(len(F), dtype=bool)).any():
                out.violations.append(("antisymmetry", p, q, qi))
        q_pairs = np.argwhere(leq_q)
        for ri, leq_r in enumerate(orders[r]):
            # precomposition: every pointwise-related (g1, g2) and every f
            above_qr = _pointwise(leq_r, G)
            g1, g2 = np.nonzero(above_qr)
            lhs = leq_r[GF[g1], GF[g2]].all(axis=-1)      # [pair, f]
            out.precomposition_checked += lhs.size
            if not lhs.all():
                out.violations.append(("precomposition", p, q, r, qi, ri))
            # postcomposition: every monotone g and related (f1, f2)
            if len(q_pairs):
                mono = leq_r[G[:, q_pairs[:, 0]], G[:, q_pairs[:, 1]]].all(axis=-1)
            else:
                mono = np.ones(len(G), dtype=bool)
            f1, f2 = np.nonzero(above_pq)
            rhs = leq_r[GF[mono][:, f1], GF[mono][:, f2]].all(axis=-1)
            out.postcomposition_checked += rhs.size
            if not rhs.all():
                out.violations.append(("postcomposition", p, q, r, qi, ri))
            if len(out.violations) >= limit:
                return


def pointwise_order_census(max_size: int = 3, violation_limit: int = 100) -> CensusResult:
    """Run every check for carrier sizes ``0..max_size`` (empty carrier included)."""
    out = CensusResult(max_size)
    orders = {}
    for n in range(max_size + 1):
        pre = enumerate_preorders(range(n))
        out.preorder_counts[n] = len(pre)
        orders[n] = [_order_matrix(n, rel) for rel in pre]
    for p, q, r in itertools.product(range(max_size + 1), repeat=3):
        _check_sizes(p, q, r, orders, out, violation_limit)
        if len(out.violations) >= violation_limit:
            break
    return out
