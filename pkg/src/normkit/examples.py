"""Fixture models and executable worked examples of norms on small algebras.

Sources are cyclic groups and rings ``Z_n``; targets are the saturating
semirings ``N_k = {0, ..., k}`` with ``a + b`` and ``a * b`` capped at ``k``
and every order relation the usual one.  Sources carry diagonal relations,
so only the lax-preservation condition ever binds.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ExampleAssertionFailed
from .prenorm import Prenorm, check_prenorm, classify, enumerate_prenorms
from .signature import canonical_injection, check_signature_hom
from .structure import FiniteStructure, chain_order, find_pivot, relation_flags
from .theory import (
    ALGEBRAIC,
    STANDARD_NAMES,
    SUBALGEBRAIC,
    Model,
    restrict_model,
    smallest_theory,
    standard_signature,
    standard_theory,
)

GROUP_LIKE = ("sgrp", "mon", "grp")
RING_LIKE = ("rg", "rig", "rng", "ring")
SEMIRING_LIKE = ("sgrp", "mon", "rg", "rig")


@dataclass(frozen=True)
class FixtureSpec:
    kind: str            # cyclic_group, cyclic_ring, truncated_semiring, norm_target
    size: int            # n for cyclic fixtures, k for truncated ones
    theory: str = "grp"
    mode: str = SUBALGEBRAIC
    order: str = "standard"

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("fixture size must be at least 1")


def _structure(carrier, theory_name, tables, relation_spec, balanced=True):
    sig = standard_signature(theory_name, balanced=balanced)
    fns = {f.name: tables[f.name] for f in sig.functions}
    rels = {r.name: relation_spec for r in sig.relations}
    return FiniteStructure(carrier, sig, fns, rels)


def _cyclic_tables(n):
    return {
        "plus": lambda a, b: (a + b) % n,
        "times": lambda a, b: (a * b) % n,
        "u": lambda a: (-a) % n,
        "zero": 0,
        "one": 1 % n,
    }


def build_cyclic_group_model(n: int, mode: str = SUBALGEBRAIC, theory: str = "grp", budget=None) -> Model:
    """``Z_n`` under addition mod ``n``.

    ``mode="algebraic"`` uses the relation-free theory; otherwise the
    embodied theory with every relation interpreted as equality.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if theory not in GROUP_LIKE:
        raise ValueError(f"cyclic groups model {GROUP_LIKE}, not {theory!r}")
    return _cyclic(n, mode, theory, budget)


def build_cyclic_ring_model(n: int, unital: bool = True, mode: str = SUBALGEBRAIC, theory: str | None = None, budget=None) -> Model:
    """``Z_n`` with addition and multiplication mod ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    theory = theory or ("ring" if unital else "rng")
    return _cyclic(n, mode, theory, budget)


def _cyclic(n, mode, theory, budget):
    balanced = mode != ALGEBRAIC
    st = _structure(range(n), theory, _cyclic_tables(n), "equality", balanced)
    return Model.of(standard_theory(theory, mode), st, f"Z{n}", budget)


def _truncated_tables(k):
    return {
        "plus": lambda a, b: min(a + b, k),
        "times": lambda a, b: min(a * b, k),
        "u": lambda a: a,
        "zero": 0,
        "one": min(1, k),
    }


def _order(k, order):
    if order == "standard":
        return chain_order(range(k + 1))
    if order == "reversed":
        return chain_order(range(k, -1, -1))
    if order == "equality":
        return "equality"
    raise ValueError(f"unknown order {order!r}")


def build_truncated_semiring_model(k: int, theory: str = "rig", order: str = "standard", mode: str = SUBALGEBRAIC) -> Model:
    """``N_k``: saturating addition and multiplication on ``{0..k}``."""
    if k < 1:
        raise ValueError("k must be positive")
    if theory not in SEMIRING_LIKE:
        raise ValueError(f"truncated semirings model {SEMIRING_LIKE}, not {theory!r}")
    st = _structure(range(k + 1), theory, _truncated_tables(k), _order(k, order))
    suffix = "" if order == "standard" else f"_{order}"
    return Model.of(standard_theory(theory, mode), st, f"N{k}{suffix}")


def build_norm_target(k: int, theory: str = "grp", order: str = "standard") -> Model:
    """``N_k`` over a standard signature with ``u`` read as the identity.

    The theory is the smallest subalgebraic one of that signature, so only
    the order axioms are asserted.
    """
    if k < 1:
        raise ValueError("k must be positive")
    st = _structure(range(k + 1), theory, _truncated_tables(k), _order(k, order))
    return Model.of(smallest_theory(theory), st, f"N{k}u_{theory}")


def build_fixture(spec: FixtureSpec) -> Model:
    if spec.kind == "cyclic_group":
        return build_cyclic_group_model(spec.size, spec.mode, spec.theory)
    if spec.kind == "cyclic_ring":
        return build_cyclic_ring_model(spec.size, mode=spec.mode, theory=spec.theory)
    if spec.kind == "truncated_semiring":
        return build_truncated_semiring_model(spec.size, spec.theory, spec.order, spec.mode)
    if spec.kind == "norm_target":
        return build_norm_target(spec.size, spec.theory, spec.order)
    raise ValueError(f"unknown fixture kind {spec.kind!r}")


def standard_family(ns=(2, 3), ks=(1, 2)) -> list[Model]:
    """Cyclic ``Z_n`` and truncated ``N_k`` under every standard theory.

    Where ``N_k`` cannot model the theory (anything with inverses) the
    norm target over that signature stands in for it.
    """
    out = []
    for t in STANDARD_NAMES:
        for n in ns:
            out.append(build_cyclic_group_model(n, theory=t) if t in GROUP_LIKE
                       else build_cyclic_ring_model(n, theory=t))
        for k in ks:
            out.append(build_truncated_semiring_model(k, theory=t) if t in SEMIRING_LIKE
                       else build_norm_target(k, t))
    return out


# derived facts, usable on any prenorm

def units(model: Model, op: str = "times", unit: str = "one") -> list:
    st = model.structure
    e = st.apply(unit)
    return [a for a in st.carrier
            if any(st.apply(op, a, b) == e and st.apply(op, b, a) == e for b in st.carrier)]


def is_compatible(model: Model, op: str, rel: str) -> bool:
    """``a1 <= b1`` and ``a2 <= b2`` imply ``a1 op a2 <= b1 op b2``."""
    st = model.structure
    leq = st.relation(rel)
    return all(
        (st.apply(op, a1, a2), st.apply(op, b1, b2)) in leq
        for (a1, b1), (a2, b2) in itertools.product(leq, repeat=2)
    )


def forced_constant_violations(p: Prenorm) -> list[tuple]:
    """Source constants whose image is not the least target constant it should be.

    Applies where the relation paired with the image constant is a partial
    order with that constant as least element; there ``phi(c1) = c2``.
    """
    out = []
    sig1, sig2 = p.source.signature, p.target.signature
    st1, st2 = p.source.structure, p.target.structure
    for f in sig1.functions:
        if f.arity != 0:
            continue
        g = p.hom(f.name)
        rel = sig2.paired_relation(g)
        if rel is None or not relation_flags(st2, rel).partial_order:
            continue
        c2 = st2.apply(g)
        leq = st2.relation(rel)
        if not all((c2, b) in leq for b in st2.carrier):
            continue
        c1 = st1.apply(f.name)
        if p(c1) != c2:
            out.append((f.name, c1, p(c1), c2))
    return out


def symmetry_violations(p: Prenorm, inv: str = "u") -> list:
    st = p.source.structure
    return [a for a in st.carrier if p(st.apply(inv, a)) != p(a)]


def unit_norm_violations(p: Prenorm, unit: str = "one", op: str = "times") -> list:
    """Check ``||1|| = 1`` when ``||1||`` is a unit and the order is compatible."""
    tgt = p.target
    g = p.hom(unit)
    rel = tgt.signature.paired_relation(p.hom(op))
    if not is_compatible(tgt, p.hom(op), rel):
        return []
    norm_one = p(p.source.structure.apply(unit))
    if norm_one in units(tgt, p.hom(op), g) and norm_one != tgt.structure.apply(g):
        return [norm_one]
    return []


def passes_restricted(source: Model, target: Model, hom, phi, small_name: str) -> bool:
    """Does ``phi`` pass on the source restricted to ``♯s`` of a smaller standard theory?

    The target is kept as is and the hom is restricted to the smaller
    signature.
    """
    small = standard_theory(small_name)
    rs = restrict_model(source, small)
    amap = hom.map
    alpha = check_signature_hom({s: amap[s] for s in rs.signature.names}, rs.signature, target.signature)
    return check_prenorm(rs, target, alpha, phi).passed


# worked examples

@dataclass(frozen=True)
class Assertion:
    name: str
    passed: bool
    checked: int
    witness: object = None

    def to_json(self):
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "witness": w}


@dataclass
class ExampleReport:
    name: str
    source: Model
    target: Model
    subnorms: list
    assertions: list = field(default_factory=list)
    classifications: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_json(self):
        return {
            "example": self.name,
            "source": self.source.name,
            "target": self.target.name,
            "source_theory": self.source.signature.to_json(),
            "count": len(self.subnorms),
            "subnorms": [
                {
                    "phi": [[a, b] for a, b in zip(self.source.carrier, p.phi)],
                    "is_subnorm": p.report.is_subnorm,
                    "classification": self.classifications[i].to_json() if i in self.classifications else None,
                }
                for i, p in enumerate(self.subnorms)
            ],
            "assertions": [a.to_json() for a in self.assertions],
            "passed": self.passed,
        }


def _assert(report, name, items, bad_of):
    """Record an assertion that ``bad_of(x)`` is falsy for every ``x``."""
    items = list(items)
    for x in items:
        bad = bad_of(x)
        if bad:
            report.assertions.append(Assertion(name, False, len(items), bad))
            return
    report.assertions.append(Assertion(name, True, len(items)))


def _all_maps(m1, m2):
    return itertools.product(m2.carrier, repeat=len(m1.carrier))


def _characterization(report, name, m1, m2, alpha, direct):
    """Enumerated subnorms equal the maps accepted by ``direct``."""
    found = {p.phi for p in report.subnorms}

    def bad(phi):
        if (phi in found) != bool(direct(dict(zip(m1.carrier, phi)), phi)):
            return {"phi": list(phi), "enumerated": phi in found}
        return None

    _assert(report, name, _all_maps(m1, m2), bad)


def _le(model, rel):
    leq = model.structure.relation(rel)
    return lambda a, b: (a, b) in leq


def _setup(m1, m2):
    alpha = canonical_injection(m1.signature, m2.signature)
    subs = [p for p in enumerate_prenorms(m1, m2, alpha) if p.report.is_subnorm]
    return alpha, subs


def _example_e1(n, k):
    m1 = build_cyclic_group_model(n, theory="sgrp")
    m2 = build_truncated_semiring_model(k, theory="sgrp")
    alpha, subs = _setup(m1, m2)
    r = ExampleReport("E1", m1, m2, subs)
    s1, s2 = m1.structure, m2.structure
    le = _le(m2, "leq_plus")
    _characterization(
        r, "subadditivity characterizes semigroup subnorms", m1, m2, alpha,
        lambda f, _: all(le(f[s1.apply("plus", a, b)], s2.apply("plus", f[a], f[b]))
                         for a in s1.carrier for b in s1.carrier),
    )
    return r


def _definiteness_direct(p, c2, leq, excluded):
    vals = [p(a) for a in p.source.carrier]
    up = all((c2, v) in leq for v in vals)
    off = all(p(a) != c2 for a in p.source.carrier if a not in excluded)
    return up, up and off


def _example_e2(n, k):
    m1 = build_cyclic_group_model(n, theory="mon")
    m2 = build_truncated_semiring_model(k, theory="mon")
    alpha, subs = _setup(m1, m2)
    r = ExampleReport("E2", m1, m2, subs)
    le0 = _le(m2, "leq_zero")
    _characterization(
        r, "monoid subnorm iff semigroup restriction passes and ||0|| <= 0", m1, m2, alpha,
        lambda f, phi: passes_restricted(m1, m2, alpha, phi, "sgrp") and le0(f[0], 0),
    )
    _assert(r, "forced constant ||0|| = 0", subs, forced_constant_violations)
    _classify_zero(r)
    return r


def _classify_zero(r):
    leq = r.target.structure.relation(find_pivot(r.target.structure))
    c2 = r.target.structure.apply("zero")
    excluded = {r.source.structure.apply("zero")}
    for i, p in enumerate(r.subnorms):
        r.classifications[i] = classify(p, "zero")

    def bad(i):
        cls = r.classifications[i]
        p = r.subnorms[i]
        up, up_def = _definiteness_direct(p, c2, leq, excluded)
        trivial = len(set(p.phi)) == 1
        if (cls.upward_semidefinite, cls.upward_definite, cls.trivial) != (up, up_def, trivial):
            return {"phi": list(p.phi), "labels": cls.labels()}
        return None

    _assert(r, "definiteness labels match a direct check", range(len(r.subnorms)), bad)


def _example_e3(n, k):
    m1 = build_cyclic_group_model(n, theory="grp")
    m2 = build_norm_target(k, "grp")
    alpha, subs = _setup(m1, m2)
    r = ExampleReport("E3", m1, m2, subs)
    s1, s2 = m1.structure, m2.structure
    le_u = _le(m2, "leq_u")
    _characterization(
        r, "group subnorm iff ||u(a)|| <=_u u(||a||) and monoid restriction passes", m1, m2, alpha,
        lambda f, phi: all(le_u(f[s1.apply("u", a)], s2.apply("u", f[a])) for a in s1.carrier)
        and passes_restricted(m1, m2, alpha, phi, "mon"),
    )
    flags = relation_flags(s2, "leq_u")
    r.assertions.append(Assertion("target order is a partial order", flags.partial_order, 1))
    _assert(r, "group subnorms are symmetric", subs, symmetry_violations)
    _assert(r, "forced constant ||0|| = 0", subs, forced_constant_violations)
    _classify_zero(r)
    return r


def _example_e4(n, k):
    m1 = build_cyclic_ring_model(n, theory="rg")
    m2 = build_truncated_semiring_model(k, theory="rg")
    alpha, subs = _setup(m1, m2)
    r = ExampleReport("E4", m1, m2, subs)
    s1, s2 = m1.structure, m2.structure
    le_t = _le(m2, "leq_times")
    _characterization(
        r, "submultiplicativity plus monoid restriction characterizes semiring subnorms", m1, m2, alpha,
        lambda f, phi: all(le_t(f[s1.apply("times", a, b)], s2.apply("times", f[a], f[b]))
                           for a in s1.carrier for b in s1.carrier)
        and passes_restricted(m1, m2, alpha, phi, "mon"),
    )
    _assert(r, "forced constant ||0|| = 0", subs, forced_constant_violations)
    return r


def _restriction_equivalence(r, m1, m2, alpha, parts):
    _characterization(
        r, f"subnorm iff restrictions to {' and '.join(parts)} pass", m1, m2, alpha,
        lambda f, phi: all(passes_restricted(m1, m2, alpha, phi, s) for s in parts),
    )


def _example_e5(n, k):
    m1 = build_cyclic_ring_model(n, unital=False)
    m2 = build_norm_target(k, "rng")
    alpha, subs = _setup(m1, m2)
    r = ExampleReport("E5", m1, m2, subs)
    _restriction_equivalence(r, m1, m2, alpha, ("grp", "rg"))
    _assert(r, "forced constant ||0|| = 0", subs, forced_constant_violations)
    _assert(r, "ring subnorms are symmetric", subs, symmetry_violations)
    return r


def _example_e6(n, k):
    m1 = build_truncated_semiring_model(n, theory="rig")
    m2 = build_truncated_semiring_model(k, theory="rig")
    alpha, subs = _setup(m1, m2)
    r = ExampleReport("E6", m1, m2, subs)
    le1 = _le(m2, "leq_one")
    _characterization(
        r, "unital semiring subnorm iff semiring restriction passes and ||1|| <= 1", m1, m2, alpha,
        lambda f, phi: passes_restricted(m1, m2, alpha, phi, "rg") and le1(f[m1.structure.apply("one")], 1),
    )
    r.assertions.append(Assertion("multiplication is compatible with its order",
                                  is_compatible(m2, "times", "leq_times"), 1))
    _assert(r, "a unit norm of 1 equals 1", subs, unit_norm_violations)
    _assert(r, "forced constants", subs, forced_constant_violations)
    return r


def _example_e7(n, k):
    m1 = build_cyclic_ring_model(n, unital=True)
    m2 = build_norm_target(k, "ring")
    alpha, subs = _setup(m1, m2)
    r = ExampleReport("E7", m1, m2, subs)
    _restriction_equivalence(r, m1, m2, alpha, ("rig", "grp"))
    _assert(r, "ring subnorms are symmetric", subs, symmetry_violations)
    _assert(r, "a unit norm of 1 equals 1", subs, unit_norm_violations)
    return r


EXAMPLES = {
    "E1": (_example_e1, 2, 2),
    "E2": (_example_e2, 2, 2),
    "E3": (_example_e3, 3, 2),
    "E4": (_example_e4, 2, 2),
    "E5": (_example_e5, 2, 2),
    "E6": (_example_e6, 2, 2),
    "E7": (_example_e7, 2, 2),
}


def run_worked_example(name: str, n: int | None = None, k: int | None = None, strict: bool = True) -> ExampleReport:
    """Enumerate the subnorms of one example and check its stated facts.

    ``n`` sizes the source (for E6 the source is ``N_n``), ``k`` the
    target.  With ``strict`` a failed assertion raises.
    """
    key = name.upper()
    if key not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}")
    fn, n0, k0 = EXAMPLES[key]
    report = fn(n or n0, k or k0)
    if strict and not report.passed:
        bad = next(a for a in report.assertions if not a.passed)
        raise ExampleAssertionFailed(f"{key}: {bad.name} fails at {bad.witness}")
    return report


# sweeps over the whole fixture family

@dataclass
class SweepResult:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"name": self.name, "checked": self.checked, "passed": self.passed,
                "violations": [list(v) if isinstance(v, tuple) else v for v in self.violations]}


def _subnorms(m1, m2):
    alpha = canonical_injection(m1.signature, m2.signature)
    return [p for p in enumerate_prenorms(m1, m2, alpha) if p.report.is_subnorm]


def theorem_sweep(max_n: int = 4, max_k: int = 3) -> dict[str, SweepResult]:
    """Forced constants, group symmetry and unit norms over every fixture pair."""
    forced = SweepResult("forced constant")
    symmetric = SweepResult("group symmetry")
    unit = SweepResult("unit norm")
    ns, ks = range(1, max_n + 1), range(1, max_k + 1)

    for theory in ("mon", "grp"):
        for n, k in itertools.product(ns, ks):
            src = build_cyclic_group_model(n, theory=theory)
            tgts = [build_truncated_semiring_model(k, theory="mon")] if theory == "mon" else []
            tgts.append(build_norm_target(k, theory))
            for tgt in tgts:
                for p in _subnorms(src, tgt):
                    forced.checked += 1
                    forced.violations += [(src.name, tgt.name, p.phi, v) for v in forced_constant_violations(p)]
                    if theory == "grp":
                        symmetric.checked += 1
                        if symmetry_violations(p):
                            symmetric.violations.append((src.name, tgt.name, p.phi))

    sources = [build_truncated_semiring_model(j) for j in ks]
    sources += [build_cyclic_ring_model(n, theory="rig") for n in ns]
    for src in sources:
        for k in ks:
            tgt = build_truncated_semiring_model(k)
            for p in _subnorms(src, tgt):
                forced.checked += 1
                forced.violations += [(src.name, tgt.name, p.phi, v) for v in forced_constant_violations(p)]
                unit.checked += 1
                if unit_norm_violations(p):
                    unit.violations.append((src.name, tgt.name, p.phi))
    return {r.name: r for r in (forced, symmetric, unit)}


def restriction_sweep(max_n: int = 3, max_k: int = 2) -> SweepResult:
    """Every candidate map: ring check passes iff its group and semiring restrictions do."""
    out = SweepResult("ring restriction equivalence")
    for n, k in itertools.product(range(1, max_n + 1), range(1, max_k + 1)):
        m1 = build_cyclic_ring_model(n, unital=False)
        m2 = build_norm_target(k, "rng")
        alpha = canonical_injection(m1.signature, m2.signature)
        for phi in _all_maps(m1, m2):
            out.checked += 1
            whole = check_prenorm(m1, m2, alpha, phi).passed
            parts = all(passes_restricted(m1, m2, alpha, phi, s) for s in ("grp", "rg"))
            if whole != parts:
                out.violations.append((m1.name, m2.name, phi, whole, parts))
    return out
