"""Prenorms and subnorms between finite models.

A prenorm ``(alpha, phi)`` from ``M1`` to ``M2`` pairs a signature
homomorphism with a carrier map such that

* for every function symbol ``f`` of arity ``n`` and every ``a`` in
  ``A1**n``: ``phi(f1(a)) <= f2(phi(a1), ..., phi(an))``, where ``<=`` is
  the relation paired with ``alpha(f)`` in the target, and
* ``phi`` is monotone from each source relation ``r`` to ``alpha(r)``.

It is a subnorm when both theories are subalgebraic.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .config import resolve_budget
from .errors import (
    BudgetExceeded,
    InternalInvariantViolation,
    NotAPrenorm,
    NotComposable,
    NotNullary,
    NotPivotal,
    PhiNotTotal,
    SignatureHomError,
    SignatureHomInvalid,
)
from .signature import (
    SignatureHom,
    check_signature_hom,
    compose_signature_homs,
    enumerate_signature_homs,
    identity_hom,
)
from .structure import EMPTY_PIVOTAL, _flat, find_pivot
from .theory import Model, classify_theory

classify_theory_cached = functools.lru_cache(maxsize=None)(classify_theory)


@dataclass(frozen=True)
class FunctionVerdict:
    symbol: str
    image: str
    relation: str
    passed: bool
    # (args, phi(f1(args)), f2(phi(args))) at the first failure, in labels
    counterexample: tuple | None = None

    def to_json(self):
        out = {"symbol": self.symbol, "image": self.image, "relation": self.relation,
               "passed": self.passed, "counterexample": None}
        if self.counterexample is not None:
            args, lhs, rhs = self.counterexample
            out["counterexample"] = {"args": list(args), "lhs": lhs, "rhs": rhs}
        return out

    def describe(self) -> str:
        if self.passed:
            return f"{self.symbol} via {self.relation}: ok"
        args, lhs, rhs = self.counterexample
        return f"{self.symbol} via {self.relation}: fails at {args}: ({lhs}, {rhs}) not in {self.relation}"


@dataclass(frozen=True)
class RelationVerdict:
    symbol: str
    image: str
    passed: bool
    counterexample: tuple | None = None   # (source tuple, mapped tuple)
    automatic: bool = False               # skipped: source relation is equality

    def to_json(self):
        out = {"symbol": self.symbol, "image": self.image, "passed": self.passed,
               "automatic": self.automatic, "counterexample": None}
        if self.counterexample is not None:
            out["counterexample"] = {"tuple": list(self.counterexample[0]),
                                     "image": list(self.counterexample[1])}
        return out

    def describe(self) -> str:
        if self.automatic:
            return f"{self.symbol} -> {self.image}: automatic"
        if self.passed:
            return f"{self.symbol} -> {self.image}: ok"
        src, img = self.counterexample
        return f"{self.symbol} -> {self.image}: {src} holds but {img} does not"


@dataclass(frozen=True)
class PrenormReport:
    condition_i: tuple[FunctionVerdict, ...]
    condition_ii: tuple[RelationVerdict, ...]
    is_subnorm: bool
    is_homomorphism: bool

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.condition_i) and all(v.passed for v in self.condition_ii)

    def failures(self):
        return [v for v in self.condition_i + self.condition_ii if not v.passed]

    def to_json(self):
        return {
            "passed": self.passed,
            "is_subnorm": self.is_subnorm,
            "is_homomorphism": self.is_homomorphism,
            "condition_i": [v.to_json() for v in self.condition_i],
            "condition_ii": [v.to_json() for v in self.condition_ii],
        }


class _Checker:
    """Precomputed tables for checking many maps against one ``(M1, M2, alpha)``."""

    def __init__(self, m1: Model, m2: Model, alpha: SignatureHom):
        if alpha.source != m1.signature or alpha.target != m2.signature:
            raise SignatureHomInvalid("hom does not go from the source to the target signature")
        try:
            check_signature_hom(alpha.map, alpha.source, alpha.target)
        except SignatureHomError as exc:
            raise SignatureHomInvalid(str(exc)) from exc
        self.m1, self.m2, self.alpha = m1, m2, alpha
        s1, s2 = m1.structure, m2.structure
        self.n1, self.n2 = len(s1.carrier), len(s2.carrier)
        sig1, sig2 = m1.signature, m2.signature
        amap = alpha.map
        self.funcs = []
        for f in sig1.functions:
            g = amap[f.name]
            rel = sig2.paired_relation(g)
            if rel is None:
                raise SignatureHomInvalid(
                    f"target symbol {g!r} has no paired relation; the target signature is not balanced"
                )
            args = list(itertools.product(range(self.n1), repeat=f.arity))
            self.funcs.append(
                (f.name, g, rel, f.arity, args, s1.table_index(f.name), s2.table_index(g), s2.matrix(rel))
            )
        self.automatic = m1.is_algebraic_structure and classify_theory_cached(m2.theory).prealgebraic
        self.rels = []
        for r in sig1.relations:
            t = amap[r.name]
            self.rels.append((r.name, t, sorted(s1.relation_index(r.name)), s2.relation_index(t)))
        used = {rel for (_, _, rel, *_rest) in self.funcs} | {t for (_, t, _, _) in self.rels}
        self.target_equality = all(s2.is_diagonal(r) for r in used)
        self.subalgebraic = (
            classify_theory_cached(m1.theory).subalgebraic
            and classify_theory_cached(m2.theory).subalgebraic
        )

    def _cond_i(self, p, entry):
        _, _, _, _, args, tab1, tab2, leq = entry
        n2 = self.n2
        for k, a in enumerate(args):
            lhs = p[tab1[k]]
            rhs = tab2[_flat([p[i] for i in a], n2)]
            if not leq[lhs][rhs]:
                return a, lhs, rhs
        return None

    def _cond_ii(self, p, entry):
        _, _, tuples, target = entry
        for t in tuples:
            img = tuple(p[i] for i in t)
            if img not in target:
                return t, img
        return None

    def passes(self, p) -> bool:
        for entry in self.funcs:
            if self._cond_i(p, entry) is not None:
                return False
        if not self.automatic:
            for entry in self.rels:
                if self._cond_ii(p, entry) is not None:
                    return False
        return True

    def report(self, p) -> PrenormReport:
        c1 = self.m1.carrier
        c2 = self.m2.carrier
        vi = []
        for entry in self.funcs:
            bad = self._cond_i(p, entry)
            cex = None
            if bad is not None:
                a, lhs, rhs = bad
                cex = (tuple(c1[i] for i in a), c2[lhs], c2[rhs])
            vi.append(FunctionVerdict(entry[0], entry[1], entry[2], bad is None, cex))
        vii = []
        for entry in self.rels:
            if self.automatic:
                vii.append(RelationVerdict(entry[0], entry[1], True, None, True))
                continue
            bad = self._cond_ii(p, entry)
            cex = None
            if bad is not None:
                cex = (tuple(c1[i] for i in bad[0]), tuple(c2[i] for i in bad[1]))
            vii.append(RelationVerdict(entry[0], entry[1], bad is None, cex))
        ok = all(v.passed for v in vi) and all(v.passed for v in vii)
        return PrenormReport(
            tuple(vi), tuple(vii), ok and self.subalgebraic, ok and self.target_equality
        )


def _phi_indices(m1: Model, m2: Model, phi) -> tuple[int, ...]:
    c1 = m1.carrier
    if isinstance(phi, dict):
        missing = [a for a in c1 if a not in phi]
        if missing:
            raise PhiNotTotal(f"map is undefined on {missing}")
        extra = [a for a in phi if a not in set(c1)]
        if extra:
            raise PhiNotTotal(f"map is defined outside the source carrier: {extra}")
        images = [phi[a] for a in c1]
    else:
        images = list(phi)
        if len(images) != len(c1):
            raise PhiNotTotal(f"map lists {len(images)} images for {len(c1)} elements")
    try:
        return tuple(m2.structure.index(b) for b in images)
    except KeyError as exc:
        raise PhiNotTotal(f"image {exc.args[0]!r} is not in the target carrier") from None


def check_prenorm(m1: Model, m2: Model, alpha: SignatureHom, phi) -> PrenormReport:
    """Verify both prenorm conditions; ``phi`` is a dict or images in carrier order."""
    return _Checker(m1, m2, alpha).report(_phi_indices(m1, m2, phi))


@dataclass(frozen=True)
class Prenorm:
    source: Model
    target: Model
    hom: SignatureHom
    phi: tuple            # images of the source carrier, in carrier order
    report: PrenormReport | None = field(default=None, compare=False, repr=False)

    @property
    def phi_map(self) -> dict:
        return dict(zip(self.source.carrier, self.phi))

    def __call__(self, a):
        return self.phi[self.source.structure.index(a)]

    @property
    def is_subnorm(self) -> bool:
        return self.report.is_subnorm

    def to_json(self):
        return {
            "source": self.source.name,
            "target": self.target.name,
            "hom": self.hom.to_json(),
            "phi": [[a, b] for a, b in zip(self.source.carrier, self.phi)],
            "report": None if self.report is None else self.report.to_json(),
        }

    def __str__(self):
        body = ", ".join(f"{a}->{b}" for a, b in zip(self.source.carrier, self.phi))
        return f"{self.source.name or '?'} -> {self.target.name or '?'} {{{body}}}"


def make_prenorm(m1: Model, m2: Model, alpha: SignatureHom, phi) -> Prenorm:
    p = _phi_indices(m1, m2, phi)
    report = _Checker(m1, m2, alpha).report(p)
    if not report.passed:
        raise NotAPrenorm(f"map fails the prenorm conditions: {report.failures()[0]}")
    return Prenorm(m1, m2, alpha, tuple(m2.carrier[i] for i in p), report)


def identity_prenorm(m: Model) -> Prenorm:
    return make_prenorm(m, m, identity_hom(m.signature), m.carrier)


def compose_prenorms(first: Prenorm, second: Prenorm) -> Prenorm:
    """``second`` after ``first``, freshly re-verified."""
    if first.target != second.source:
        raise NotComposable("the first prenorm's target is not the second's source")
    gamma = compose_signature_homs(first.hom, second.hom)
    mid = second.source.structure
    theta = tuple(second.phi[mid.index(b)] for b in first.phi)
    report = check_prenorm(first.source, second.target, gamma, theta)
    if not report.passed:
        raise InternalInvariantViolation(
            f"composite of two prenorms failed verification: {report.failures()[0]}"
        )
    if first.report and second.report and first.is_subnorm and second.is_subnorm and not report.is_subnorm:
        raise InternalInvariantViolation("composite of two subnorms is not a subnorm")
    return Prenorm(first.source, second.target, gamma, theta, report)


def phi_power(phi: dict, n: int) -> dict:
    """Componentwise extension of ``phi`` to ``n``-tuples."""
    return {args: tuple(phi[a] for a in args) for args in itertools.product(list(phi), repeat=n)}


def enumerate_prenorms(m1: Model, m2: Model, hom: SignatureHom | None = None, budget=None) -> list[Prenorm]:
    """Every prenorm ``m1 -> m2`` (for ``hom`` only, if given), in lexicographic order."""
    homs = [hom] if hom is not None else list(enumerate_signature_homs(m1.signature, m2.signature))
    if not homs:
        return []
    n1, n2 = len(m1.carrier), len(m2.carrier)
    limit = resolve_budget(budget)
    total = len(homs) * n2**n1
    if total > limit:
        raise BudgetExceeded(f"{total} candidate prenorms exceed the budget of {limit}")
    out = []
    c2 = m2.carrier
    for h in homs:
        checker = _Checker(m1, m2, h)
        for p in itertools.product(range(n2), repeat=n1):
            if checker.passes(p):
                out.append(Prenorm(m1, m2, h, tuple(c2[i] for i in p), checker.report(p)))
    return out


@dataclass
class ClosureReport:
    models: tuple
    prenorms: int = 0
    checked: int = 0
    violations: list = field(default_factory=list)   # (source, middle, target, phi1, phi2)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"models": list(self.models), "prenorms": self.prenorms, "checked": self.checked,
                "violations": [list(v) for v in self.violations], "passed": self.passed}


def composition_closure(models: list[Model], budget=None) -> ClosureReport:
    """Compose every composable pair of prenorms among ``models`` and re-check the result.

    Hom-sets are enumerated once; each composite is rebuilt from index
    tables and verified with a checker for its own hom.  Distinct pairs
    often give the same composite, so verdicts are memoised per composite.
    """
    homsets = {(i, j): enumerate_prenorms(a, b, budget=budget)
               for (i, a), (j, b) in itertools.product(enumerate(models), repeat=2)}
    idx = {id(p): tuple(p.target.structure.index(x) for x in p.phi)
           for ps in homsets.values() for p in ps}
    out = ClosureReport(tuple(m.name for m in models), sum(map(len, homsets.values())))
    checkers, homs, verdicts = {}, {}, {}
    for (i, j), ps in homsets.items():
        for l in range(len(models)):
            qs = homsets[(j, l)]
            for p in ps:
                pi = idx[id(p)]
                for q in qs:
                    key = (p.hom.mapping, q.hom.mapping, i, l)
                    if key not in homs:
                        homs[key] = compose_signature_homs(p.hom, q.hom)
                    h = homs[key]
                    ck = (i, l, h.mapping)
                    if ck not in checkers:
                        checkers[ck] = _Checker(models[i], models[l], h)
                    qi = idx[id(q)]
                    comp = tuple(qi[a] for a in pi)
                    out.checked += 1
                    vk = (ck, comp)
                    if vk not in verdicts:
                        verdicts[vk] = checkers[ck].passes(comp)
                    if not verdicts[vk]:
                        out.violations.append((models[i].name, models[j].name, models[l].name, p.phi, q.phi))
    return out


# definiteness

@dataclass(frozen=True)
class DefinitenessClass:
    constant: str
    pivot: str
    upward_semidefinite: bool
    downward_semidefinite: bool
    upward_definite: bool
    downward_definite: bool
    trivial: bool
    exclusion: tuple = ()
    note: str | None = None

    @property
    def indefinite(self) -> bool:
        return not (self.upward_semidefinite or self.downward_semidefinite)

    def labels(self) -> list[str]:
        out = []
        if self.upward_definite:
            out.append("upward-definite")
        elif self.upward_semidefinite:
            out.append("upward-semidefinite")
        if self.downward_definite:
            out.append("downward-definite")
        elif self.downward_semidefinite:
            out.append("downward-semidefinite")
        if self.indefinite:
            out.append("indefinite")
        if self.trivial:
            out.append("trivial")
        return out

    def to_json(self):
        return {
            "constant": self.constant,
            "pivot": self.pivot,
            "upward_semidefinite": self.upward_semidefinite,
            "downward_semidefinite": self.downward_semidefinite,
            "upward_definite": self.upward_definite,
            "downward_definite": self.downward_definite,
            "indefinite": self.indefinite,
            "trivial": self.trivial,
            "exclusion": list(self.exclusion),
            "note": self.note,
            "labels": self.labels(),
        }


def definiteness(domain, values, constant, leq, exclusion=()) -> dict:
    """Semidefiniteness/definiteness flags of a map given by ``values``.

    ``leq`` is a set of pairs; ``exclusion`` lists domain points where
    ``values`` may hit ``constant`` without breaking definiteness.
    """
    up = all((constant, v) in leq for v in values)
    down = all((v, constant) in leq for v in values)
    off = all(v != constant for a, v in zip(domain, values) if a not in exclusion)
    return {
        "upward_semidefinite": up,
        "downward_semidefinite": down,
        "upward_definite": up and off,
        "downward_definite": down and off,
        "trivial": len(set(values)) <= 1,
    }


def classify(prenorm: Prenorm, constant: str) -> DefinitenessClass:
    target = prenorm.target
    pivot = find_pivot(target.structure)
    if pivot is None or pivot is EMPTY_PIVOTAL:
        raise NotPivotal("the target model has no pivot relation")
    sig2 = target.signature
    if not sig2.is_function(constant) or sig2.arity(constant) != 0:
        raise NotNullary(f"{constant!r} is not a nullary function symbol of the target")
    c2 = target.structure.apply(constant)
    s1 = prenorm.source.structure
    preimage = [f for f, g in prenorm.hom.mapping
                if g == constant and prenorm.source.signature.is_function(f)]
    exclusion = tuple(dict.fromkeys(s1.apply(f) for f in preimage))
    note = None
    if not preimage:
        note = f"no source constant maps to {constant!r}; nothing is excluded from definiteness"
    flags = definiteness(s1.carrier, prenorm.phi, c2, target.structure.relation(pivot), exclusion)
    return DefinitenessClass(constant, pivot, exclusion=exclusion, note=note, **flags)
