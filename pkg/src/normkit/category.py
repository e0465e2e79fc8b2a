"""Finitely presented categories and the categories of prenormed models.

A :class:`CategoryPresentation` stores everything by string label.  The
composition table follows the diagrammatic convention ``comp[(f, g)]`` =
"``f`` then ``g``", defined exactly when ``trg[f] == src[g]``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .config import DEFAULT_MORPHISM_BUDGET
from .errors import (
    BudgetExceeded,
    InternalInvariantViolation,
    NotAPrenorm,
    NotPivotal,
    NotPrealgebraic,
    RestrictionUndefined,
    SignatureHomError,
    TargetMismatch,
)
from .prenorm import (
    Prenorm,
    _Checker,
    _phi_indices,
    check_prenorm,
    classify_theory_cached,
    compose_prenorms,
    enumerate_prenorms,
    identity_prenorm,
)
from .signature import SignatureHom, check_signature_hom, identity_hom
from .structure import EMPTY_PIVOTAL, find_pivot
from .theory import Model, Theory, restrict_model

PRENORM = "prenorm"
SUBNORM = "subnorm"


@dataclass
class CategoryPresentation:
    objects: tuple
    morphisms: tuple
    src: dict
    trg: dict
    ident: dict
    comp: dict
    payload: dict = field(default_factory=dict, compare=False, repr=False)
    object_payload: dict = field(default_factory=dict, compare=False, repr=False)

    def hom(self, a, b) -> list[str]:
        return [f for f in self.morphisms if self.src[f] == a and self.trg[f] == b]

    def compose(self, f, g) -> str:
        """``f`` then ``g``."""
        return self.comp[(f, g)]

    def composable_pairs(self):
        return [(f, g) for f in self.morphisms for g in self.morphisms if self.trg[f] == self.src[g]]

    def to_json(self):
        def describe(x):
            return x.to_json() if hasattr(x, "to_json") else x

        return {
            "objects": list(self.objects),
            "morphisms": [
                {
                    "label": f,
                    "src": self.src[f],
                    "trg": self.trg[f],
                    "data": describe(self.payload[f]) if f in self.payload else None,
                }
                for f in self.morphisms
            ],
            "identities": {a: self.ident[a] for a in self.objects},
            "composition": [[f, g, h] for (f, g), h in sorted(self.comp.items())],
        }

    def to_dot(self, identities: bool = True) -> str:
        lines = ["digraph category {"]
        for a in self.objects:
            lines.append(f'  "{a}";')
        idents = set(self.ident.values())
        for f in self.morphisms:
            if not identities and f in idents:
                continue
            lines.append(f'  "{self.src[f]}" -> "{self.trg[f]}" [label="{f}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def one_object_category(obj="*") -> CategoryPresentation:
    i = f"id_{obj}"
    return CategoryPresentation((obj,), (i,), {i: obj}, {i: obj}, {obj: i}, {(i, i): i})


@dataclass(frozen=True)
class LawViolation:
    axiom: str
    witness: tuple
    message: str

    def to_json(self):
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}


@dataclass(frozen=True)
class LawReport:
    violations: tuple[LawViolation, ...]
    pairs_checked: int
    triples_checked: int

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def failed_axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def to_json(self):
        return {
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "violations": [v.to_json() for v in self.violations],
        }


def check_category_laws(cat: CategoryPresentation, seed: int | None = None) -> LawReport:
    """Exhaustively check well-formedness and the four category axioms.

    Axiom names: ``domain`` (composition defined exactly on matching
    pairs), ``i`` (source/target of composites), ``ii`` (identities are
    endomorphisms), ``iii`` (associativity), ``iv`` (unit laws).
    ``seed`` only shuffles the order in which pairs are visited.
    """
    out = []
    objs, morph = set(cat.objects), set(cat.morphisms)
    for f in cat.morphisms:
        if cat.src.get(f) not in objs or cat.trg.get(f) not in objs:
            out.append(LawViolation("wellformed", (f,), f"{f} has no valid source/target"))
    for a in cat.objects:
        if cat.ident.get(a) not in morph:
            out.append(LawViolation("wellformed", (a,), f"object {a} has no identity"))
    if out:
        return LawReport(tuple(out), 0, 0)

    pairs = list(itertools.product(cat.morphisms, repeat=2))
    if seed is not None:
        random.Random(seed).shuffle(pairs)
    n_pairs = 0
    for f, g in pairs:
        matching = cat.trg[f] == cat.src[g]
        defined = (f, g) in cat.comp
        if matching != defined:
            what = "missing" if matching else "defined on a non-matching pair"
            out.append(LawViolation("domain", (f, g), f"composite {what}"))
            continue
        if not defined:
            continue
        n_pairs += 1
        h = cat.comp[(f, g)]
        if h not in morph:
            out.append(LawViolation("domain", (f, g), f"composite {h!r} is not a morphism"))
            continue
        if cat.src[h] != cat.src[f] or cat.trg[h] != cat.trg[g]:
            out.append(LawViolation("i", (f, g), f"composite {h} has the wrong source or target"))

    for a in cat.objects:
        i = cat.ident[a]
        if cat.src[i] != a or cat.trg[i] != a:
            out.append(LawViolation("ii", (a,), f"identity {i} is not an endomorphism of {a}"))

    for f in cat.morphisms:
        left = cat.comp.get((cat.ident[cat.src[f]], f))
        right = cat.comp.get((f, cat.ident[cat.trg[f]]))
        if left != f or right != f:
            out.append(LawViolation("iv", (f,), f"identities are not neutral on {f}"))

    n_triples = 0
    outgoing = {a: [g for g in cat.morphisms if cat.src[g] == a] for a in cat.objects}
    comp = cat.comp
    for f in cat.morphisms:
        for g in outgoing[cat.trg[f]]:
            fg = comp.get((f, g))
            for h in outgoing[cat.trg[g]]:
                n_triples += 1
                gh = comp.get((g, h))
                lhs = comp.get((f, gh)) if gh is not None else None
                rhs = comp.get((fg, h)) if fg is not None else None
                if lhs is None or lhs != rhs:
                    out.append(LawViolation("iii", (f, g, h), "composition is not associative"))
    return LawReport(tuple(out), n_pairs, n_triples)


# categories of prenormed models

def _object_labels(items, name_of):
    labels, seen = [], {}
    for k, x in enumerate(items):
        base = name_of(x) or f"M{k}"
        label = base if base not in seen else f"{base}_{k}"
        seen[label] = True
        labels.append(label)
    return labels


def _key(p: Prenorm):
    return (p.hom.mapping, p.phi)


def _materialize(labels, payloads, homsets, limit):
    """Assemble a presentation from hom-sets of prenorms between labelled objects."""
    total = sum(len(v) for v in homsets.values())
    if total > limit:
        raise BudgetExceeded(f"{total} morphisms exceed the budget of {limit}")
    morphisms, src, trg, ident, payload, lookup = [], {}, {}, {}, {}, {}
    for (i, j), ps in homsets.items():
        a, b = labels[i], labels[j]
        for k, p in enumerate(ps):
            f = f"{a}->{b}#{k}"
            morphisms.append(f)
            src[f], trg[f], payload[f] = a, b, p
            lookup[(i, j, _key(p))] = f
        if i == j:
            idp = identity_prenorm(payloads[i] if isinstance(payloads[i], Model) else payloads[i].model)
            f = lookup.get((i, j, _key(idp)))
            if f is None:
                raise InternalInvariantViolation(f"identity on {a} is missing from its hom-set")
            ident[a] = f
    comp = {}
    for (i, j), ps in homsets.items():
        for (j2, l), qs in homsets.items():
            if j2 != j:
                continue
            for k1, p in enumerate(ps):
                for k2, q in enumerate(qs):
                    r = compose_prenorms(p, q)
                    h = lookup.get((i, l, _key(r)))
                    if h is None:
                        raise InternalInvariantViolation(
                            f"composite of {labels[i]}->{labels[j]}#{k1} and "
                            f"{labels[j]}->{labels[l]}#{k2} is not in the hom-set"
                        )
                    comp[(f"{labels[i]}->{labels[j]}#{k1}", f"{labels[j]}->{labels[l]}#{k2}")] = h
    return CategoryPresentation(
        tuple(labels), tuple(morphisms), src, trg, ident, comp,
        payload, dict(zip(labels, payloads)),
    )


def build_pnr(models: list[Model], mode: str = PRENORM, budget=None, morphism_budget=None) -> CategoryPresentation:
    """All prenorms (or subnorms) between the given models, with composition."""
    if mode not in (PRENORM, SUBNORM):
        raise ValueError(f"mode must be {PRENORM!r} or {SUBNORM!r}")
    for m in models:
        cls = classify_theory_cached(m.theory)
        ok = cls.subalgebraic if mode == SUBNORM else cls.prealgebraic
        if not ok:
            need = "subalgebraic" if mode == SUBNORM else "prealgebraic"
            raise NotPrealgebraic(f"theory of {m.name or 'a model'} is not {need}")
    labels = _object_labels(models, lambda m: m.name)
    homsets = {}
    for (i, m1), (j, m2) in itertools.product(enumerate(models), repeat=2):
        homsets[(i, j)] = enumerate_prenorms(m1, m2, budget=budget)
    return _materialize(labels, list(models), homsets, morphism_budget or DEFAULT_MORPHISM_BUDGET)


def full_subcategory(cat: CategoryPresentation, objects) -> CategoryPresentation:
    keep = [a for a in cat.objects if a in set(objects)]
    ks = set(keep)
    morph = tuple(f for f in cat.morphisms if cat.src[f] in ks and cat.trg[f] in ks)
    ms = set(morph)
    return CategoryPresentation(
        tuple(keep), morph,
        {f: cat.src[f] for f in morph}, {f: cat.trg[f] for f in morph},
        {a: cat.ident[a] for a in keep},
        {k: v for k, v in cat.comp.items() if k[0] in ms and k[1] in ms},
        {f: cat.payload[f] for f in morph if f in cat.payload},
        {a: cat.object_payload[a] for a in keep if a in cat.object_payload},
    )


def is_full_subcategory(sub: CategoryPresentation, cat: CategoryPresentation) -> bool:
    """Same objects subset, and every hom-set of ``sub`` equals that of ``cat``."""
    if not set(sub.objects) <= set(cat.objects):
        return False
    for a, b in itertools.product(sub.objects, repeat=2):
        if sorted(map(_payload_key(sub), sub.hom(a, b))) != sorted(map(_payload_key(cat), cat.hom(a, b))):
            return False
    return True


def _payload_key(cat):
    return lambda f: _key(cat.payload[f]) if f in cat.payload else f


# normed models over a fixed target

@dataclass(frozen=True)
class NormedModel:
    model: Model
    norm: Prenorm
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.norm.source != self.model:
            raise NotAPrenorm("the norm does not start at the model")

    @property
    def target(self) -> Model:
        return self.norm.target

    @property
    def is_subnormed(self) -> bool:
        return self.norm.report is not None and self.norm.report.is_subnorm

    def value(self, a):
        return self.norm(a)

    def to_json(self):
        return {"name": self.name, "model": self.model.name, "norm": self.norm.to_json()}


def _pivot_of(target: Model) -> str:
    pivot = find_pivot(target.structure)
    if pivot is None or pivot is EMPTY_PIVOTAL:
        raise NotPivotal(f"target {target.name or '(unnamed)'} has no pivot relation")
    return pivot


@dataclass(frozen=True)
class ShortMorphismReport:
    is_prenorm: bool
    signature_triangle_commutes: bool
    contraction_holds: bool
    is_isometry: bool
    prenorm_failure: str | None = None
    triangle_witness: tuple | None = None      # (symbol, alpha2(beta(s)), alpha1(s))
    contraction_witness: tuple | None = None   # (a, ||psi(a)||_2, ||a||_1)
    isometry_witness: tuple | None = None

    @property
    def is_short(self) -> bool:
        return self.is_prenorm and self.signature_triangle_commutes and self.contraction_holds

    def to_json(self):
        return {
            "is_short": self.is_short,
            "is_prenorm": self.is_prenorm,
            "prenorm_failure": self.prenorm_failure,
            "signature_triangle_commutes": self.signature_triangle_commutes,
            "triangle": "alpha2 . beta == alpha1",
            "triangle_witness": None if self.triangle_witness is None else list(self.triangle_witness),
            "contraction_holds": self.contraction_holds,
            "contraction_witness": None if self.contraction_witness is None else list(self.contraction_witness),
            "is_isometry": self.is_isometry,
            "isometry_witness": None if self.isometry_witness is None else list(self.isometry_witness),
        }


def check_short_morphism(m1: NormedModel, m2: NormedModel, beta: SignatureHom, psi) -> ShortMorphismReport:
    """Is ``(beta, psi)`` a prenorm that commutes with the norms' homs and never increases the norm?"""
    if m1.target != m2.target:
        raise TargetMismatch("the two normed models have different targets")
    target = m1.target
    pivot = _pivot_of(target)
    report = check_prenorm(m1.model, m2.model, beta, psi)
    fail = None if report.passed else report.failures()[0].describe()

    a1, a2 = m1.norm.hom.map, m2.norm.hom.map
    tri_w = None
    for s, t in beta.mapping:
        if a2[t] != a1[s]:
            tri_w = (s, a2[t], a1[s])
            break

    images = _phi_indices(m1.model, m2.model, psi)
    leq = target.structure.relation(pivot)
    c2 = m2.model.carrier
    con_w = iso_w = None
    for a, j in zip(m1.model.carrier, images):
        n2, n1 = m2.norm(c2[j]), m1.norm(a)
        if con_w is None and (n2, n1) not in leq:
            con_w = (a, n2, n1)
        if iso_w is None and n2 != n1:
            iso_w = (a, n2, n1)
    return ShortMorphismReport(
        report.passed, tri_w is None, con_w is None, iso_w is None,
        fail, tri_w, con_w, iso_w,
    )


def build_pnr_over_target(normed: list[NormedModel], target: Model, budget=None, morphism_budget=None) -> CategoryPresentation:
    """Normed models over ``target`` with every short morphism between them."""
    _pivot_of(target)
    for nm in normed:
        if nm.target != target:
            raise TargetMismatch(f"{nm.name or 'a normed model'} is not valued in the given target")
    labels = _object_labels(normed, lambda nm: nm.name)
    homsets = {}
    for (i, n1), (j, n2) in itertools.product(enumerate(normed), repeat=2):
        homsets[(i, j)] = [
            p for p in enumerate_prenorms(n1.model, n2.model, budget=budget)
            if check_short_morphism(n1, n2, p.hom, p.phi).is_short
        ]
    return _materialize(labels, list(normed), homsets, morphism_budget or DEFAULT_MORPHISM_BUDGET)


def snr_objects(cat: CategoryPresentation) -> list[str]:
    """Objects of a category over a target whose norms are subnorms."""
    return [a for a in cat.objects if cat.object_payload[a].is_subnormed]


# forgetful functors

def _restrict_if(model: Model, theory: Theory, small: Theory) -> Model:
    return restrict_model(model, small) if model.theory == theory else model


def restrict_prenorm(p: Prenorm, small: Theory, theory: Theory | None = None) -> Prenorm:
    """Image of ``p`` under the functor forgetting down to ``small``.

    Every model whose theory equals ``theory`` (default: the source's) is
    restricted; other models, such as a fixed target, are left alone.  The
    hom is restricted to the new source and must land in the new target.
    """
    theory = theory or p.source.theory
    s = _restrict_if(p.source, theory, small)
    t = _restrict_if(p.target, theory, small)
    amap = p.hom.map
    mapping = {n: amap[n] for n in s.signature.names}
    leaving = sorted(n for n, m in mapping.items() if m not in t.signature)
    if leaving:
        raise RestrictionUndefined(f"the hom sends {leaving} outside the restricted target")
    try:
        alpha = check_signature_hom(mapping, s.signature, t.signature)
    except SignatureHomError as exc:
        raise RestrictionUndefined(str(exc)) from exc
    report = _Checker(s, t, alpha).report(_phi_indices(s, t, p.phi))
    if not report.passed:
        raise InternalInvariantViolation("restriction of a prenorm failed verification")
    return Prenorm(s, t, alpha, p.phi, report)


def restrict_normed(nm: NormedModel, small: Theory) -> NormedModel:
    return NormedModel(restrict_model(nm.model, small), restrict_prenorm(nm.norm, small, nm.model.theory), nm.name)


def forgetful_restrict(x, small: Theory, theory: Theory | None = None):
    """Apply the forgetful functor to a model, a prenorm, or a normed model."""
    if isinstance(x, Model):
        return restrict_model(x, small)
    if isinstance(x, NormedModel):
        return restrict_normed(x, small)
    if isinstance(x, Prenorm):
        return restrict_prenorm(x, small, theory)
    raise TypeError(f"cannot restrict {type(x).__name__}")


@dataclass(frozen=True)
class FunctorReport:
    identity_failures: tuple
    composition_failures: tuple
    checked_pairs: int

    @property
    def passed(self) -> bool:
        return not (self.identity_failures or self.composition_failures)

    def to_json(self):
        return {
            "passed": self.passed,
            "identity_failures": list(self.identity_failures),
            "composition_failures": [list(p) for p in self.composition_failures],
            "checked_pairs": self.checked_pairs,
        }


def check_forgetful_functor(cat: CategoryPresentation, small: Theory, theory: Theory) -> FunctorReport:
    """Restriction preserves identities and composites on every morphism of ``cat``."""
    image = {f: restrict_prenorm(cat.payload[f], small, theory) for f in cat.morphisms}
    bad_id = []
    for a in cat.objects:
        obj = cat.object_payload[a]
        model = obj.model if isinstance(obj, NormedModel) else obj
        rm = _restrict_if(model, theory, small)
        expected = Prenorm(rm, rm, identity_hom(rm.signature), rm.carrier)
        got = image[cat.ident[a]]
        if _key(got) != _key(expected) or got.source != rm or got.target != rm:
            bad_id.append(a)
    bad_comp = []
    for (f, g), h in cat.comp.items():
        fg = compose_prenorms(image[f], image[g])
        if _key(fg) != _key(image[h]) or fg.source != image[h].source or fg.target != image[h].target:
            bad_comp.append((f, g))
    return FunctorReport(tuple(bad_id), tuple(bad_comp), len(cat.comp))
