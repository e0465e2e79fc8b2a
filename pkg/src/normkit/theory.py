"""Theories, their classification and embodiments, and models.

A theory is a triple ``(V, sigma, axioms)``.  "Smallest" theories are
realized syntactically: an embodiment adds exactly the missing order
axioms and nothing else, and axiom presence is decided up to renaming of
bound variables (not logical equivalence).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import formula as fm
from .errors import (
    NameClash,
    NotAModel,
    NotASubsignature,
    NotASubtheory,
    NotEmbeddable,
    SignatureMismatch,
    TheoryError,
)
from .formula import Axiom
from .signature import EMPTY_SIGNATURE, Signature, is_subsignature, make_signature, subsignature

DEFAULT_VARIABLES = ("x", "y", "z", "w")

PREALGEBRAIC = "prealgebraic"
SUBALGEBRAIC = "subalgebraic"
ALGEBRAIC = "algebraic"


@dataclass(frozen=True)
class Theory:
    variables: tuple[str, ...]
    signature: Signature
    axioms: tuple[Axiom, ...] = ()

    def __post_init__(self):
        names = [a.name for a in self.axioms]
        if len(set(names)) != len(names):
            raise TheoryError("axiom names must be distinct")
        if len(set(self.variables)) != len(self.variables):
            raise TheoryError("variable names must be distinct")
        vs = set(self.variables)
        for ax in self.axioms:
            fm.check_formula(ax.formula, self.signature)
            stray = set(ax.formula.variables) - vs
            if stray:
                raise TheoryError(f"axiom {ax.name!r} uses variables {sorted(stray)} outside V")

    def axiom(self, name) -> Axiom:
        for ax in self.axioms:
            if ax.name == name:
                return ax
        raise KeyError(name)

    def canonical_axioms(self) -> frozenset:
        return frozenset(fm.canonical(a.formula) for a in self.axioms)

    def to_json(self):
        return {
            "variables": list(self.variables),
            "signature": self.signature.to_json(),
            "axioms": [
                {"name": a.name, "formula": fm.format_formula(a.formula)} for a in self.axioms
            ],
        }


def empty_theory(variables=DEFAULT_VARIABLES) -> Theory:
    return Theory(tuple(variables), EMPTY_SIGNATURE, ())


def subtheory(theory: Theory, sub: Signature) -> Theory:
    """Keep exactly the axioms whose symbols all lie in ``sub``."""
    if not is_subsignature(sub, theory.signature):
        raise NotASubsignature("not a subsignature of the theory's signature")
    keep = set(sub.names)
    axioms = tuple(a for a in theory.axioms if fm.symbols_of(a.formula) <= keep)
    return Theory(theory.variables, sub, axioms)


def is_subtheory(small: Theory, big: Theory) -> bool:
    if not is_subsignature(small.signature, big.signature):
        return False
    return small.canonical_axioms() == subtheory(big, small.signature).canonical_axioms()


@dataclass(frozen=True)
class TheoryClass:
    prealgebraic: bool
    subalgebraic: bool
    algebraic: bool
    # (relation, axiom kind) pairs that block the classification
    missing: tuple[tuple[str, str], ...] = ()

    def to_json(self):
        return {
            "prealgebraic": self.prealgebraic,
            "subalgebraic": self.subalgebraic,
            "algebraic": self.algebraic,
            "missing": [list(m) for m in self.missing],
        }


_ORDER_AXIOMS = {
    "reflexivity": fm.reflexivity,
    "transitivity": fm.transitivity,
    "antisymmetry": fm.antisymmetry,
}


def _order_axiom(kind, rel):
    return fm.canonical(_ORDER_AXIOMS[kind](rel))


def classify_theory(theory: Theory) -> TheoryClass:
    sig = theory.signature
    algebraic = sig.is_algebraic
    have = theory.canonical_axioms()
    missing_pre, missing_sub = [], []
    for r in sig.relations:
        for kind in ("reflexivity", "transitivity"):
            if r.arity != 2 or _order_axiom(kind, r.name) not in have:
                missing_pre.append((r.name, kind))
        if r.arity != 2 or _order_axiom("antisymmetry", r.name) not in have:
            missing_sub.append((r.name, "antisymmetry"))
    binary = all(r.arity == 2 for r in sig.relations)
    pre = sig.is_balanced and binary and not missing_pre
    sub = pre and not missing_sub
    missing = tuple(missing_pre + missing_sub)
    if not sig.is_balanced:
        missing = (("<signature>", "balanced"),) + missing
    return TheoryClass(pre, sub, algebraic, missing)


def _three_variables(variables):
    vs = list(variables)
    fresh = 0
    while len(vs) < 3:
        cand = f"v{fresh}"
        fresh += 1
        if cand not in vs:
            vs.append(cand)
    return tuple(vs)


def _unique_name(base, taken):
    name, k = base, 1
    while name in taken:
        k += 1
        name = f"{base}_{k}"
    taken.add(name)
    return name


def embodiment(theory: Theory, mode: str = SUBALGEBRAIC) -> Theory:
    """Smallest prealgebraic (or subalgebraic) theory extending ``theory``.

    A relation-free theory gains one binary relation ``leq_<f>`` paired with
    each function symbol ``f``; a balanced theory gains only the missing
    order axioms.
    """
    if mode not in (PREALGEBRAIC, SUBALGEBRAIC):
        raise ValueError(f"mode must be {PREALGEBRAIC!r} or {SUBALGEBRAIC!r}")
    sig = theory.signature
    if sig.is_balanced:
        bad = [r.name for r in sig.relations if r.arity != 2]
        if bad:
            raise NotEmbeddable(f"relations {bad} are not binary")
        new_sig = sig
    elif sig.is_algebraic:
        rels, pairing = [], []
        for f in sig.functions:
            rname = f"leq_{f.name}"
            if rname in sig:
                raise NameClash(f"generated relation name {rname!r} is already a symbol")
            rels.append((rname, 2))
            pairing.append((f.name, rname))
        new_sig = make_signature([(f.name, f.arity) for f in sig.functions], rels, pairing)
    else:
        raise NotEmbeddable("signature is unbalanced and has relation symbols")

    variables = _three_variables(theory.variables)
    kinds = ["reflexivity", "transitivity"]
    if mode == SUBALGEBRAIC:
        kinds.append("antisymmetry")
    prefix = {"reflexivity": "refl", "transitivity": "trans", "antisymmetry": "antisym"}
    have = theory.canonical_axioms()
    taken = {a.name for a in theory.axioms}
    added = []
    for r in new_sig.relations:
        for kind in kinds:
            if _order_axiom(kind, r.name) in have:
                continue
            n = {"reflexivity": 1, "transitivity": 3, "antisymmetry": 2}[kind]
            phi = _ORDER_AXIOMS[kind](r.name, xs=variables[:n])
            added.append(Axiom(_unique_name(f"{prefix[kind]}_{r.name}", taken), phi))
    return Theory(variables, new_sig, theory.axioms + tuple(added))


# the standard signatures and theories of semigroups ... unital rings

STANDARD_ARITIES = {"plus": 2, "times": 2, "u": 1, "zero": 0, "one": 0}

STANDARD_SYMBOLS = {
    "sgrp": ("plus",),
    "mon": ("plus", "zero"),
    "grp": ("plus", "u", "zero"),
    "rg": ("plus", "times", "zero"),
    "rig": ("plus", "times", "zero", "one"),
    "rng": ("plus", "times", "u", "zero"),
    "ring": ("plus", "times", "u", "zero", "one"),
}

STANDARD_NAMES = tuple(STANDARD_SYMBOLS)


def standard_signature(name: str, balanced: bool = True) -> Signature:
    fs = [(f, STANDARD_ARITIES[f]) for f in STANDARD_SYMBOLS[name]]
    if not balanced:
        return make_signature(fs, [])
    rels = [(f"leq_{f}", 2) for f, _ in fs]
    return make_signature(fs, rels, [(f, f"leq_{f}") for f, _ in fs])


def _algebra_axioms(name):
    A = Axiom
    assoc_plus = A("assoc_plus", fm.associativity("plus"))
    neutral_zero = A("neutral_zero", fm.neutrality("plus", "zero"))
    inverse_u = A("inverse_u", fm.inverses("plus", "u", "zero"))
    ldist = A("ldist_times", fm.left_distributivity("times", "plus"))
    rdist = A("rdist_times", fm.right_distributivity("times", "plus"))
    assoc_times = A("assoc_times", fm.associativity("times"))
    neutral_one = A("neutral_one", fm.neutrality("times", "one"))
    table = {
        "sgrp": [assoc_plus],
        "mon": [assoc_plus, neutral_zero],
        "grp": [assoc_plus, neutral_zero, inverse_u],
        "rg": [assoc_plus, neutral_zero, ldist, rdist, assoc_times],
        "rig": [assoc_plus, neutral_zero, ldist, rdist, assoc_times, neutral_one],
        "rng": [assoc_plus, neutral_zero, inverse_u, ldist, rdist, assoc_times],
        "ring": [assoc_plus, neutral_zero, inverse_u, ldist, rdist, assoc_times, neutral_one],
    }
    return tuple(table[name])


def standard_theory(name: str, mode: str = SUBALGEBRAIC) -> Theory:
    """Theory of semigroups (``sgrp``) through unital rings (``ring``).

    ``mode`` is ``"algebraic"`` for the relation-free theory, otherwise the
    requested embodiment of it.
    """
    if name not in STANDARD_SYMBOLS:
        raise KeyError(f"unknown standard theory {name!r}; choose from {STANDARD_NAMES}")
    base = Theory(DEFAULT_VARIABLES, standard_signature(name, balanced=False), _algebra_axioms(name))
    if mode == ALGEBRAIC:
        return base
    return embodiment(base, mode)


def smallest_theory(name: str, mode: str = SUBALGEBRAIC) -> Theory:
    """Order axioms only, over a standard signature (no algebra axioms)."""
    base = Theory(DEFAULT_VARIABLES, standard_signature(name, balanced=False), ())
    if mode == ALGEBRAIC:
        return base
    return embodiment(base, mode)


# satisfaction

@dataclass(frozen=True)
class AxiomVerdict:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json(self):
        return {
            "axiom": self.name,
            "passed": self.passed,
            "witness": None if self.witness is None else dict(self.witness),
        }


@dataclass(frozen=True)
class SatisfactionReport:
    verdicts: tuple[AxiomVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self):
        return [v for v in self.verdicts if not v.passed]

    def to_json(self):
        return {"passed": self.passed, "axioms": [v.to_json() for v in self.verdicts]}


def models(structure, theory: Theory, budget=None) -> SatisfactionReport:
    """Check every axiom of ``theory`` on ``structure``, recording witnesses."""
    if structure.signature != theory.signature:
        raise SignatureMismatch("structure and theory have different signatures")
    verdicts = []
    for ax in theory.axioms:
        w = fm.find_counterexample(structure, ax.formula, budget)
        verdicts.append(AxiomVerdict(ax.name, w is None, w))
    return SatisfactionReport(tuple(verdicts))


@dataclass(frozen=True)
class Model:
    """A structure together with a theory it is verified to satisfy."""

    theory: Theory
    structure: object
    name: str = field(default="", compare=False)
    report: SatisfactionReport | None = field(default=None, compare=False, repr=False)

    @classmethod
    def of(cls, theory, structure, name="", budget=None) -> "Model":
        report = models(structure, theory, budget)
        if not report.passed:
            bad = report.failures[0]
            raise NotAModel(
                f"{name or 'structure'} violates axiom {bad.name!r} at {bad.witness}"
            )
        return cls(theory, structure, name, report)

    @property
    def signature(self) -> Signature:
        return self.theory.signature

    @property
    def carrier(self):
        return self.structure.carrier

    @property
    def is_algebraic_structure(self) -> bool:
        """Every relation is interpreted as equality."""
        return all(self.structure.is_diagonal(r.name) for r in self.signature.relations)

    def __str__(self):
        return self.name or repr(self)


def restrict_model(model: Model, small: Theory, name=None) -> Model:
    if not is_subtheory(small, model.theory):
        raise NotASubtheory("theory is not a subtheory of the model's theory")
    return Model.of(small, model.structure.restrict(small.signature), name or model.name)


def restrict_signature(theory: Theory, names) -> Theory:
    return subtheory(theory, subsignature(theory.signature, names))

