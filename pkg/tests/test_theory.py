import pytest
from hypothesis import given, strategies as st

from normkit.errors import NotAModel, NotASubtheory, SignatureMismatch, TheoryError
from normkit.examples import (
    build_cyclic_group_model,
    build_cyclic_ring_model,
    build_norm_target,
    build_truncated_semiring_model,
)
from normkit.formula import associativity, canonical
from normkit.signature import make_signature, subsignature
from normkit.theory import (
    ALGEBRAIC,
    PREALGEBRAIC,
    STANDARD_NAMES,
    SUBALGEBRAIC,
    Axiom,
    Model,
    Theory,
    classify_theory,
    embodiment,
    empty_theory,
    is_subtheory,
    models,
    restrict_model,
    smallest_theory,
    standard_signature,
    standard_theory,
    subtheory,
)
from normkit.formula import reflexivity


def test_mon_theory_shape():
    t = standard_theory("mon")
    assert len(t.signature.functions) == 2 and len(t.signature.relations) == 2
    algebra = [a for a in t.axioms if not a.name.startswith(("refl", "trans", "antisym"))]
    assert len(algebra) == 2 and len(t.axioms) == 8
    cls = classify_theory(t)
    assert (cls.prealgebraic, cls.subalgebraic, cls.algebraic) == (True, True, False)


def test_restricting_mon_to_sgrp():
    t = subtheory(standard_theory("mon"), standard_signature("sgrp"))
    assert t.canonical_axioms() == standard_theory("sgrp").canonical_axioms()
    assert is_subtheory(standard_theory("sgrp"), standard_theory("mon"))
    assert not is_subtheory(standard_theory("mon"), standard_theory("sgrp"))


def test_restriction_to_own_signature_and_to_nothing():
    t = standard_theory("grp")
    assert subtheory(t, t.signature) == t
    assert subtheory(t, make_signature()).axioms == ()


def test_rng_contains_grp_and_rg():
    rng = standard_theory("rng").canonical_axioms()
    assert standard_theory("grp").canonical_axioms() <= rng
    assert standard_theory("rg").canonical_axioms() <= rng


def test_algebraic_and_missing_axioms():
    assert classify_theory(standard_theory("mon", ALGEBRAIC)).algebraic
    sig = make_signature([("f", 1)], [("r", 2)], [("f", "r")])
    t = Theory(("x", "y", "z"), sig, (Axiom("refl", reflexivity("r")),))
    cls = classify_theory(t)
    assert not cls.prealgebraic and ("r", "transitivity") in cls.missing


def test_embodiment_of_algebraic_monoids():
    sharp = embodiment(standard_theory("mon", ALGEBRAIC), SUBALGEBRAIC)
    assert sharp.signature == standard_signature("mon")
    assert sharp.canonical_axioms() == standard_theory("mon").canonical_axioms()
    assert len(sharp.axioms) == 2 + 6
    assert classify_theory(sharp).subalgebraic


@pytest.mark.parametrize("name", STANDARD_NAMES)
@pytest.mark.parametrize("mode", [PREALGEBRAIC, SUBALGEBRAIC])
def test_embodiment_idempotent_and_classified(name, mode):
    t = standard_theory(name, mode)
    cls = classify_theory(t)
    assert cls.prealgebraic and (cls.subalgebraic == (mode == SUBALGEBRAIC))
    assert embodiment(t, mode).canonical_axioms() == t.canonical_axioms()


def test_embodiment_of_empty_theory():
    assert embodiment(empty_theory(), SUBALGEBRAIC).canonical_axioms() == frozenset()


def test_theory_validation():
    sig = standard_signature("sgrp")
    with pytest.raises(TheoryError):
        Theory(("x", "y"), sig, (Axiom("a", associativity("plus")),))
    with pytest.raises(TheoryError):
        Theory(("x", "y", "z"), sig, (Axiom("a", associativity("plus")), Axiom("a", associativity("plus"))))


@pytest.mark.parametrize("name", ["sgrp", "mon", "grp"])
def test_cyclic_groups_model_group_like_theories(name):
    for n in (1, 2, 3, 4):
        assert models(build_cyclic_group_model(n, theory=name).structure, standard_theory(name)).passed


@pytest.mark.parametrize("name", ["sgrp", "mon", "rg", "rig"])
def test_truncated_semirings_model_semiring_like_theories(name):
    for k in (1, 2, 3):
        m = build_truncated_semiring_model(k, theory=name)
        assert models(m.structure, standard_theory(name)).passed


@pytest.mark.parametrize("name", ["rng", "ring"])
def test_cyclic_rings(name):
    m = build_cyclic_ring_model(3, unital=(name == "ring"))
    assert m.theory.canonical_axioms() == standard_theory(name).canonical_axioms()


def test_broken_inverse_table_fails_with_witness():
    z2 = build_cyclic_group_model(2)
    plus = {(a, b): (a + b) % 2 for a in (0, 1) for b in (0, 1)}
    plus[(1, 1)] = 1
    broken = z2.structure.replace(functions={"plus": plus})
    report = models(broken, standard_theory("grp"))
    bad = {v.name: v.witness for v in report.failures}
    assert any(w == {"x": 1} for w in bad.values())
    with pytest.raises(NotAModel):
        Model.of(standard_theory("grp"), broken)


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        models(build_cyclic_group_model(2).structure, standard_theory("mon"))


def test_restrict_model_forgets_symbols():
    n2 = build_truncated_semiring_model(2, theory="mon")
    small = restrict_model(n2, standard_theory("sgrp"))
    assert small.signature == standard_signature("sgrp")
    assert small.structure.apply("plus", 1, 1) == 2
    with pytest.raises(NotASubtheory):
        restrict_model(small, standard_theory("mon"))


def test_norm_target_uses_order_axioms_only():
    t = build_norm_target(2, "grp")
    assert t.theory.canonical_axioms() == smallest_theory("grp").canonical_axioms()
    assert all(t.structure.apply("u", a) == a for a in t.carrier)


names = st.sampled_from(STANDARD_NAMES)


@given(names, st.data())
def test_subtheory_is_monotone(name, data):
    t = standard_theory(name)
    fnames = [f.name for f in t.signature.functions]
    small = data.draw(st.sets(st.sampled_from(fnames)))
    big = small | data.draw(st.sets(st.sampled_from(fnames)))

    def sub(fs):
        keep = list(fs) + ["leq_" + f for f in fs]
        return subtheory(t, subsignature(t.signature, keep))

    assert sub(small).canonical_axioms() <= sub(big).canonical_axioms()
    assert is_subtheory(sub(small), t)


@given(names)
def test_subalgebraic_implies_prealgebraic(name):
    for mode in (ALGEBRAIC, PREALGEBRAIC, SUBALGEBRAIC):
        cls = classify_theory(standard_theory(name, mode))
        assert not cls.subalgebraic or cls.prealgebraic
        assert cls.algebraic == (mode == ALGEBRAIC)


@given(names)
def test_axioms_stay_inside_signature_and_variables(name):
    t = standard_theory(name)
    for a in t.axioms:
        assert set(a.formula.variables) <= set(t.variables)
        assert canonical(a.formula) in t.canonical_axioms()
