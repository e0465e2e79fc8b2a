
import pytest
from hypothesis import given, strategies as st

from normkit.examples import (
    EXAMPLES,
    FixtureSpec,
    build_cyclic_group_model,
    build_cyclic_ring_model,
    build_fixture,
    build_norm_target,
    build_truncated_semiring_model,
    forced_constant_violations,
    is_compatible,
    passes_restricted,
    restriction_sweep,
    run_worked_example,
    symmetry_violations,
    theorem_sweep,
    unit_norm_violations,
    units,
)
from normkit.prenorm import Prenorm, enumerate_prenorms
from normkit.signature import canonical_injection
from normkit.structure import relation_flags
from normkit.theory import ALGEBRAIC, classify_theory, models, standard_theory

from oracles import all_phis, prenorm_holds


def test_trivial_group():
    z1 = build_cyclic_group_model(1)
    n2 = build_norm_target(2, "grp")
    ps = enumerate_prenorms(z1, n2, canonical_injection(z1.signature, n2.signature))
    assert [p.phi for p in ps] == [(0,)]


def test_z2_and_z3_group_tables():
    z2 = build_cyclic_group_model(2)
    assert models(z2.structure, standard_theory("grp")).passed and z2.is_algebraic_structure
    z3 = build_cyclic_group_model(3)
    assert (z3.structure.apply("u", 1), z3.structure.apply("u", 2)) == (2, 1)


def test_algebraic_mode_drops_relations():
    z2 = build_cyclic_group_model(2, mode=ALGEBRAIC)
    assert z2.signature.relations == () and classify_theory(z2.theory).algebraic


def test_saturating_semirings():
    n2 = build_truncated_semiring_model(2)
    s = n2.structure
    assert s.apply("times", 2, s.apply("plus", 1, 1)) == 2 == s.apply("plus", s.apply("times", 2, 1), s.apply("times", 2, 1))
    assert models(s, standard_theory("rig")).passed
    n1 = build_truncated_semiring_model(1)
    assert n1.carrier == (0, 1) and n1.structure.apply("plus", 1, 1) == 1
    for k in (1, 2, 3):
        m = build_truncated_semiring_model(k)
        assert is_compatible(m, "plus", "leq_plus") and is_compatible(m, "times", "leq_times")
        assert units(m) == [1]


def test_reversed_and_equality_orders():
    rev = build_truncated_semiring_model(2, theory="mon", order="reversed")
    assert rev.name == "N2_reversed"
    assert (2, 0) in rev.structure.relation("leq_plus")
    eq = build_truncated_semiring_model(2, theory="mon", order="equality")
    assert eq.is_algebraic_structure


def test_fixture_specs():
    assert build_fixture(FixtureSpec("cyclic_group", 3)).carrier == (0, 1, 2)
    assert build_fixture(FixtureSpec("norm_target", 2, "rng")).name == "N2u_rng"
    with pytest.raises(ValueError):
        FixtureSpec("cyclic_group", 0)
    with pytest.raises(ValueError):
        build_fixture(FixtureSpec("torus", 2))
    with pytest.raises(ValueError):
        build_cyclic_ring_model(0)


EXPECTED = {
    "E1": 7,
    "E2": 3,
    "E3": 3,
    "E4": 3,
    "E5": 3,
    "E6": 3,
    "E7": 2,
}


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_worked_example_defaults(name):
    r = run_worked_example(name)
    assert r.passed
    assert len(r.subnorms) == EXPECTED[name]
    assert r.to_json()["count"] == EXPECTED[name]


def test_e2_labels():
    r = run_worked_example("E2")
    assert [p.phi for p in r.subnorms] == [(0, 0), (0, 1), (0, 2)]
    labels = [r.classifications[i].labels() for i in range(3)]
    assert labels == [
        ["upward-semidefinite", "downward-semidefinite", "trivial"],
        ["upward-definite"],
        ["upward-definite"],
    ]


def test_e3_subnorms_are_symmetric():
    r = run_worked_example("E3")
    assert [p.phi for p in r.subnorms] == [(0, 0, 0), (0, 1, 1), (0, 2, 2)]
    z3, tgt = r.source, r.target
    alpha = canonical_injection(z3.signature, tgt.signature)
    oracle = [phi for phi in all_phis(z3, tgt) if prenorm_holds(z3, tgt, alpha.map, phi)]
    assert oracle and all(phi[1] == phi[2] for phi in oracle)


def test_e6_norm_of_one():
    r = run_worked_example("E6")
    one = r.source.structure.apply("one")
    for p in r.subnorms:
        if p(one) in units(r.target):
            assert p(one) == 1


def test_example_names_case_insensitive_and_unknown():
    assert run_worked_example("e7").name == "E7"
    with pytest.raises(KeyError):
        run_worked_example("E8")


def test_theorem_sweep_passes():
    res = theorem_sweep(4, 3)
    assert set(res) == {"forced constant", "group symmetry", "unit norm"}
    for r in res.values():
        assert r.passed and r.checked > 0


def test_restriction_sweep_passes():
    r = restriction_sweep(3, 2)
    assert r.passed and r.checked == 53


# the checkers must notice planted violations

def test_forced_constant_checker_catches_bad_map():
    z2 = build_cyclic_group_model(2, theory="mon")
    n2 = build_truncated_semiring_model(2, theory="mon")
    bogus = Prenorm(z2, n2, canonical_injection(z2.signature, n2.signature), (1, 1))
    assert forced_constant_violations(bogus) == [("zero", 0, 1, 0)]


def test_symmetry_checker_catches_bad_map():
    z3 = build_cyclic_group_model(3)
    tgt = build_norm_target(2, "grp")
    bogus = Prenorm(z3, tgt, canonical_injection(z3.signature, tgt.signature), (0, 1, 2))
    assert symmetry_violations(bogus) == [1, 2]


def test_unit_checker_catches_bad_map():
    n2 = build_truncated_semiring_model(2)
    z3 = build_cyclic_ring_model(3, theory="rig")   # units {1, 2}, equality orders
    assert units(z3) == [1, 2]
    alpha = canonical_injection(n2.signature, z3.signature)
    assert unit_norm_violations(Prenorm(n2, z3, alpha, (0, 2, 2))) == [2]
    assert unit_norm_violations(Prenorm(n2, z3, alpha, (0, 1, 1))) == []


def test_passes_restricted_matches_direct_check():
    m1 = build_cyclic_ring_model(2, unital=False)
    m2 = build_norm_target(2, "rng")
    alpha = canonical_injection(m1.signature, m2.signature)
    small = standard_theory("grp")
    for phi in all_phis(m1, m2):
        sub_map = {n: alpha.map[n] for n in small.signature.names}
        rs = build_cyclic_group_model(2)
        assert passes_restricted(m1, m2, alpha, phi, "grp") == prenorm_holds(rs, m2, sub_map, phi)


@given(st.integers(1, 4), st.integers(1, 3))
def test_subnorms_fix_zero(n, k):
    src = build_cyclic_group_model(n, theory="mon")
    tgt = build_truncated_semiring_model(k, theory="mon")
    for p in enumerate_prenorms(src, tgt, canonical_injection(src.signature, tgt.signature)):
        assert p(0) == 0


@given(st.integers(1, 3), st.sampled_from(["standard", "reversed", "equality"]))
def test_orders_are_partial_orders(k, order):
    m = build_truncated_semiring_model(k, theory="mon", order=order)
    for r in m.signature.relations:
        assert relation_flags(m.structure, r.name).partial_order
