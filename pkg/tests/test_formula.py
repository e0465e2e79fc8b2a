import itertools

import pytest
from hypothesis import given, strategies as st

from normkit.dsl import parse_formula
from normkit.errors import ArityError, BudgetExceeded, UninterpretedSymbol, UnknownSymbol
from normkit.formula import (
    And,
    Apply,
    Equal,
    Formula,
    Implies,
    Not,
    Or,
    RelAtom,
    Var,
    alpha_equivalent,
    associativity,
    canonical,
    check_formula,
    find_counterexample,
    format_formula,
    free_variables,
    neutrality,
    reflexivity,
    rename_variables,
    satisfies,
    symbols_of,
)
from normkit.structure import FiniteStructure, chain_order
from normkit.theory import standard_signature

MON = standard_signature("mon")


def z2():
    return FiniteStructure([0, 1], MON, {"plus": lambda a, b: (a + b) % 2, "zero": 0},
                           {"leq_plus": "equality", "leq_zero": "equality"})


def n2():
    return FiniteStructure([0, 1, 2], MON, {"plus": lambda a, b: min(a + b, 2), "zero": 0},
                           {"leq_plus": chain_order([0, 1, 2]), "leq_zero": chain_order([0, 1, 2])})


def test_symbols_of_typical_axioms():
    assert symbols_of(associativity("plus")) == {"plus"}
    assert symbols_of(neutrality("plus", "zero")) == {"plus", "zero"}
    assert symbols_of(reflexivity("leq_plus")) == {"leq_plus"}


def test_z2_associative_but_not_idempotent():
    assert satisfies(z2(), associativity("plus"))
    idem = parse_formula("forall x . plus(x, x) = x", MON)
    assert find_counterexample(z2(), idem) == {"x": 1}


def test_identity_holds_everywhere():
    phi = Formula(("x",), Equal(Var("x"), Var("x")))
    assert satisfies(z2(), phi) and satisfies(n2(), phi)


def test_empty_carrier_satisfies_universal_formulas():
    sig = standard_signature("sgrp")
    empty = FiniteStructure([], sig, {"plus": []}, {"leq_plus": []})
    assert satisfies(empty, parse_formula("forall x . ~(x = x)", sig))


def test_unquantified_variable_rejected():
    with pytest.raises(ValueError):
        Formula(("x",), Equal(Var("x"), Var("y")))
    with pytest.raises(ValueError):
        Formula(("x", "x"), Equal(Var("x"), Var("x")))


def test_check_formula_catches_arity_and_unknown_symbols():
    with pytest.raises(ArityError):
        check_formula(Formula(("x",), Equal(Apply("plus", (Var("x"),)), Var("x"))), MON)
    with pytest.raises(UnknownSymbol):
        check_formula(Formula(("x",), RelAtom("plus", (Var("x"), Var("x")))), MON)
    with pytest.raises(UninterpretedSymbol):
        find_counterexample(z2(), Formula(("x",), Equal(Apply("times", (Var("x"), Var("x"))), Var("x"))))


def test_budget_guard():
    phi = associativity("plus")
    with pytest.raises(BudgetExceeded):
        satisfies(n2(), phi, budget=26)
    assert satisfies(n2(), phi, budget=27)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("NORMKIT_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        satisfies(n2(), associativity("plus"))


def test_canonical_form_and_alpha_equivalence():
    a = parse_formula("forall x, y . plus(x, y) = plus(y, x)", MON)
    b = parse_formula("forall y, z . plus(z, y) = plus(y, z)", MON)
    c = parse_formula("forall x, y . plus(x, y) = x", MON)
    assert alpha_equivalent(a, b)
    assert not alpha_equivalent(a, c)
    assert canonical(canonical(a)) == canonical(a)


# random formulas over the monoid signature

VARS = ("x", "y", "z")


def terms():
    return st.recursive(
        st.sampled_from([Var(v) for v in VARS] + [Apply("zero")]),
        lambda sub: st.tuples(sub, sub).map(lambda p: Apply("plus", p)),
        max_leaves=4,
    )


def atoms():
    return st.one_of(
        st.builds(Equal, terms(), terms()),
        st.builds(lambda r, a, b: RelAtom(r, (a, b)), st.sampled_from(["leq_plus", "leq_zero"]), terms(), terms()),
    )


def matrices():
    return st.recursive(
        atoms(),
        lambda sub: st.one_of(
            st.builds(Not, sub), st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Implies, sub, sub)
        ),
        max_leaves=5,
    )


@st.composite
def formulas(draw):
    m = draw(matrices())
    used = sorted(free_variables(m))
    extra = draw(st.lists(st.sampled_from([v for v in ("w",) if v not in used]), max_size=1))
    return Formula(tuple(used + extra), m)


def _oracle_term(tables, t, env):
    if isinstance(t, Var):
        return env[t.name]
    return tables[t.symbol](*(_oracle_term(tables, a, env) for a in t.args))


def _oracle(tables, rels, node, env):
    if isinstance(node, Equal):
        return _oracle_term(tables, node.left, env) == _oracle_term(tables, node.right, env)
    if isinstance(node, RelAtom):
        return tuple(_oracle_term(tables, a, env) for a in node.args) in rels[node.symbol]
    if isinstance(node, Not):
        return not _oracle(tables, rels, node.body, env)
    l = _oracle(tables, rels, node.left, env)
    r = _oracle(tables, rels, node.right, env)
    return {And: l and r, Or: l or r, Implies: (not l) or r}[type(node)]


def _oracle_satisfies(carrier, tables, rels, phi):
    return all(
        _oracle(tables, rels, phi.matrix, dict(zip(phi.variables, vals)))
        for vals in itertools.product(carrier, repeat=len(phi.variables))
    )


N2_TABLES = {"plus": lambda a, b: min(a + b, 2), "zero": lambda: 0}
N2_RELS = {"leq_plus": {(a, b) for a in range(3) for b in range(3) if a <= b},
           "leq_zero": {(a, b) for a in range(3) for b in range(3) if a <= b}}


@given(formulas())
def test_evaluation_matches_direct_oracle(phi):
    assert satisfies(n2(), phi) == _oracle_satisfies(range(3), N2_TABLES, N2_RELS, phi)


@given(formulas(), st.permutations(["p", "q", "r", "s"]))
def test_satisfaction_invariant_under_renaming(phi, names):
    ren = dict(zip(("x", "y", "z", "w"), names))
    renamed = rename_variables(phi, ren)
    assert alpha_equivalent(phi, renamed)
    for s in (z2(), n2()):
        assert satisfies(s, phi) == satisfies(s, renamed)


@given(formulas())
def test_print_then_parse_is_identity(phi):
    assert parse_formula(format_formula(phi), MON) == phi


@given(formulas())
def test_counterexample_really_fails(phi):
    w = find_counterexample(n2(), phi)
    if w is not None:
        env = dict(w)
        assert not _oracle(N2_TABLES, N2_RELS, phi.matrix, env)
