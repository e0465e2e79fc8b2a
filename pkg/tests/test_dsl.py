import json

import pytest
from hypothesis import given, strategies as st

from normkit import dsl
from normkit.errors import (
    ArityError,
    DSLError,
    DSLSyntaxError,
    NotAModel,
    UnknownSymbol,
    UnresolvedReference,
)
from normkit.examples import (
    build_cyclic_group_model,
    build_cyclic_ring_model,
    build_norm_target,
    build_truncated_semiring_model,
)
from normkit.formula import And, Implies, Not, Or
from normkit.prenorm import check_prenorm
from normkit.theory import classify_theory, standard_theory

from conftest import FIXTURES

ALL_FIXTURES = sorted(FIXTURES.glob("*.nk"))


def test_corpus_size():
    assert len(ALL_FIXTURES) >= 10


@pytest.mark.parametrize("path", ALL_FIXTURES, ids=lambda p: p.name)
def test_fixture_round_trip(path):
    doc = dsl.load(path)
    text = dsl.print_document(doc)
    again = dsl.parse_document(text)
    assert again == doc
    assert dsl.print_document(again) == text


def test_z2_fixture_contents():
    doc = dsl.load(FIXTURES / "z2.nk")
    assert (len(doc.signatures), len(doc.theories), len(doc.models), len(doc.prenorms)) == (1, 1, 2, 1)
    t = doc.theory("T_mon")
    assert t.canonical_axioms() == standard_theory("mon").canonical_axioms()
    assert classify_theory(t).subalgebraic
    m1, m2, alpha, phi = doc.prenorm_parts("P")
    assert check_prenorm(m1, m2, alpha, phi).passed


def _node_kinds(node):
    yield type(node).__name__
    if isinstance(node, Not):
        yield from _node_kinds(node.body)
    elif isinstance(node, (And, Or, Implies)):
        yield from _node_kinds(node.left)
        yield from _node_kinds(node.right)


def test_every_construct_is_covered():
    docs = [dsl.load(p) for p in ALL_FIXTURES]
    texts = [p.read_text() for p in ALL_FIXTURES]
    assert any(d.homs for d in docs)
    assert any(p.hom is not None for d in docs for p in d.prenorms.values())
    assert any("= equality" in t for t in texts) and any("chain(" in t for t in texts)
    assert any("rel never: ;" in t for t in texts) and any("carrier ;" in t for t in texts)
    assert any(not sig.is_balanced for d in docs for sig in d.signatures.values())
    kinds = {kind for d in docs for decl in d.theories.values()
             for ax in decl.theory.axioms for kind in _node_kinds(ax.formula.matrix)}
    assert {"Equal", "RelAtom", "Not", "And", "Or", "Implies"} <= kinds


def test_empty_input():
    doc = dsl.parse_document("")
    assert doc == dsl.TheoryDocument()
    assert dsl.parse_document("# only a comment\n") == doc


def test_tokenizer():
    kinds = [(t.kind, t.value) for t in dsl.tokenize("fn plus/2; # note\n x -> y /\\ ~z")]
    assert kinds[:5] == [("keyword", "fn"), ("name", "plus"), ("op", "/"), ("int", 2), ("op", ";")]
    assert ("op", "->") in kinds and ("op", "/\\") in kinds and ("op", "~") in kinds
    assert kinds[-1][0] == "eof"


def test_precedence_and_associativity():
    sig = standard_theory("mon").signature
    phi = dsl.parse_formula("forall x . x = x -> x = zero -> ~leq_plus(x, x) \\/ x = x", sig)
    assert isinstance(phi.matrix, Implies) and isinstance(phi.matrix.right, Implies)
    assert isinstance(phi.matrix.right.right, Or) and isinstance(phi.matrix.right.right.left, Not)


SIG = "signature s { fn f/2; fn c/0; rel r/2; rel q/2; pair f r; pair c q; }\n"


def test_syntax_error_positions():
    with pytest.raises(DSLSyntaxError) as e:
        dsl.parse_document("axiom")
    assert (e.value.line, e.value.column) == (1, 1)
    with pytest.raises(DSLSyntaxError) as e:
        dsl.parse_document("signature s {\n  fn f/1\n}")
    assert e.value.line == 3 and "';'" in str(e.value)


def test_arity_error_is_located():
    text = SIG + "theory T over s { vars x; axiom a: forall x . f(x) = x; }"
    with pytest.raises(ArityError) as e:
        dsl.parse_document(text)
    assert e.value.line == 2


def test_unknown_symbol_and_reference():
    with pytest.raises(UnknownSymbol):
        dsl.parse_document(SIG + "theory T over s { vars x; axiom a: forall x . g(x, x) = x; }")
    with pytest.raises(UnresolvedReference):
        dsl.parse_document("theory T over nope { vars x; }")
    with pytest.raises(UnresolvedReference):
        dsl.parse_document(SIG + "model M of T { carrier 0; }")
    with pytest.raises(UnresolvedReference):
        dsl.parse_document(SIG + "theory T over s { vars x; }\nprenorm P from A to B { map 0 -> 0; }")


def test_semantic_errors():
    with pytest.raises(DSLError, match="nullary"):
        dsl.parse_document("signature s { rel r/0; }")
    with pytest.raises(DSLError, match="declared twice"):
        dsl.parse_document("signature s { fn f/1; } signature s { fn g/1; }")
    base = SIG + "theory T over s { vars x; }\n"
    with pytest.raises(DSLError):
        dsl.parse_document(base + "model M of T { carrier 0; fn f: (0, 0) -> 0; fn c: () -> 0; rel r = equality; }")
    with pytest.raises(DSLError):
        dsl.parse_document(base + "model M of T { carrier 0; fn f: (0) -> 0; fn c: () -> 0; rel r = equality; rel q = equality; }")


def test_model_checked_on_demand():
    doc = dsl.load(FIXTURES / "formulas.nk")
    assert doc.model("Bool").name == "Bool"
    with pytest.raises(NotAModel):
        doc.model("Broken")


def test_sighom_fixture():
    doc = dsl.load(FIXTURES / "sighom.nk")
    assert doc.hom("inc").map == {"op": "plus", "leq_op": "leq_plus"}
    m1, m2, alpha, phi = doc.prenorm_parts("P")
    assert alpha == doc.hom("inc") and phi == {0: 0, 1: 1}


def test_json_dump_is_stable():
    doc = dsl.load(FIXTURES / "z2.nk")
    a = json.dumps(doc.to_json(), sort_keys=True)
    b = json.dumps(dsl.load(FIXTURES / "z2.nk").to_json(), sort_keys=True)
    assert a == b and json.loads(a)["prenorms"]["P"]["map"] == [[0, 0], [1, 1]]


def _document(model):
    doc = dsl.TheoryDocument()
    doc.signatures["sig"] = model.signature
    doc.theories["T"] = dsl.TheoryDecl("T", "sig", model.theory)
    doc.models["M"] = dsl.ModelDecl("M", "T", model.structure)
    return doc


builders = st.one_of(
    st.builds(build_cyclic_group_model, st.integers(1, 4), st.just("subalgebraic"), st.sampled_from(["sgrp", "mon", "grp"])),
    st.builds(build_cyclic_group_model, st.integers(1, 3), st.just("algebraic")),
    st.builds(lambda n, u: build_cyclic_ring_model(n, unital=u), st.integers(1, 3), st.booleans()),
    st.builds(build_truncated_semiring_model, st.integers(1, 3), st.sampled_from(["mon", "rg", "rig"]),
              st.sampled_from(["standard", "reversed", "equality"])),
    st.builds(build_norm_target, st.integers(1, 3), st.sampled_from(["grp", "rng", "ring"])),
)


@given(builders)
def test_generated_documents_round_trip(model):
    doc = _document(model)
    text = dsl.print_document(doc)
    parsed = dsl.parse_document(text)
    assert parsed == doc
    assert dsl.print_document(parsed) == text
    assert parsed.model("M").structure == model.structure
