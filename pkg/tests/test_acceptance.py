"""One test per acceptance criterion; each records a pass/fail line for the summary."""
import subprocess
import sys
import time

from normkit import dsl
from normkit.category import NormedModel, build_pnr, build_pnr_over_target, check_category_laws
from normkit.census import pointwise_order_census
from normkit.examples import (
    build_cyclic_group_model,
    build_truncated_semiring_model,
    restriction_sweep,
    run_worked_example,
    standard_family,
    theorem_sweep,
)
from normkit.prenorm import composition_closure, enumerate_prenorms, make_prenorm
from normkit.signature import canonical_injection, identity_hom

from conftest import ACCEPTANCE, FIXTURES
from oracles import all_phis, classical_homomorphisms, prenorm_holds


def record(num, desc, ok, detail):
    ACCEPTANCE[num] = (desc, bool(ok), detail)
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {desc}  [{detail}]")
    assert ok, detail


def test_criterion_1_composition_closure():
    t0 = time.perf_counter()
    report = composition_closure(standard_family(ns=(2, 3), ks=(1, 2)))
    elapsed = time.perf_counter() - t0
    record(1, "composites of enumerated prenorms are prenorms (Z2, Z3, N1, N2, all standard theories)",
           report.passed and report.checked > 0 and elapsed < 10,
           f"{report.checked} composites, {len(report.violations)} violations, {elapsed:.2f}s < 10s")


def test_criterion_2_enumeration_counts():
    z2 = build_cyclic_group_model(2, theory="mon")
    n2 = build_truncated_semiring_model(2, theory="mon")
    alpha = canonical_injection(z2.signature, n2.signature)
    subnorms = [p for p in enumerate_prenorms(z2, n2, alpha) if p.is_subnorm]
    brute = [tuple(phi.values()) for phi in all_phis(z2, n2) if prenorm_holds(z2, n2, alpha.map, phi)]
    ident = identity_hom(z2.signature)
    homs = [p.phi for p in enumerate_prenorms(z2, z2, ident)]
    classical = classical_homomorphisms(z2, z2, ident.map)
    ok = (len(subnorms) == 3 and [p.phi for p in subnorms] == brute
          and len(classical) == 2 and homs == classical)
    record(2, "monoid subnorms Z2->N2 = 3; monoid homs Z2->Z2 = 2 and equal to prenorms",
           ok, f"subnorms {len(subnorms)} (brute force {len(brute)} of 9), homs {len(classical)}, prenorms {len(homs)}")


def test_criterion_3_structural_facts():
    results = theorem_sweep(max_n=4, max_k=3)
    ok = all(r.passed and r.checked > 0 for r in results.values())
    detail = ", ".join(f"{name}: {r.checked} checked, {len(r.violations)} violations"
                       for name, r in results.items())
    record(3, "forced zero, group symmetry, unit norm over n<=4, k<=3", ok, detail)


def test_criterion_4_category_laws():
    t0 = time.perf_counter()
    z2 = build_cyclic_group_model(2, theory="mon")
    n2 = build_truncated_semiring_model(2, theory="mon")
    pnr = check_category_laws(build_pnr([z2, n2]))
    ident = identity_hom(z2.signature)
    big = NormedModel(z2, make_prenorm(z2, n2, ident, {0: 0, 1: 2}), "big")
    small = NormedModel(z2, make_prenorm(z2, n2, ident, {0: 0, 1: 1}), "small")
    over = check_category_laws(build_pnr_over_target([big, small], n2))
    elapsed = time.perf_counter() - t0
    record(4, "category axioms for prenorms on {Z2, N2} and for two normed Z2 over N2",
           pnr.passed and over.passed and elapsed < 5,
           f"{pnr.triples_checked} + {over.triples_checked} triples, "
           f"{len(pnr.violations) + len(over.violations)} violations, {elapsed:.2f}s < 5s")


def test_criterion_5_pointwise_preorder():
    res = pointwise_order_census(max_size=3)
    ok = res.passed and res.preorder_counts == {0: 1, 1: 1, 2: 4, 3: 29} and res.antisymmetry_checked > 0
    record(5, "pre/postcomposition and antisymmetry of the pointwise order, carriers <= 3", ok,
           f"{res.precomposition_checked} + {res.postcomposition_checked} instances, "
           f"{res.antisymmetry_checked} partial orders, {len(res.violations)} violations")


def test_criterion_6_forgetful_coherence():
    sweep = restriction_sweep(max_n=4, max_k=3)
    example = run_worked_example("E5", strict=False)
    ok = sweep.passed and sweep.checked > 0 and example.passed
    record(6, "ring subnorm iff group and semiring restrictions pass, every candidate map", ok,
           f"{sweep.checked} maps, {len(sweep.violations)} mismatches")


JSON_COMMANDS = [
    ["example", "E2", "--json"],
    ["check", "prenorm", str(FIXTURES / "bad.nk"), "--prenorm", "N", "--json"],
    ["category", "laws", str(FIXTURES / "z2.nk"), "--models", "Z2,N2", "--json"],
    ["parse", str(FIXTURES / "group.nk"), "--emit-ast"],
]


def test_criterion_7_round_trip_and_stable_json():
    paths = sorted(FIXTURES.glob("*.nk"))
    bad_round_trip = []
    for p in paths:
        doc = dsl.load(p)
        text = dsl.print_document(doc)
        if dsl.parse_document(text) != doc or dsl.print_document(dsl.parse_document(text)) != text:
            bad_round_trip.append(p.name)
    unstable = []
    for cmd in JSON_COMMANDS:
        runs = [subprocess.run([sys.executable, "-m", "normkit", *cmd], capture_output=True).stdout
                for _ in range(2)]
        if runs[0] != runs[1] or not runs[0]:
            unstable.append(cmd[0])
    ok = len(paths) >= 10 and not bad_round_trip and not unstable
    record(7, "parse-print-parse identity on the fixture corpus; byte-stable JSON", ok,
           f"{len(paths)} documents, {len(bad_round_trip)} round-trip failures, "
           f"{len(JSON_COMMANDS)} commands run twice, {len(unstable)} unstable")
