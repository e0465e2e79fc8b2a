"""Command line front end.

Exit status: 0 when every verdict passes, 1 when some verdict fails, 2 on
usage, parse or budget errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import dsl
from .category import (
    NormedModel,
    build_pnr,
    build_pnr_over_target,
    check_category_laws,
    check_short_morphism,
)
from .errors import BudgetExceeded, DSLError, NormkitError
from .examples import EXAMPLES, run_worked_example
from .prenorm import check_prenorm, classify, enumerate_prenorms, make_prenorm
from .theory import classify_theory, models

OK, FAILED, USAGE = 0, 1, 2


class _Out:
    def __init__(self, as_json: bool, stream):
        self.as_json = as_json
        self.stream = stream

    def emit(self, data, text_lines):
        if self.as_json:
            self.stream.write(json.dumps(data, indent=2, sort_keys=True, default=str) + "\n")
        else:
            for line in text_lines:
                self.stream.write(line + "\n")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--budget", type=int, help="assignment/enumeration budget")
    common.add_argument("--seed", type=int, help="shuffle seed for law checking")

    p = argparse.ArgumentParser(prog="normkit", description="Check and enumerate prenorms between finite models.")
    sub = p.add_subparsers(dest="command", required=True)

    parse = sub.add_parser("parse", parents=[common], help="parse a .nk file and print it canonically")
    parse.add_argument("file")
    parse.add_argument("--emit-ast", action="store_true", help="dump the resolved document as JSON")

    check = sub.add_parser("check", help="check a model, a prenorm or a short morphism")
    csub = check.add_subparsers(dest="what", required=True)
    cm = csub.add_parser("model", parents=[common])
    cm.add_argument("file")
    cm.add_argument("--model", required=True)
    cp = csub.add_parser("prenorm", parents=[common])
    cp.add_argument("file")
    cp.add_argument("--prenorm", required=True)
    cs = csub.add_parser("short", parents=[common])
    cs.add_argument("file")
    cs.add_argument("--norm1", required=True, help="prenorm declaring the first normed model")
    cs.add_argument("--norm2", required=True, help="prenorm declaring the second normed model")
    cs.add_argument("--morphism", required=True, help="prenorm declaring the candidate map")

    en = sub.add_parser("enumerate", parents=[common], help="list every prenorm between two models")
    en.add_argument("file")
    en.add_argument("--source", required=True)
    en.add_argument("--target", required=True)
    en.add_argument("--sighom", help="fix the signature hom")

    cl = sub.add_parser("classify", parents=[common], help="definiteness of a prenorm wrt a constant")
    cl.add_argument("file")
    cl.add_argument("--prenorm", required=True)
    cl.add_argument("--constant", required=True)

    cat = sub.add_parser("category", help="build a category of models and check its laws")
    catsub = cat.add_subparsers(dest="what", required=True)
    for name in ("build", "laws"):
        c = catsub.add_parser(name, parents=[common])
        c.add_argument("file")
        c.add_argument("--models", help="comma-separated model names")
        c.add_argument("--norms", help="comma-separated prenorms into one shared target")
        c.add_argument("--mode", choices=("prenorm", "subnorm"), default="prenorm")
        c.add_argument("--emit-dot", action="store_true", help="print the category as a DOT graph")

    ex = sub.add_parser("example", parents=[common], help="run a worked example")
    ex.add_argument("name", choices=sorted(EXAMPLES) + [k.lower() for k in sorted(EXAMPLES)])
    ex.add_argument("--n", type=int, help="source size")
    ex.add_argument("--k", type=int, help="target size")
    return p


def _phi_str(carrier, phi) -> str:
    return "{" + ", ".join(f"{a}->{b}" for a, b in zip(carrier, phi)) + "}"


def _cmd_parse(args, out):
    doc = dsl.load(args.file)
    if args.emit_ast or args.json:
        out.as_json = True
        out.emit(doc.to_json(), [])
    else:
        out.stream.write(dsl.print_document(doc))
    return OK


def _cmd_check_model(args, out):
    doc = dsl.load(args.file)
    decl = doc._get(doc.models, args.model, "model")
    theory = doc.theory(decl.theory)
    report = models(decl.structure, theory, args.budget)
    cls = classify_theory(theory)
    lines = [f"model {args.model} of {decl.theory}: {'PASS' if report.passed else 'FAIL'}"]
    for v in report.verdicts:
        lines.append(f"  {v.name}: {'ok' if v.passed else 'fails at ' + str(v.witness)}")
    lines.append(f"  theory: prealgebraic={cls.prealgebraic} subalgebraic={cls.subalgebraic} algebraic={cls.algebraic}")
    out.emit({"model": args.model, "theory": decl.theory, "classification": cls.to_json(), **report.to_json()}, lines)
    return OK if report.passed else FAILED


def _report_lines(title, report):
    lines = [f"{title}: {'PASS' if report.passed else 'FAIL'}"]
    lines += [f"  (i) {v.describe()}" for v in report.condition_i]
    lines += [f"  (ii) {v.describe()}" for v in report.condition_ii]
    lines.append(f"  subnorm={report.is_subnorm} homomorphism={report.is_homomorphism}")
    return lines


def _cmd_check_prenorm(args, out):
    doc = dsl.load(args.file)
    m1, m2, alpha, phi = doc.prenorm_parts(args.prenorm, args.budget)
    report = check_prenorm(m1, m2, alpha, phi)
    data = {"prenorm": args.prenorm, "from": m1.name, "to": m2.name, **report.to_json()}
    out.emit(data, _report_lines(f"prenorm {args.prenorm}", report))
    return OK if report.passed else FAILED


def _normed(doc, name, budget):
    m1, m2, alpha, phi = doc.prenorm_parts(name, budget)
    return NormedModel(m1, make_prenorm(m1, m2, alpha, phi), name)


def _cmd_check_short(args, out):
    doc = dsl.load(args.file)
    n1, n2 = _normed(doc, args.norm1, args.budget), _normed(doc, args.norm2, args.budget)
    s, t, beta, psi = doc.prenorm_parts(args.morphism, args.budget)
    if s != n1.model or t != n2.model:
        raise DSLError(f"{args.morphism} must go from {n1.model.name} to {n2.model.name}")
    report = check_short_morphism(n1, n2, beta, psi)
    lines = [
        f"short morphism {args.morphism}: {'PASS' if report.is_short else 'FAIL'}",
        f"  prenorm: {report.is_prenorm}" + ("" if report.is_prenorm else f" ({report.prenorm_failure})"),
        f"  triangle alpha2 . beta == alpha1: {report.signature_triangle_commutes}",
        f"  contraction: {report.contraction_holds}"
        + ("" if report.contraction_holds else f" (a, |psi a|, |a|) = {report.contraction_witness}"),
        f"  isometry: {report.is_isometry}",
    ]
    out.emit({"morphism": args.morphism, **report.to_json()}, lines)
    return OK if report.is_short else FAILED


def _cmd_enumerate(args, out):
    doc = dsl.load(args.file)
    m1, m2 = doc.model(args.source, args.budget), doc.model(args.target, args.budget)
    hom = doc.hom(args.sighom) if args.sighom else None
    ps = enumerate_prenorms(m1, m2, hom, args.budget)
    lines = [f"{len(ps)} prenorms {m1.name} -> {m2.name}"]
    for p in ps:
        tag = " subnorm" if p.report.is_subnorm else ""
        lines.append(f"  {p.hom} {_phi_str(m1.carrier, p.phi)}{tag}")
    data = {
        "source": m1.name,
        "target": m2.name,
        "count": len(ps),
        "prenorms": [
            {"sighom": p.hom.to_json(), "phi": [[a, b] for a, b in zip(m1.carrier, p.phi)],
             "is_subnorm": p.report.is_subnorm, "is_homomorphism": p.report.is_homomorphism}
            for p in ps
        ],
    }
    out.emit(data, lines)
    return OK


def _cmd_classify(args, out):
    doc = dsl.load(args.file)
    m1, m2, alpha, phi = doc.prenorm_parts(args.prenorm, args.budget)
    p = make_prenorm(m1, m2, alpha, phi)
    cls = classify(p, args.constant)
    lines = [f"{args.prenorm} wrt {args.constant} (pivot {cls.pivot}): {', '.join(cls.labels())}"]
    if cls.note:
        lines.append(f"  note: {cls.note}")
    out.emit({"prenorm": args.prenorm, **cls.to_json()}, lines)
    return OK


def _build_category(args, doc):
    if args.norms:
        normed = [_normed(doc, n, args.budget) for n in args.norms.split(",")]
        target = normed[0].target
        return build_pnr_over_target(normed, target, args.budget)
    if not args.models:
        raise DSLError("give --models or --norms")
    ms = [doc.model(n, args.budget) for n in args.models.split(",")]
    return build_pnr(ms, args.mode, args.budget)


def _cmd_category(args, out):
    doc = dsl.load(args.file)
    cat = _build_category(args, doc)
    if args.emit_dot:
        out.stream.write(cat.to_dot())
        return OK
    if args.what == "build":
        lines = [f"{len(cat.objects)} objects, {len(cat.morphisms)} morphisms"]
        for a in cat.objects:
            for b in cat.objects:
                lines.append(f"  hom({a}, {b}) = {len(cat.hom(a, b))}")
        out.emit(cat.to_json(), lines)
        return OK
    report = check_category_laws(cat, args.seed)
    lines = [f"category laws: {'PASS' if report.passed else 'FAIL'} "
             f"({report.pairs_checked} composable pairs, {report.triples_checked} triples)"]
    lines += [f"  axiom {v.axiom}: {v.message} at {v.witness}" for v in report.violations]
    out.emit(report.to_json(), lines)
    return OK if report.passed else FAILED


def _cmd_example(args, out):
    r = run_worked_example(args.name, args.n, args.k, strict=False)
    lines = [f"{r.name}: {r.source.name} -> {r.target.name}, {len(r.subnorms)} subnorms"]
    for i, p in enumerate(r.subnorms):
        extra = f"  [{', '.join(r.classifications[i].labels())}]" if i in r.classifications else ""
        lines.append(f"  {_phi_str(r.source.carrier, p.phi)}{extra}")
    for a in r.assertions:
        lines.append(f"  {'PASS' if a.passed else 'FAIL'} {a.name} ({a.checked} checked)"
                     + ("" if a.passed else f" witness {a.witness}"))
    out.emit(r.to_json(), lines)
    return OK if r.passed else FAILED


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "budget", None) is not None and args.budget <= 0:
        stderr.write("normkit: error: --budget must be positive\n")
        return USAGE
    out = _Out(getattr(args, "json", False), stdout)
    handlers = {
        ("parse", None): _cmd_parse,
        ("check", "model"): _cmd_check_model,
        ("check", "prenorm"): _cmd_check_prenorm,
        ("check", "short"): _cmd_check_short,
        ("enumerate", None): _cmd_enumerate,
        ("classify", None): _cmd_classify,
        ("category", "build"): _cmd_category,
        ("category", "laws"): _cmd_category,
        ("example", None): _cmd_example,
    }
    handler = handlers[(args.command, getattr(args, "what", None))]
    try:
        return handler(args, out)
    except (DSLError, BudgetExceeded, OSError) as exc:
        stderr.write(f"normkit: error: {exc}\n")
        return USAGE
    except NormkitError as exc:
        stderr.write(f"normkit: {type(exc).__name__}: {exc}\n")
        return FAILED


def main(argv=None) -> int:
    return run(argv)
