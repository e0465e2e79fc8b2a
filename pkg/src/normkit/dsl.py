"""A small declarative language for signatures, theories, models and prenorms.

Example::

    signature mon {
      fn plus/2; fn zero/0;
      rel leq_plus/2; rel leq_zero/2;
      pair plus leq_plus; pair zero leq_zero;
    }
    theory T over mon {
      vars x, y, z;
      axiom assoc: forall x, y, z . plus(plus(x, y), z) = plus(x, plus(y, z));
    }
    model Z2 of T {
      carrier 0, 1;
      fn plus: (0, 0) -> 0, (0, 1) -> 1, (1, 0) -> 1, (1, 1) -> 0;
      fn zero: () -> 0;
      rel leq_plus = equality;
      rel leq_zero = chain(0, 1);
    }
    sighom h from mon to mon { map plus -> plus, zero -> zero; }
    prenorm P from Z2 to Z2 { sighom h; map 0 -> 0, 1 -> 1; }

Declarations may appear in any order; references are resolved after the
whole file is read.  Bare names inside a formula are variables when
quantified and constants otherwise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import formula as fm
from .errors import (
    ArityError,
    DSLError,
    DSLSyntaxError,
    SignatureError,
    StructureError,
    TheoryError,
    UnknownSymbol,
    UnresolvedReference,
)
from .formula import Apply, Axiom, Formula, Var
from .signature import Signature, SignatureHom, canonical_injection, check_signature_hom, make_signature
from .structure import EQUALITY, FiniteStructure, chain_order
from .theory import Model, Theory

KEYWORDS = frozenset(
    "signature fn rel pair theory over vars axiom forall model of carrier "
    "prenorm from to sighom map".split()
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>/\\|\\/|->|[=~.,;:(){}/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str      # name, keyword, int, op, eof
    value: object
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DSLSyntaxError(line, col, "a token", text[pos])
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind == "int":
                out.append(Token("int", int(s), line, col))
            elif kind == "name":
                out.append(Token("keyword" if s in KEYWORDS else "name", s, line, col))
            elif kind == "op":
                out.append(Token("op", s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("eof", None, line, col))
    return out


# raw declarations, before name resolution

@dataclass
class _Raw:
    kind: str
    name: str
    tok: Token
    data: dict


@dataclass(frozen=True)
class TheoryDecl:
    name: str
    signature: str
    theory: Theory


@dataclass(frozen=True)
class ModelDecl:
    name: str
    theory: str
    structure: FiniteStructure


@dataclass(frozen=True)
class HomDecl:
    name: str
    source: str
    target: str
    hom: SignatureHom


@dataclass(frozen=True)
class PrenormDecl:
    name: str
    source: str
    target: str
    hom: str | None
    phi: tuple          # (source label, target label) pairs


@dataclass
class TheoryDocument:
    signatures: dict = field(default_factory=dict)
    theories: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    models: dict = field(default_factory=dict)
    prenorms: dict = field(default_factory=dict)

    def theory(self, name) -> Theory:
        return self._get(self.theories, name, "theory").theory

    def structure(self, name) -> FiniteStructure:
        return self._get(self.models, name, "model").structure

    def model(self, name, budget=None) -> Model:
        """The named model, verified against its theory (raises NotAModel)."""
        decl = self._get(self.models, name, "model")
        return Model.of(self.theory(decl.theory), decl.structure, name, budget)

    def hom(self, name) -> SignatureHom:
        return self._get(self.homs, name, "sighom").hom

    def prenorm_parts(self, name, budget=None):
        """``(source, target, hom, phi)`` for a declared candidate prenorm."""
        decl = self._get(self.prenorms, name, "prenorm")
        m1, m2 = self.model(decl.source, budget), self.model(decl.target, budget)
        if decl.hom is None:
            alpha = canonical_injection(m1.signature, m2.signature)
        else:
            alpha = self.hom(decl.hom)
        return m1, m2, alpha, dict(decl.phi)

    @staticmethod
    def _get(table, name, what):
        if name not in table:
            raise UnresolvedReference(f"no {what} named {name!r}")
        return table[name]

    def to_json(self):
        return {
            "signatures": {n: s.to_json() for n, s in self.signatures.items()},
            "theories": {
                n: {
                    "signature": d.signature,
                    "variables": list(d.theory.variables),
                    "axioms": [
                        {"name": a.name, "formula": fm.formula_to_json(a.formula)}
                        for a in d.theory.axioms
                    ],
                }
                for n, d in self.theories.items()
            },
            "sighoms": {
                n: {"from": d.source, "to": d.target, "map": d.hom.to_json()}
                for n, d in self.homs.items()
            },
            "models": {n: {"theory": d.theory, **d.structure.to_json()} for n, d in self.models.items()},
            "prenorms": {
                n: {"from": d.source, "to": d.target, "sighom": d.hom, "map": [list(p) for p in d.phi]}
                for n, d in self.prenorms.items()
            },
        }


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _describe(self, t):
        return "end of input" if t.kind == "eof" else str(t.value)

    def fail(self, expected):
        t = self.tok
        raise DSLSyntaxError(t.line, t.column, expected, self._describe(t))

    def at(self, value, kind=None) -> bool:
        t = self.tok
        return t.value == value and (kind is None or t.kind == kind) and t.kind != "eof"

    def accept(self, value) -> bool:
        if self.at(value) and self.tok.kind in ("op", "keyword"):
            self.i += 1
            return True
        return False

    def expect(self, value) -> Token:
        if not (self.at(value) and self.tok.kind in ("op", "keyword")):
            self.fail(repr(value))
        t = self.tok
        self.i += 1
        return t

    def name(self, what="a name") -> Token:
        if self.tok.kind != "name":
            self.fail(what)
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail("an integer")
        t = self.tok
        self.i += 1
        return t.value

    def label(self):
        if self.tok.kind in ("int", "name"):
            t = self.tok
            self.i += 1
            return t.value
        self.fail("an element label")

    def comma_list(self, item, closer):
        out = []
        if self.at(closer):
            return out
        out.append(item())
        while self.accept(","):
            out.append(item())
        return out

    # top level

    def document(self) -> list[_Raw]:
        out = []
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "keyword" or t.value not in ("signature", "theory", "model", "sighom", "prenorm"):
                self.fail("'signature', 'theory', 'model', 'sighom' or 'prenorm'")
            out.append(getattr(self, "_" + t.value)())
        return out

    def _signature(self):
        t = self.expect("signature")
        name = self.name().value
        fns, rels, pairs = [], [], []
        self.expect("{")
        while not self.accept("}"):
            if self.accept("fn"):
                n = self.name().value
                self.expect("/")
                fns.append((n, self.integer()))
            elif self.accept("rel"):
                n = self.name().value
                self.expect("/")
                rels.append((n, self.integer()))
            elif self.accept("pair"):
                f = self.name().value
                pairs.append((f, self.name().value))
            else:
                self.fail("'fn', 'rel', 'pair' or '}'")
            self.expect(";")
        return _Raw("signature", name, t, {"fns": fns, "rels": rels, "pairs": pairs})

    def _theory(self):
        t = self.expect("theory")
        name = self.name().value
        self.expect("over")
        sig = self.name("a signature name")
        variables, axioms = None, []
        self.expect("{")
        while not self.accept("}"):
            if self.accept("vars"):
                if variables is not None:
                    self.fail("a single 'vars' line")
                variables = [v.value for v in self.comma_list(self.name, ";")]
            elif self.at("axiom", "keyword"):
                at = self.expect("axiom")
                aname = self.name().value
                self.expect(":")
                axioms.append((aname, at, self.formula()))
            else:
                self.fail("'vars', 'axiom' or '}'")
            self.expect(";")
        return _Raw("theory", name, t, {"sig": sig, "vars": variables or [], "axioms": axioms})

    def _model(self):
        t = self.expect("model")
        name = self.name().value
        self.expect("of")
        th = self.name("a theory name")
        carrier, fns, rels = None, [], []
        self.expect("{")
        while not self.accept("}"):
            if self.accept("carrier"):
                carrier = self.comma_list(self.label, ";")
            elif self.at("fn", "keyword"):
                ft = self.expect("fn")
                fname = self.name().value
                self.expect(":")
                fns.append((fname, ft, self.comma_list(self._entry, ";")))
            elif self.at("rel", "keyword"):
                rt = self.expect("rel")
                rname = self.name().value
                rels.append((rname, rt, self._relation_body()))
            else:
                self.fail("'carrier', 'fn', 'rel' or '}'")
            self.expect(";")
        if carrier is None:
            raise DSLSyntaxError(t.line, t.column, "a 'carrier' line in the model")
        return _Raw("model", name, t, {"theory": th, "carrier": carrier, "fns": fns, "rels": rels})

    def _tuple(self):
        self.expect("(")
        items = self.comma_list(self.label, ")")
        self.expect(")")
        return tuple(items)

    def _entry(self):
        args = self._tuple()
        self.expect("->")
        return args, self.label()

    def _relation_body(self):
        if self.accept(":"):
            return ("tuples", self.comma_list(self._tuple, ";"))
        self.expect("=")
        word = self.name("'equality' or 'chain'")
        if word.value == "equality":
            return ("equality", None)
        if word.value == "chain":
            return ("chain", self._tuple())
        raise DSLSyntaxError(word.line, word.column, "'equality' or 'chain'", word.value)

    def _arrow_pairs(self, item):
        def pair():
            a = item()
            self.expect("->")
            return a, item()
        return self.comma_list(pair, ";")

    def _sighom(self):
        t = self.expect("sighom")
        name = self.name().value
        self.expect("from")
        src = self.name("a signature name")
        self.expect("to")
        trg = self.name("a signature name")
        pairs = []
        self.expect("{")
        while not self.accept("}"):
            self.expect("map")
            pairs += [(a.value, b.value) for a, b in self._arrow_pairs(self.name)]
            self.expect(";")
        return _Raw("sighom", name, t, {"src": src, "trg": trg, "pairs": pairs})

    def _prenorm(self):
        t = self.expect("prenorm")
        name = self.name().value
        self.expect("from")
        src = self.name("a model name")
        self.expect("to")
        trg = self.name("a model name")
        hom, pairs = None, []
        self.expect("{")
        while not self.accept("}"):
            if self.accept("sighom"):
                hom = self.name("a sighom name")
            elif self.accept("map"):
                pairs += self._arrow_pairs(self.label)
            else:
                self.fail("'sighom', 'map' or '}'")
            self.expect(";")
        return _Raw("prenorm", name, t, {"src": src, "trg": trg, "hom": hom, "pairs": pairs})

    # formulas: implication binds loosest and associates to the right

    def formula(self):
        variables = []
        if self.accept("forall"):
            variables = [v.value for v in self.comma_list(self.name, ".")]
            self.expect(".")
        return variables, self.implication()

    def implication(self):
        left = self.disjunction()
        if self.accept("->"):
            return ("implies", left, self.implication())
        return left

    def disjunction(self):
        node = self.conjunction()
        while self.accept("\\/"):
            node = ("or", node, self.conjunction())
        return node

    def conjunction(self):
        node = self.unary()
        while self.accept("/\\"):
            node = ("and", node, self.unary())
        return node

    def unary(self):
        if self.accept("~"):
            return ("not", self.unary())
        if self.accept("("):
            node = self.implication()
            self.expect(")")
            return node
        left = self.term()
        if self.accept("="):
            return ("eq", left, self.term())
        return ("atom", left)

    def term(self):
        t = self.name("a term")
        args = None
        if self.accept("("):
            args = self.comma_list(self.term, ")")
            self.expect(")")
        return ("term", t, args)


# resolution

def _located(exc_type, message, tok):
    return exc_type(message, tok.line, tok.column)


class _Resolver:
    def __init__(self, raws):
        self.raws = raws
        self.doc = TheoryDocument()

    def run(self) -> TheoryDocument:
        seen = set()
        for r in self.raws:
            if r.name in seen:
                raise _located(DSLError, f"name {r.name!r} is declared twice", r.tok)
            seen.add(r.name)
        for kind in ("signature", "theory", "sighom", "model", "prenorm"):
            for r in self.raws:
                if r.kind == kind:
                    getattr(self, "_" + kind)(r)
        return self.doc

    def _lookup(self, table, tok, what):
        if tok.value not in table:
            raise _located(UnresolvedReference, f"unknown {what} {tok.value!r}", tok)
        return table[tok.value]

    def _signature(self, r):
        d = r.data
        try:
            sig = make_signature(d["fns"], d["rels"], d["pairs"] or None)
        except (SignatureError, ValueError) as exc:
            raise _located(DSLError, str(exc), r.tok) from exc
        self.doc.signatures[r.name] = sig

    def _theory(self, r):
        d = r.data
        sig = self._lookup(self.doc.signatures, d["sig"], "signature")
        axioms = []
        for aname, at, (variables, body) in d["axioms"]:
            matrix = self._matrix(body, set(variables), sig)
            try:
                axioms.append(Axiom(aname, Formula(tuple(variables), matrix)))
            except ValueError as exc:
                raise _located(DSLError, str(exc), at) from exc
        try:
            th = Theory(tuple(d["vars"]), sig, tuple(axioms))
        except TheoryError as exc:
            raise _located(DSLError, str(exc), r.tok) from exc
        self.doc.theories[r.name] = TheoryDecl(r.name, d["sig"].value, th)

    def _matrix(self, node, bound, sig):
        kind = node[0]
        if kind == "not":
            return fm.Not(self._matrix(node[1], bound, sig))
        if kind in ("and", "or", "implies"):
            cls = {"and": fm.And, "or": fm.Or, "implies": fm.Implies}[kind]
            return cls(self._matrix(node[1], bound, sig), self._matrix(node[2], bound, sig))
        if kind == "eq":
            return fm.Equal(self._term(node[1], bound, sig), self._term(node[2], bound, sig))
        _, tok, args = node[1]
        if not sig.is_relation(tok.value):
            what = "is a function symbol; expected '='" if sig.is_function(tok.value) else "is not a relation symbol"
            raise _located(UnknownSymbol, f"{tok.value!r} {what}", tok)
        args = args or []
        if len(args) != sig.arity(tok.value):
            raise _located(
                ArityError, f"{tok.value!r} takes {sig.arity(tok.value)} arguments, got {len(args)}", tok
            )
        return fm.RelAtom(tok.value, tuple(self._term(a, bound, sig) for a in args))

    def _term(self, node, bound, sig):
        _, tok, args = node
        name = tok.value
        if args is None and name in bound:
            return Var(name)
        if name in bound:
            raise _located(DSLError, f"variable {name!r} applied to arguments", tok)
        if not sig.is_function(name):
            raise _located(UnknownSymbol, f"{name!r} is neither a bound variable nor a function symbol", tok)
        args = args or []
        if len(args) != sig.arity(name):
            raise _located(ArityError, f"{name!r} takes {sig.arity(name)} arguments, got {len(args)}", tok)
        return Apply(name, tuple(self._term(a, bound, sig) for a in args))

    def _sighom(self, r):
        d = r.data
        s1 = self._lookup(self.doc.signatures, d["src"], "signature")
        s2 = self._lookup(self.doc.signatures, d["trg"], "signature")
        try:
            hom = check_signature_hom(d["pairs"], s1, s2)
        except SignatureError as exc:
            raise _located(DSLError, str(exc), r.tok) from exc
        self.doc.homs[r.name] = HomDecl(r.name, d["src"].value, d["trg"].value, hom)

    def _model(self, r):
        d = r.data
        decl = self._lookup(self.doc.theories, d["theory"], "theory")
        sig = decl.theory.signature
        fns, rels = {}, {}
        for fname, ft, entries in d["fns"]:
            if not sig.is_function(fname):
                raise _located(UnknownSymbol, f"{fname!r} is not a function symbol", ft)
            if fname in fns:
                raise _located(DSLError, f"function {fname!r} interpreted twice", ft)
            table = {}
            for args, value in entries:
                if len(args) != sig.arity(fname):
                    raise _located(ArityError, f"{fname!r} entry {args} has the wrong arity", ft)
                if args in table:
                    raise _located(DSLError, f"{fname!r} entry {args} given twice", ft)
                table[args] = value
            fns[fname] = table
        for rname, rt, (kind, body) in d["rels"]:
            if not sig.is_relation(rname):
                raise _located(UnknownSymbol, f"{rname!r} is not a relation symbol", rt)
            if rname in rels:
                raise _located(DSLError, f"relation {rname!r} interpreted twice", rt)
            if kind == "equality":
                rels[rname] = EQUALITY
            elif kind == "chain":
                rels[rname] = chain_order(body)
            else:
                for t in body:
                    if len(t) != sig.arity(rname):
                        raise _located(ArityError, f"{rname!r} tuple {t} has the wrong arity", rt)
                rels[rname] = body
        try:
            st = FiniteStructure(d["carrier"], sig, fns, rels)
        except StructureError as exc:
            raise _located(DSLError, str(exc), r.tok) from exc
        self.doc.models[r.name] = ModelDecl(r.name, d["theory"].value, st)

    def _prenorm(self, r):
        d = r.data
        self._lookup(self.doc.models, d["src"], "model")
        self._lookup(self.doc.models, d["trg"], "model")
        hom = None
        if d["hom"] is not None:
            self._lookup(self.doc.homs, d["hom"], "sighom")
            hom = d["hom"].value
        self.doc.prenorms[r.name] = PrenormDecl(
            r.name, d["src"].value, d["trg"].value, hom, tuple(d["pairs"])
        )


def parse_document(text: str) -> TheoryDocument:
    """Parse and resolve a whole document."""
    return _Resolver(_Parser(text).document()).run()


def parse_formula(text: str, signature: Signature) -> Formula:
    """Parse one closed formula over ``signature``."""
    p = _Parser(text)
    variables, body = p.formula()
    if p.tok.kind != "eof":
        p.fail("end of formula")
    matrix = _Resolver([])._matrix(body, set(variables), signature)
    return Formula(tuple(variables), matrix)


# printing

def _label(a) -> str:
    return str(a)


def _tuple_str(t) -> str:
    return "(" + ", ".join(map(_label, t)) + ")"


def print_document(doc: TheoryDocument) -> str:
    """Canonical source text; parsing it back gives an equal document."""
    blocks = []
    for name, sig in doc.signatures.items():
        lines = [f"signature {name} {{"]
        lines += [f"  fn {s.name}/{s.arity};" for s in sig.functions]
        lines += [f"  rel {s.name}/{s.arity};" for s in sig.relations]
        if sig.pairing and sig.functions:
            lines += [f"  pair {f} {r};" for f, r in sig.pairing]
        lines.append("}")
        blocks.append(lines)
    for name, d in doc.theories.items():
        lines = [f"theory {name} over {d.signature} {{"]
        if d.theory.variables:
            lines.append(f"  vars {', '.join(d.theory.variables)};")
        lines += [f"  axiom {a.name}: {fm.format_formula(a.formula)};" for a in d.theory.axioms]
        lines.append("}")
        blocks.append(lines)
    for name, d in doc.homs.items():
        body = ", ".join(f"{s} -> {t}" for s, t in d.hom.mapping)
        lines = [f"sighom {name} from {d.source} to {d.target} {{"]
        if body:
            lines.append(f"  map {body};")
        lines.append("}")
        blocks.append(lines)
    for name, d in doc.models.items():
        st = d.structure
        lines = [f"model {name} of {d.theory} {{", f"  carrier {', '.join(map(_label, st.carrier))};"]
        for s in st.signature.functions:
            entries = ", ".join(f"{_tuple_str(args)} -> {_label(v)}" for args, v in st.function_table(s.name).items())
            lines.append(f"  fn {s.name}: {entries};".replace(": ;", ":;"))
        for s in st.signature.relations:
            if s.arity == 2 and st.is_diagonal(s.name):
                lines.append(f"  rel {s.name} = equality;")
            else:
                body = ", ".join(_tuple_str(t) for t in st.sorted_relation(s.name))
                lines.append(f"  rel {s.name}: {body};".replace(": ;", ":;"))
        lines.append("}")
        blocks.append(lines)
    for name, d in doc.prenorms.items():
        lines = [f"prenorm {name} from {d.source} to {d.target} {{"]
        if d.hom is not None:
            lines.append(f"  sighom {d.hom};")
        if d.phi:
            lines.append("  map " + ", ".join(f"{_label(a)} -> {_label(b)}" for a, b in d.phi) + ";")
        lines.append("}")
        blocks.append(lines)
    return "\n\n".join("\n".join(b) for b in blocks) + ("\n" if blocks else "")


def load(path) -> TheoryDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())

