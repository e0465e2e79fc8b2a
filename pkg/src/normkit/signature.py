"""Finitary single-sorted signatures and the homomorphisms between them.

Arities are stored as logical arities: a constant has arity 0, a binary
operation arity 2.  (The classical convention of writing ``n + 1`` for an
``n``-ary function symbol is not used anywhere in this package.)
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    ArityMismatch,
    BadPairing,
    DuplicateName,
    KindMismatch,
    NotASubsignature,
    NotComposable,
    NullaryRelation,
    PairingNotPreserved,
    SignatureHomError,
)

FUNCTION = "function"
RELATION = "relation"

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str
    arity: int

    def __post_init__(self):
        if not IDENT_RE.match(self.name):
            raise ValueError(f"bad symbol name {self.name!r}")
        if self.kind not in (FUNCTION, RELATION):
            raise ValueError(f"bad symbol kind {self.kind!r}")
        if self.arity < 0:
            raise ValueError("arity must be a natural number")
        if self.kind == RELATION and self.arity == 0:
            raise NullaryRelation(f"relation {self.name!r} is nullary")

    def to_json(self):
        return {"name": self.name, "arity": self.arity}


@dataclass(frozen=True)
class Signature:
    functions: tuple[Symbol, ...]
    relations: tuple[Symbol, ...]
    # (function name, relation name) pairs in function order; None if unbalanced
    pairing: tuple[tuple[str, str], ...] | None = None
    _by_name: Mapping[str, Symbol] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        table = {}
        for sym in self.functions + self.relations:
            if sym.name in table:
                raise DuplicateName(f"symbol {sym.name!r} declared twice")
            table[sym.name] = sym
        object.__setattr__(self, "_by_name", table)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.functions + self.relations)

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return self.functions + self.relations

    def __contains__(self, name):
        return name in self._by_name

    def symbol(self, name) -> Symbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"no symbol {name!r} in signature") from None

    def arity(self, name) -> int:
        return self.symbol(name).arity

    def is_function(self, name) -> bool:
        return name in self._by_name and self._by_name[name].kind == FUNCTION

    def is_relation(self, name) -> bool:
        return name in self._by_name and self._by_name[name].kind == RELATION

    @property
    def is_algebraic(self) -> bool:
        return not self.relations

    @property
    def is_balanced(self) -> bool:
        return self.pairing is not None

    def paired_relation(self, fname) -> str | None:
        for f, r in self.pairing or ():
            if f == fname:
                return r
        return None

    def paired_function(self, rname) -> str | None:
        for f, r in self.pairing or ():
            if r == rname:
                return f
        return None

    def to_json(self):
        return {
            "functions": [s.to_json() for s in self.functions],
            "relations": [s.to_json() for s in self.relations],
            "pairing": None if self.pairing is None else [list(p) for p in self.pairing],
        }

    @classmethod
    def from_json(cls, data):
        return make_signature(
            [(f["name"], f["arity"]) for f in data["functions"]],
            [(r["name"], r["arity"]) for r in data["relations"]],
            None if data.get("pairing") is None else [tuple(p) for p in data["pairing"]],
        )

    def __str__(self):
        parts = [f"{s.name}/{s.arity}" for s in self.functions]
        rels = [f"{s.name}/{s.arity}" for s in self.relations]
        return f"({', '.join(parts)}; {', '.join(rels)})"


def make_signature(
    functions: Iterable[tuple[str, int]] = (),
    relations: Iterable[tuple[str, int]] = (),
    pairing: Iterable[tuple[str, str]] | None = None,
) -> Signature:
    """Build and validate a signature.

    ``pairing`` lists ``(function, relation)`` pairs and must be a bijection
    between the two symbol sets.  A signature with no symbols at all is
    balanced through the empty bijection.
    """
    fsyms = tuple(Symbol(name, FUNCTION, arity) for name, arity in functions)
    rsyms = tuple(Symbol(name, RELATION, arity) for name, arity in relations)
    if pairing is None and not fsyms and not rsyms:
        pairing = ()
    if pairing is not None:
        pairing = _normalize_pairing(fsyms, rsyms, list(pairing))
    return Signature(fsyms, rsyms, pairing)


def _normalize_pairing(fsyms, rsyms, pairs):
    fnames = [s.name for s in fsyms]
    rnames = {s.name for s in rsyms}
    seen_f, seen_r = {}, set()
    for f, r in pairs:
        if f not in fnames:
            raise BadPairing(f"{f!r} is not a function symbol")
        if r not in rnames:
            raise BadPairing(f"{r!r} is not a relation symbol")
        if f in seen_f or r in seen_r:
            raise BadPairing(f"pairing ({f}, {r}) is not injective")
        seen_f[f] = r
        seen_r.add(r)
    if len(seen_f) != len(fnames) or len(seen_r) != len(rnames):
        raise BadPairing("pairing is not a bijection between functions and relations")
    return tuple((f, seen_f[f]) for f in fnames)


EMPTY_SIGNATURE = make_signature()


def is_subsignature(sub: Signature, sup: Signature) -> bool:
    return all(
        s.name in sup and sup.symbol(s.name) == s for s in sub.symbols
    )


def subsignature(sig: Signature, names: Iterable[str]) -> Signature:
    """The subsignature on ``names``; pairs survive when both ends are kept."""
    keep = set(names)
    missing = keep - set(sig.names)
    if missing:
        raise NotASubsignature(f"unknown symbols {sorted(missing)}")
    fs = [(s.name, s.arity) for s in sig.functions if s.name in keep]
    rs = [(s.name, s.arity) for s in sig.relations if s.name in keep]
    pairing = None
    if sig.pairing is not None:
        pairs = [(f, r) for f, r in sig.pairing if f in keep and r in keep]
        if len(pairs) == len(fs) == len(rs):
            pairing = pairs
    return make_signature(fs, rs, pairing)


@dataclass(frozen=True)
class SignatureHom:
    source: Signature
    target: Signature
    # (source name, target name) in source symbol order
    mapping: tuple[tuple[str, str], ...]

    @property
    def map(self) -> dict[str, str]:
        return dict(self.mapping)

    def __call__(self, name):
        for s, t in self.mapping:
            if s == name:
                return t
        raise KeyError(name)

    @property
    def components(self):
        """Index maps on paired symbols, keyed by function name.

        For balanced source and target, returns ``(on_functions, on_relations)``
        where ``on_functions[f]`` is the target function hit by ``f`` and
        ``on_relations[f]`` the target function paired with the image of
        ``f``'s relation.  The two agree exactly when the pairing is
        preserved.
        """
        if not (self.source.is_balanced and self.target.is_balanced):
            return None
        m = self.map
        on_f = {f: m[f] for f, _ in self.source.pairing}
        on_r = {f: self.target.paired_function(m[r]) for f, r in self.source.pairing}
        return on_f, on_r

    def to_json(self):
        return [[s, t] for s, t in self.mapping]

    def __str__(self):
        return "{" + ", ".join(f"{s}->{t}" for s, t in self.mapping) + "}"


def check_signature_hom(
    mapping: Mapping[str, str] | Iterable[tuple[str, str]],
    source: Signature,
    target: Signature,
) -> SignatureHom:
    """Validate a candidate symbol map and wrap it as a :class:`SignatureHom`."""
    m = dict(mapping)
    extra = set(m) - set(source.names)
    if extra:
        raise SignatureHomError(f"map mentions symbols outside the source: {sorted(extra)}")
    for sym in source.symbols:
        if sym.name not in m:
            raise SignatureHomError(f"map is not total: {sym.name!r} has no image")
        image = m[sym.name]
        if image not in target:
            raise SignatureHomError(f"{sym.name!r} maps to unknown symbol {image!r}")
        tsym = target.symbol(image)
        if tsym.kind != sym.kind:
            raise KindMismatch(f"{sym.kind} {sym.name!r} maps to {tsym.kind} {image!r}")
        if tsym.arity != sym.arity:
            raise ArityMismatch(
                f"{sym.name!r} has arity {sym.arity} but {image!r} has arity {tsym.arity}"
            )
    if source.is_balanced and target.is_balanced:
        for f, r in source.pairing:
            if target.paired_relation(m[f]) != m[r]:
                raise PairingNotPreserved(
                    f"pair ({f}, {r}) maps to ({m[f]}, {m[r]}), which is not a pair"
                )
    return SignatureHom(source, target, tuple((s, m[s]) for s in source.names))


def identity_hom(sig: Signature) -> SignatureHom:
    return SignatureHom(sig, sig, tuple((n, n) for n in sig.names))


def canonical_injection(sub: Signature, sup: Signature) -> SignatureHom:
    for sym in sub.symbols:
        if sym.name not in sup:
            raise NotASubsignature(f"{sym.name!r} is missing from the supersignature")
        if sup.symbol(sym.name) != sym:
            raise NotASubsignature(f"{sym.name!r} differs in kind or arity")
    return check_signature_hom({n: n for n in sub.names}, sub, sup)


def compose_signature_homs(alpha: SignatureHom, beta: SignatureHom) -> SignatureHom:
    """``beta`` after ``alpha``."""
    if alpha.target != beta.source:
        raise NotComposable("target of the first hom is not the source of the second")
    bm = beta.map
    return check_signature_hom(
        {s: bm[t] for s, t in alpha.mapping}, alpha.source, beta.target
    )


def restrict_hom(alpha: SignatureHom, sub: Signature) -> SignatureHom:
    if not is_subsignature(sub, alpha.source):
        raise NotASubsignature("restriction domain is not a subsignature of the source")
    m = alpha.map
    return check_signature_hom({n: m[n] for n in sub.names}, sub, alpha.target)


def corestrict_hom(alpha: SignatureHom, sub_target: Signature) -> SignatureHom:
    """Same symbol map, with the target narrowed to ``sub_target``."""
    return check_signature_hom(alpha.map, alpha.source, sub_target)


def enumerate_signature_homs(source: Signature, target: Signature) -> Iterator[SignatureHom]:
    """All valid (and, when both sides are balanced, pairing-preserving) homs.

    Yields in lexicographic order of the image table, where target symbols
    are ordered as declared.
    """
    paired = source.is_balanced and target.is_balanced
    free = [s for s in source.symbols if not (paired and s.kind == RELATION)]
    choices = []
    for sym in free:
        pool = target.functions if sym.kind == FUNCTION else target.relations
        opts = [t.name for t in pool if t.arity == sym.arity]
        if paired and sym.kind == FUNCTION:
            src_rel = source.symbol(source.paired_relation(sym.name))
            opts = [
                t for t in opts
                if target.symbol(target.paired_relation(t)).arity == src_rel.arity
            ]
        if not opts:
            return
        choices.append(opts)
    for images in itertools.product(*choices):
        m = dict(zip((s.name for s in free), images))
        if paired:
            for f, r in source.pairing:
                m[r] = target.paired_relation(m[f])
        try:
            yield check_signature_hom(m, source, target)
        except SignatureHomError:
            continue
