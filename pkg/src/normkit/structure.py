"""Finite structures over sets, relation checks, pivots and ``℘(P, Q)``.

Internally every table is indexed by carrier positions: a function symbol
of arity ``n`` is a flat tuple of length ``|A|**n`` in row-major order, a
relation symbol a frozenset of index tuples.  The public accessors speak
in carrier labels.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import NotAPreorder, NotBinary, StructureError
from .signature import Signature

EQUALITY = "equality"


def _flat(idx: Sequence[int], n: int) -> int:
    k = 0
    for i in idx:
        k = k * n + i
    return k


class FiniteStructure:
    """A finite carrier with one table per symbol of ``signature``.

    ``functions`` maps each function symbol to a callable on labels, a dict
    from label tuples (a bare label for constants is accepted too), or a
    flat sequence of labels in row-major order.  ``relations`` maps each
    relation symbol to an iterable of label tuples or the string
    ``"equality"``.
    """

    __slots__ = ("carrier", "signature", "_index", "_ftab", "_rtab", "_hash", "_mat")

    def __init__(
        self,
        carrier: Iterable[Hashable],
        signature: Signature,
        functions: Mapping[str, object] | None = None,
        relations: Mapping[str, object] | None = None,
    ):
        self.carrier = tuple(carrier)
        self.signature = signature
        self._index = {a: i for i, a in enumerate(self.carrier)}
        if len(self._index) != len(self.carrier):
            raise StructureError("carrier labels are not distinct")
        functions = dict(functions or {})
        relations = dict(relations or {})
        for name in list(functions) + list(relations):
            if name not in signature:
                raise StructureError(f"{name!r} is not in the signature")
        n = len(self.carrier)
        self._ftab = {}
        for sym in signature.functions:
            if sym.name not in functions:
                raise StructureError(f"function {sym.name!r} is not interpreted")
            self._ftab[sym.name] = self._build_function(sym.name, sym.arity, functions[sym.name], n)
        self._rtab = {}
        for sym in signature.relations:
            if sym.name not in relations:
                raise StructureError(f"relation {sym.name!r} is not interpreted")
            self._rtab[sym.name] = self._build_relation(sym.name, sym.arity, relations[sym.name])
        self._hash = None
        self._mat = {}

    def _build_function(self, name, arity, spec, n):
        out = []
        if callable(spec):
            for args in itertools.product(self.carrier, repeat=arity):
                out.append(self._label_index(name, spec(*args)))
            return tuple(out)
        if isinstance(spec, Mapping):
            table = dict(spec)
            if arity == 0 and () not in table and len(table) == 0:
                raise StructureError(f"constant {name!r} has no value")
            for args in itertools.product(self.carrier, repeat=arity):
                key = args
                if key not in table and arity == 1 and args[0] in table:
                    key = args[0]
                if key not in table:
                    raise StructureError(f"table of {name!r} is not total: missing {args}")
                out.append(self._label_index(name, table[key]))
            extra = len(table) - n**arity
            if extra > 0:
                raise StructureError(f"table of {name!r} has entries outside the carrier")
            return tuple(out)
        if arity == 0 and not isinstance(spec, (list, tuple)):
            if n == 0:
                raise StructureError(f"constant {name!r} cannot live in an empty carrier")
            return (self._label_index(name, spec),)
        seq = list(spec)
        if len(seq) != n**arity:
            raise StructureError(f"table of {name!r} has {len(seq)} entries, expected {n**arity}")
        return tuple(self._label_index(name, v) for v in seq)

    def _label_index(self, name, value):
        try:
            return self._index[value]
        except (KeyError, TypeError):
            raise StructureError(f"{name!r} takes value {value!r} outside the carrier") from None

    def _build_relation(self, name, arity, spec):
        if isinstance(spec, str):
            if spec != EQUALITY:
                raise StructureError(f"unknown relation shorthand {spec!r}")
            if arity != 2:
                raise StructureError(f"'equality' needs a binary relation, {name!r} has arity {arity}")
            return frozenset((i, i) for i in range(len(self.carrier)))
        out = set()
        for t in spec:
            t = tuple(t)
            if len(t) != arity:
                raise StructureError(f"tuple {t} has the wrong length for {name!r}")
            out.add(tuple(self._label_index(name, a) for a in t))
        return frozenset(out)

    # label-level access

    @property
    def size(self) -> int:
        return len(self.carrier)

    def index(self, label) -> int:
        return self._index[label]

    def apply(self, name, *args):
        return self.carrier[self.apply_index(name, tuple(self._index[a] for a in args))]

    def holds(self, name, *args) -> bool:
        return tuple(self._index[a] for a in args) in self._rtab[name]

    def function_table(self, name) -> dict:
        ar = self.signature.arity(name)
        tab = self._ftab[name]
        return {
            args: self.carrier[tab[k]]
            for k, args in enumerate(itertools.product(self.carrier, repeat=ar))
        }

    def relation(self, name) -> frozenset:
        return frozenset(tuple(self.carrier[i] for i in t) for t in self._rtab[name])

    # index-level access (hot paths)

    def apply_index(self, name, args: tuple) -> int:
        return self._ftab[name][_flat(args, len(self.carrier))]

    def holds_index(self, name, args: tuple) -> bool:
        return args in self._rtab[name]

    def table_index(self, name) -> tuple:
        return self._ftab[name]

    def relation_index(self, name) -> frozenset:
        return self._rtab[name]

    def matrix(self, name) -> list[list[bool]]:
        """Boolean adjacency matrix of a binary relation (cached)."""
        m = self._mat.get(name)
        if m is None:
            if self.signature.arity(name) != 2:
                raise NotBinary(f"{name!r} is not binary")
            n = len(self.carrier)
            m = [[False] * n for _ in range(n)]
            for i, j in self._rtab[name]:
                m[i][j] = True
            self._mat[name] = m
        return m

    def is_diagonal(self, name) -> bool:
        return self._rtab[name] == frozenset((i, i) for i in range(len(self.carrier)))

    # derived structures

    def replace(self, signature=None, functions=None, relations=None, carrier=None):
        """Copy with some tables swapped; tables default to this structure's."""
        sig = signature or self.signature
        fns = {s.name: self.function_table(s.name) for s in sig.functions if s.name in self._ftab}
        rels = {s.name: self.relation(s.name) for s in sig.relations if s.name in self._rtab}
        fns.update(functions or {})
        rels.update(relations or {})
        return FiniteStructure(self.carrier if carrier is None else carrier, sig, fns, rels)

    def restrict(self, sub: Signature) -> "FiniteStructure":
        return self.replace(signature=sub)

    # identity

    def _key(self):
        return (
            self.carrier,
            self.signature,
            tuple(sorted(self._ftab.items())),
            tuple(sorted(self._rtab.items(), key=lambda kv: kv[0])),
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteStructure):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"FiniteStructure(carrier={list(self.carrier)!r}, signature={self.signature})"

    def to_json(self):
        out = {"carrier": list(self.carrier), "functions": {}, "relations": {}}
        for s in self.signature.functions:
            out["functions"][s.name] = [
                [list(args), v] for args, v in self.function_table(s.name).items()
            ]
        for s in self.signature.relations:
            out["relations"][s.name] = [list(t) for t in self.sorted_relation(s.name)]
        return out

    def sorted_relation(self, name) -> list[tuple]:
        return [tuple(self.carrier[i] for i in t) for t in sorted(self._rtab[name])]


def diagonal(carrier) -> frozenset:
    return frozenset((a, a) for a in carrier)


def chain_order(elements: Sequence) -> frozenset:
    """Reflexive-transitive order of a listed chain ``e0 <= e1 <= ...``."""
    return frozenset(
        (elements[i], elements[j])
        for i in range(len(elements))
        for j in range(i, len(elements))
    )


def full_relation(carrier) -> frozenset:
    return frozenset(itertools.product(carrier, repeat=2))


def is_reflexive(carrier, rel) -> bool:
    return all((a, a) in rel for a in carrier)


def is_transitive(carrier, rel) -> bool:
    return all(
        (a, c) in rel
        for (a, b) in rel
        for (b2, c) in rel
        if b == b2
    )


def is_antisymmetric(carrier, rel) -> bool:
    return all(a == b for (a, b) in rel if (b, a) in rel)


def is_preorder(carrier, rel) -> bool:
    return is_reflexive(carrier, rel) and is_transitive(carrier, rel)


def is_partial_order(carrier, rel) -> bool:
    return is_preorder(carrier, rel) and is_antisymmetric(carrier, rel)


@dataclass(frozen=True)
class RelationFlags:
    reflexive: bool
    transitive: bool
    antisymmetric: bool
    # first failing instance for each property, in carrier labels
    reflexive_witness: tuple | None = None
    transitive_witness: tuple | None = None
    antisymmetric_witness: tuple | None = None

    @property
    def preorder(self) -> bool:
        return self.reflexive and self.transitive

    @property
    def partial_order(self) -> bool:
        return self.preorder and self.antisymmetric

    def to_json(self):
        return {
            "reflexive": self.reflexive,
            "transitive": self.transitive,
            "antisymmetric": self.antisymmetric,
            "preorder": self.preorder,
            "partial_order": self.partial_order,
            "witnesses": {
                "reflexive": _jsonable(self.reflexive_witness),
                "transitive": _jsonable(self.transitive_witness),
                "antisymmetric": _jsonable(self.antisymmetric_witness),
            },
        }


def _jsonable(t):
    return None if t is None else list(t)


def relation_flags(structure: FiniteStructure, name: str) -> RelationFlags:
    if structure.signature.arity(name) != 2:
        raise NotBinary(f"{name!r} is not binary")
    m = structure.matrix(name)
    lab = structure.carrier
    n = len(lab)
    refl_w = next(((lab[i],) for i in range(n) if not m[i][i]), None)
    trans_w = None
    for i in range(n):
        for j in range(n):
            if not m[i][j]:
                continue
            for k in range(n):
                if m[j][k] and not m[i][k]:
                    trans_w = (lab[i], lab[j], lab[k])
                    break
            if trans_w:
                break
        if trans_w:
            break
    anti_w = next(
        ((lab[i], lab[j]) for i in range(n) for j in range(n) if i != j and m[i][j] and m[j][i]),
        None,
    )
    return RelationFlags(
        refl_w is None, trans_w is None, anti_w is None, refl_w, trans_w, anti_w
    )


class _EmptyPivotal:
    """Verdict for a structure with no relation symbols (pivotal, no pivot)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY_PIVOTAL"

    def __bool__(self):
        return False


EMPTY_PIVOTAL = _EmptyPivotal()


def find_pivot(structure: FiniteStructure):
    """The pivot relation symbol, :data:`EMPTY_PIVOTAL`, or None.

    Among several qualifying symbols (necessarily with equal tables) the
    lexicographically least name wins.
    """
    rels = structure.signature.relations
    if not rels:
        return EMPTY_PIVOTAL
    if len({r.arity for r in rels}) != 1:
        return None
    tables = {r.name: structure.relation_index(r.name) for r in rels}
    for name in sorted(tables):
        if all(t <= tables[name] for t in tables.values()):
            return name
    return None


def is_pivotal(structure: FiniteStructure) -> bool:
    return find_pivot(structure) is not None


def algebraize(theory, structure: FiniteStructure):
    """Replace every relation by equality; report whether the theory still holds.

    Returns ``(algebraized_structure, still_models)``.
    """
    from .theory import models

    rels = {}
    for r in structure.signature.relations:
        if r.arity != 2:
            raise NotBinary(f"cannot algebraize non-binary relation {r.name!r}")
        rels[r.name] = EQUALITY
    alg = structure.replace(relations=rels)
    return alg, models(alg, theory).passed


# the pointwise preorder on maps P -> Q

def all_maps(domain: Sequence, codomain: Sequence) -> list[tuple]:
    """Every map domain -> codomain, as tuples of images in domain order."""
    return list(itertools.product(codomain, repeat=len(domain)))


@dataclass(frozen=True)
class PointwiseOrder:
    domain: tuple
    codomain: tuple
    maps: tuple            # each map is a tuple of images in domain order
    pairs: frozenset       # pairs of maps

    def related(self, f, g) -> bool:
        return (tuple(f), tuple(g)) in self.pairs

    def as_dict(self, f) -> dict:
        return dict(zip(self.domain, f))


def pointwise_order(domain: Sequence, codomain: Sequence, leq) -> PointwiseOrder:
    """``(f, g)`` related iff ``f(x) leq g(x)`` for every ``x`` in ``domain``."""
    codomain = tuple(codomain)
    leq = frozenset(leq)
    if not is_preorder(codomain, leq):
        raise NotAPreorder("the codomain relation is not a preorder")
    maps = tuple(all_maps(domain, codomain))
    pairs = frozenset(
        (f, g) for f in maps for g in maps
        if all((a, b) in leq for a, b in zip(f, g))
    )
    return PointwiseOrder(tuple(domain), codomain, maps, pairs)


def pointwise_preorder(domain: Sequence, target: FiniteStructure, relation: str) -> PointwiseOrder:
    if target.signature.arity(relation) != 2:
        raise NotBinary(f"{relation!r} is not binary")
    return pointwise_order(domain, target.carrier, target.relation(relation))


def compose_maps(g: tuple, f: tuple, middle: Sequence) -> tuple:
    """``g`` after ``f`` for tuple-encoded maps; ``middle`` is f's codomain order."""
    pos = {b: i for i, b in enumerate(middle)}
    return tuple(g[pos[b]] for b in f)


def enumerate_preorders(carrier: Sequence) -> list[frozenset]:
    """Every preorder on ``carrier`` (brute force over all binary relations)."""
    carrier = tuple(carrier)
    off_diag = [(a, b) for a in carrier for b in carrier if a != b]
    diag = [(a, a) for a in carrier]
    out = []
    for bits in itertools.product((False, True), repeat=len(off_diag)):
        rel = frozenset(diag + [p for p, keep in zip(off_diag, bits) if keep])
        if is_transitive(carrier, rel):
            out.append(rel)
    return out


def monotone_maps(p_carrier, p_leq, q_carrier, q_leq) -> list[tuple]:
    pos = {a: i for i, a in enumerate(p_carrier)}
    return [
        g for g in all_maps(p_carrier, q_carrier)
        if all((g[pos[a]], g[pos[b]]) in q_leq for a, b in p_leq)
    ]

