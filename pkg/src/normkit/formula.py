"""Universally closed, quantifier-free-matrix formulas.

A :class:`Formula` is a prefix of universally quantified variables over a
matrix built from equations and relation atoms with ``And``, ``Or``,
``Not`` and ``Implies``.  Every axiom shape the library needs
(associativity, neutrality, inverses, distributivity, and the order
axioms) fits in this fragment, so satisfaction over a finite structure is
plain enumeration of assignments.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .config import resolve_budget
from .errors import ArityError, BudgetExceeded, UninterpretedSymbol, UnknownSymbol


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Apply:
    symbol: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.symbol
        return f"{self.symbol}({', '.join(map(str, self.args))})"


Term = Union[Var, Apply]


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class RelAtom:
    symbol: str
    args: tuple


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


Matrix = Union[Equal, RelAtom, Not, And, Or, Implies]


@dataclass(frozen=True)
class Formula:
    variables: tuple[str, ...]
    matrix: Matrix

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("quantifier prefix repeats a variable")
        loose = free_variables(self.matrix) - set(self.variables)
        if loose:
            raise ValueError(f"unquantified variables {sorted(loose)}")

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Axiom:
    name: str
    formula: Formula


# traversal

def _term_vars(t, out):
    if isinstance(t, Var):
        out.add(t.name)
    else:
        for a in t.args:
            _term_vars(a, out)


def _term_symbols(t, out):
    if isinstance(t, Apply):
        out.add(t.symbol)
        for a in t.args:
            _term_symbols(a, out)


def _children(node):
    if isinstance(node, Not):
        return (node.body,)
    if isinstance(node, (And, Or, Implies)):
        return (node.left, node.right)
    return ()


def free_variables(node) -> set[str]:
    out: set[str] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Equal):
            _term_vars(n.left, out)
            _term_vars(n.right, out)
        elif isinstance(n, RelAtom):
            for a in n.args:
                _term_vars(a, out)
        else:
            stack.extend(_children(n))
    return out


def symbols_of(phi: Formula | Matrix) -> frozenset[str]:
    """Non-logical symbols occurring in ``phi`` (equality is logical)."""
    node = phi.matrix if isinstance(phi, Formula) else phi
    out: set[str] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Equal):
            _term_symbols(n.left, out)
            _term_symbols(n.right, out)
        elif isinstance(n, RelAtom):
            out.add(n.symbol)
            for a in n.args:
                _term_symbols(a, out)
        else:
            stack.extend(_children(n))
    return frozenset(out)


def check_formula(phi: Formula, signature) -> None:
    """Raise unless every symbol of ``phi`` is in ``signature`` with the right arity."""

    def term(t):
        if isinstance(t, Var):
            return
        if not signature.is_function(t.symbol):
            raise UnknownSymbol(f"{t.symbol!r} is not a function symbol")
        if signature.arity(t.symbol) != len(t.args):
            raise ArityError(
                f"{t.symbol!r} takes {signature.arity(t.symbol)} arguments, got {len(t.args)}"
            )
        for a in t.args:
            term(a)

    stack = [phi.matrix]
    while stack:
        n = stack.pop()
        if isinstance(n, Equal):
            term(n.left)
            term(n.right)
        elif isinstance(n, RelAtom):
            if not signature.is_relation(n.symbol):
                raise UnknownSymbol(f"{n.symbol!r} is not a relation symbol")
            if signature.arity(n.symbol) != len(n.args):
                raise ArityError(
                    f"{n.symbol!r} takes {signature.arity(n.symbol)} arguments, got {len(n.args)}"
                )
            for a in n.args:
                term(a)
        else:
            stack.extend(_children(n))


# renaming and canonical form

def _rename_term(t, ren):
    if isinstance(t, Var):
        return Var(ren.get(t.name, t.name))
    return Apply(t.symbol, tuple(_rename_term(a, ren) for a in t.args))


def _rename(node, ren):
    if isinstance(node, Equal):
        return Equal(_rename_term(node.left, ren), _rename_term(node.right, ren))
    if isinstance(node, RelAtom):
        return RelAtom(node.symbol, tuple(_rename_term(a, ren) for a in node.args))
    if isinstance(node, Not):
        return Not(_rename(node.body, ren))
    return type(node)(_rename(node.left, ren), _rename(node.right, ren))


def rename_variables(phi: Formula, ren: dict[str, str]) -> Formula:
    new_vars = tuple(ren.get(v, v) for v in phi.variables)
    return Formula(new_vars, _rename(phi.matrix, ren))


def _occurrence_order(node, out):
    if isinstance(node, Var):
        if node.name not in out:
            out.append(node.name)
    elif isinstance(node, Apply):
        for a in node.args:
            _occurrence_order(a, out)
    elif isinstance(node, Equal):
        _occurrence_order(node.left, out)
        _occurrence_order(node.right, out)
    elif isinstance(node, RelAtom):
        for a in node.args:
            _occurrence_order(a, out)
    else:
        for c in _children(node):
            _occurrence_order(c, out)


def canonical(phi: Formula) -> Formula:
    """Rename bound variables to ``_0, _1, ...`` by first occurrence.

    Two formulas are equal up to bound-variable renaming iff their
    canonical forms are equal.  Vacuous quantifiers are kept (after the
    used ones) so that the prefix length is part of the identity.
    """
    order: list[str] = []
    _occurrence_order(phi.matrix, order)
    order += [v for v in phi.variables if v not in order]
    ren = {v: f"_{i}" for i, v in enumerate(order)}
    out = rename_variables(phi, ren)
    return Formula(tuple(f"_{i}" for i in range(len(order))), out.matrix)


def alpha_equivalent(a: Formula, b: Formula) -> bool:
    return canonical(a) == canonical(b)


# evaluation

def eval_term(structure, t, env):
    """Carrier index of ``t`` under ``env`` (variable -> carrier index)."""
    if isinstance(t, Var):
        return env[t.name]
    args = tuple(eval_term(structure, a, env) for a in t.args)
    return structure.apply_index(t.symbol, args)


def eval_matrix(structure, node, env) -> bool:
    if isinstance(node, Equal):
        return eval_term(structure, node.left, env) == eval_term(structure, node.right, env)
    if isinstance(node, RelAtom):
        return structure.holds_index(
            node.symbol, tuple(eval_term(structure, a, env) for a in node.args)
        )
    if isinstance(node, Not):
        return not eval_matrix(structure, node.body, env)
    if isinstance(node, And):
        return eval_matrix(structure, node.left, env) and eval_matrix(structure, node.right, env)
    if isinstance(node, Or):
        return eval_matrix(structure, node.left, env) or eval_matrix(structure, node.right, env)
    if isinstance(node, Implies):
        return (not eval_matrix(structure, node.left, env)) or eval_matrix(
            structure, node.right, env
        )
    raise TypeError(f"not a formula node: {node!r}")


def find_counterexample(structure, phi: Formula, budget=None) -> dict | None:
    """First failing assignment (variable -> carrier label), or None."""
    missing = [s for s in symbols_of(phi) if s not in structure.signature]
    if missing:
        raise UninterpretedSymbol(f"symbols {sorted(missing)} are not interpreted")
    n = len(structure.carrier)
    k = len(phi.variables)
    limit = resolve_budget(budget)
    if n**k > limit:
        raise BudgetExceeded(f"{n}^{k} assignments exceed the budget of {limit}")
    for values in itertools.product(range(n), repeat=k):
        env = dict(zip(phi.variables, values))
        if not eval_matrix(structure, phi.matrix, env):
            return {v: structure.carrier[i] for v, i in env.items()}
    return None


def satisfies(structure, phi: Formula, budget=None) -> bool:
    return find_counterexample(structure, phi, budget) is None


# printing

_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}


def format_term(t) -> str:
    return str(t)


def format_matrix(node, parent=0) -> str:
    if isinstance(node, Equal):
        return f"{format_term(node.left)} = {format_term(node.right)}"
    if isinstance(node, RelAtom):
        return f"{node.symbol}({', '.join(map(format_term, node.args))})"
    prec = _PREC[type(node)]
    if isinstance(node, Not):
        s = "~" + format_matrix(node.body, prec)
    elif isinstance(node, Implies):
        # right associative
        s = f"{format_matrix(node.left, prec + 1)} -> {format_matrix(node.right, prec)}"
    else:
        op = " /\\ " if isinstance(node, And) else " \\/ "
        s = f"{format_matrix(node.left, prec)}{op}{format_matrix(node.right, prec + 1)}"
    return f"({s})" if prec < parent else s


def format_formula(phi: Formula) -> str:
    body = format_matrix(phi.matrix)
    if not phi.variables:
        return body
    return f"forall {', '.join(phi.variables)} . {body}"


# JSON

def term_to_json(t):
    if isinstance(t, Var):
        return {"var": t.name}
    return {"apply": t.symbol, "args": [term_to_json(a) for a in t.args]}


def matrix_to_json(node):
    if isinstance(node, Equal):
        return {"op": "equal", "left": term_to_json(node.left), "right": term_to_json(node.right)}
    if isinstance(node, RelAtom):
        return {"op": "rel", "symbol": node.symbol, "args": [term_to_json(a) for a in node.args]}
    if isinstance(node, Not):
        return {"op": "not", "body": matrix_to_json(node.body)}
    name = {And: "and", Or: "or", Implies: "implies"}[type(node)]
    return {"op": name, "left": matrix_to_json(node.left), "right": matrix_to_json(node.right)}


def formula_to_json(phi: Formula):
    return {"forall": list(phi.variables), "matrix": matrix_to_json(phi.matrix)}


# standard axiom shapes

def _f(name, *args):
    return Apply(name, tuple(args))


def associativity(op, xs=("x", "y", "z")) -> Formula:
    x, y, z = map(Var, xs)
    return Formula(xs, Equal(_f(op, _f(op, x, y), z), _f(op, x, _f(op, y, z))))


def neutrality(op, unit, xs=("x",)) -> Formula:
    (x,) = map(Var, xs)
    e = _f(unit)
    return Formula(xs, And(Equal(_f(op, x, e), x), Equal(_f(op, e, x), x)))


def inverses(op, inv, unit, xs=("x",)) -> Formula:
    (x,) = map(Var, xs)
    e = _f(unit)
    return Formula(
        xs, And(Equal(_f(op, x, _f(inv, x)), e), Equal(_f(op, _f(inv, x), x), e))
    )


def left_distributivity(mul, add, xs=("x", "y", "z")) -> Formula:
    x, y, z = map(Var, xs)
    return Formula(xs, Equal(_f(mul, x, _f(add, y, z)), _f(add, _f(mul, x, y), _f(mul, x, z))))


def right_distributivity(mul, add, xs=("x", "y", "z")) -> Formula:
    x, y, z = map(Var, xs)
    return Formula(xs, Equal(_f(mul, _f(add, x, y), z), _f(add, _f(mul, x, z), _f(mul, y, z))))


def reflexivity(rel, xs=("x",)) -> Formula:
    (x,) = map(Var, xs)
    return Formula(xs, RelAtom(rel, (x, x)))


def transitivity(rel, xs=("x", "y", "z")) -> Formula:
    x, y, z = map(Var, xs)
    return Formula(
        xs, Implies(And(RelAtom(rel, (x, y)), RelAtom(rel, (y, z))), RelAtom(rel, (x, z)))
    )


def antisymmetry(rel, xs=("x", "y")) -> Formula:
    x, y = map(Var, xs)
    return Formula(xs, Implies(And(RelAtom(rel, (x, y)), RelAtom(rel, (y, x))), Equal(x, y)))
