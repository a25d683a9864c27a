"""Simply typed higher-order terms over three base types.

``$o`` is the type of truth values, ``$i`` the type of possible worlds,
``mu`` the type of individuals.  Connectives and quantifiers are primitive
term constructors (not encoded constants); application is curried.  The
module provides type checking, capture-avoiding substitution, beta
normalization, alpha equality, and expansion of named definitions, which
is everything the embedding, the emitter, and the model oracle need.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce


class Type:
    """Base class for simple types."""


@dataclass(frozen=True)
class BaseType(Type):
    name: str


@dataclass(frozen=True)
class ArrowType(Type):
    arg: Type
    result: Type


TRUTH = BaseType("$o")
WORLD = BaseType("$i")
INDIV = BaseType("mu")

# lifted propositions: predicates on worlds
PROP = ArrowType(WORLD, TRUTH)


def fn(*types: Type) -> Type:
    """Right-associated function type: fn(a, b, c) is a > (b > c)."""
    if not types:
        raise ValueError("fn() needs at least one type")
    return reduce(lambda res, arg: ArrowType(arg, res), reversed(types[:-1]), types[-1])


def print_type(t: Type) -> str:
    if isinstance(t, BaseType):
        return t.name
    if isinstance(t, ArrowType):
        left = print_type(t.arg)
        if isinstance(t.arg, ArrowType):
            left = f"( {left} )"
        return f"{left} > {print_type(t.result)}"
    raise TypeError(f"not a type: {t!r}")


class HolError(Exception):
    """Base class for typing and definition errors."""


class TypeMismatchError(HolError):
    def __init__(self, term, expected, found):
        exp = print_type(expected) if isinstance(expected, Type) else str(expected)
        got = print_type(found) if isinstance(found, Type) else str(found)
        super().__init__(f"type mismatch at {term!r}: expected {exp}, found {got}")
        self.term = term
        self.expected = expected
        self.found = found


class UnboundSymbolError(HolError):
    def __init__(self, name: str):
        super().__init__(f"symbol '{name}' is not declared or defined")
        self.name = name


class CyclicDefinitionError(HolError):
    def __init__(self, name: str):
        super().__init__(f"definition of '{name}' is cyclic")
        self.name = name


class DuplicateSymbolError(HolError):
    def __init__(self, name: str):
        super().__init__(f"symbol '{name}' is declared or defined twice")
        self.name = name


class Term:
    """Base class for terms."""


@dataclass(frozen=True)
class Const(Term):
    name: str
    type: Type


@dataclass(frozen=True)
class Var(Term):
    name: str
    type: Type


@dataclass(frozen=True)
class Lambda(Term):
    var: str
    var_type: Type
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Forall(Term):
    var: str
    var_type: Type
    body: Term


@dataclass(frozen=True)
class Exists(Term):
    var: str
    var_type: Type
    body: Term


@dataclass(frozen=True)
class Not(Term):
    body: Term


@dataclass(frozen=True)
class And(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Or(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Implies(Term):
    left: Term
    right: Term


def apply(fun: Term, *args: Term) -> Term:
    """Left-associated application: apply(f, a, b) is (f @ a) @ b."""
    return reduce(App, args, fun)


_BINDERS = (Lambda, Forall, Exists)


def type_of(term: Term, context: dict[str, Type] | None = None) -> Type:
    """Compute the type of a term.

    Without a context, constants and free variables are trusted to carry
    their own types.  With a context, every constant and every free
    variable must be declared in it with a matching type; unknown names
    raise UnboundSymbolError.  Bound variables are always checked against
    their binder.
    """

    def check_name(t, annotated, bound):
        if t.name in bound:
            declared = bound[t.name]
        elif context is None:
            return annotated
        elif t.name in context:
            declared = context[t.name]
        else:
            raise UnboundSymbolError(t.name)
        if declared != annotated:
            raise TypeMismatchError(t, declared, annotated)
        return annotated

    def go(t: Term, bound: dict[str, Type]) -> Type:
        if isinstance(t, Var):
            return check_name(t, t.type, bound)
        if isinstance(t, Const):
            return check_name(t, t.type, {})
        if isinstance(t, Lambda):
            body_type = go(t.body, {**bound, t.var: t.var_type})
            return ArrowType(t.var_type, body_type)
        if isinstance(t, App):
            fun_type = go(t.fun, bound)
            arg_type = go(t.arg, bound)
            if not isinstance(fun_type, ArrowType):
                raise TypeMismatchError(t.fun, "a function type", fun_type)
            if fun_type.arg != arg_type:
                raise TypeMismatchError(t.arg, fun_type.arg, arg_type)
            return fun_type.result
        if isinstance(t, (Forall, Exists)):
            body_type = go(t.body, {**bound, t.var: t.var_type})
            if body_type != TRUTH:
                raise TypeMismatchError(t.body, TRUTH, body_type)
            return TRUTH
        if isinstance(t, Not):
            body_type = go(t.body, bound)
            if body_type != TRUTH:
                raise TypeMismatchError(t.body, TRUTH, body_type)
            return TRUTH
        if isinstance(t, (And, Or, Implies)):
            for side in (t.left, t.right):
                side_type = go(side, bound)
                if side_type != TRUTH:
                    raise TypeMismatchError(side, TRUTH, side_type)
            return TRUTH
        raise TypeError(f"not a term: {t!r}")

    return go(term, {})


def free_var_names(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Const):
        return set()
    if isinstance(term, App):
        return free_var_names(term.fun) | free_var_names(term.arg)
    if isinstance(term, _BINDERS):
        return free_var_names(term.body) - {term.var}
    if isinstance(term, Not):
        return free_var_names(term.body)
    if isinstance(term, (And, Or, Implies)):
        return free_var_names(term.left) | free_var_names(term.right)
    raise TypeError(f"not a term: {term!r}")


def _fresh(base: str, avoid: set[str]) -> str:
    if base not in avoid:
        return base
    i = 0
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def substitute(term: Term, mapping: dict[str, Term]) -> Term:
    """Replace free variables by terms, renaming binders to avoid capture."""
    if not mapping:
        return term
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if isinstance(term, Const):
        return term
    if isinstance(term, App):
        return App(substitute(term.fun, mapping), substitute(term.arg, mapping))
    if isinstance(term, Not):
        return Not(substitute(term.body, mapping))
    if isinstance(term, (And, Or, Implies)):
        return type(term)(
            substitute(term.left, mapping), substitute(term.right, mapping)
        )
    if isinstance(term, _BINDERS):
        live = {k: v for k, v in mapping.items() if k != term.var}
        live = {k: v for k, v in live.items() if k in free_var_names(term.body)}
        if not live:
            return term
        var, body = term.var, term.body
        value_frees = set().union(*(free_var_names(v) for v in live.values()))
        if var in value_frees:
            var = _fresh(var, value_frees | free_var_names(body) | set(live))
            body = substitute(body, {term.var: Var(var, term.var_type)})
        return type(term)(var, term.var_type, substitute(body, live))
    raise TypeError(f"not a term: {term!r}")


def beta_normalize(term: Term) -> Term:
    """Normal-order reduction to beta normal form (terminates: simply typed)."""
    if isinstance(term, App):
        fun = beta_normalize(term.fun)
        if isinstance(fun, Lambda):
            return beta_normalize(substitute(fun.body, {fun.var: term.arg}))
        return App(fun, beta_normalize(term.arg))
    if isinstance(term, _BINDERS):
        return type(term)(term.var, term.var_type, beta_normalize(term.body))
    if isinstance(term, Not):
        return Not(beta_normalize(term.body))
    if isinstance(term, (And, Or, Implies)):
        return type(term)(beta_normalize(term.left), beta_normalize(term.right))
    return term


def alpha_equal(a: Term, b: Term) -> bool:
    """Structural equality up to renaming of bound variables."""

    def go(x, y, bound_x, bound_y, depth):
        if type(x) is not type(y):
            return False
        if isinstance(x, Var):
            if x.type != y.type:
                return False
            return bound_x.get(x.name, x.name) == bound_y.get(y.name, y.name)
        if isinstance(x, Const):
            return x.name == y.name and x.type == y.type
        if isinstance(x, App):
            return go(x.fun, y.fun, bound_x, bound_y, depth) and go(
                x.arg, y.arg, bound_x, bound_y, depth
            )
        if isinstance(x, _BINDERS):
            if x.var_type != y.var_type:
                return False
            return go(
                x.body,
                y.body,
                {**bound_x, x.var: depth},
                {**bound_y, y.var: depth},
                depth + 1,
            )
        if isinstance(x, Not):
            return go(x.body, y.body, bound_x, bound_y, depth)
        if isinstance(x, (And, Or, Implies)):
            return go(x.left, y.left, bound_x, bound_y, depth) and go(
                x.right, y.right, bound_x, bound_y, depth
            )
        raise TypeError(f"not a term: {x!r}")

    return go(a, b, {}, {}, 0)


UNIT_KINDS = ("type_decl", "definition", "axiom", "hypothesis", "conjecture")


@dataclass(frozen=True)
class Unit:
    """One thf-level unit: a type declaration, a definition, or a formula."""

    name: str
    kind: str
    symbol: str | None = None
    type: Type | None = None
    term: Term | None = None

    def __post_init__(self):
        if self.kind not in UNIT_KINDS:
            raise ValueError(f"unknown unit kind {self.kind!r}")
        if self.kind == "type_decl":
            if self.symbol is None or self.type is None or self.term is not None:
                raise ValueError("type_decl units carry a symbol and a type")
        elif self.kind == "definition":
            if self.symbol is None or self.term is None or self.type is not None:
                raise ValueError("definition units carry a symbol and a term")
        else:
            if self.term is None or self.symbol is not None or self.type is not None:
                raise ValueError(f"{self.kind} units carry just a term")

    @staticmethod
    def type_decl(name: str, symbol: str, ty: Type) -> "Unit":
        return Unit(name, "type_decl", symbol=symbol, type=ty)

    @staticmethod
    def definition(name: str, symbol: str, body: Term) -> "Unit":
        return Unit(name, "definition", symbol=symbol, term=body)

    @staticmethod
    def formula(name: str, kind: str, term: Term) -> "Unit":
        return Unit(name, kind, term=term)


@dataclass(frozen=True)
class Problem:
    units: tuple[Unit, ...]

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))

    def conjecture(self) -> Unit | None:
        for unit in self.units:
            if unit.kind == "conjecture":
                return unit
        return None


def check_problem(problem: Problem) -> dict[str, Type]:
    """Type-check every unit against the symbols introduced before it.

    Formula payloads must have type $o; at most one conjecture is allowed.
    Returns the final symbol table.
    """
    context: dict[str, Type] = {}
    conjectures = []
    for unit in problem.units:
        if unit.kind == "type_decl":
            if unit.symbol in context:
                raise DuplicateSymbolError(unit.symbol)
            context[unit.symbol] = unit.type
        elif unit.kind == "definition":
            body_type = type_of(unit.term, context)
            if unit.symbol in context:
                raise DuplicateSymbolError(unit.symbol)
            context[unit.symbol] = body_type
        else:
            payload_type = type_of(unit.term, context)
            if payload_type != TRUTH:
                raise TypeMismatchError(unit.term, TRUTH, payload_type)
            if unit.kind == "conjecture":
                conjectures.append(unit.name)
    if len(conjectures) > 1:
        raise HolError("more than one conjecture: " + ", ".join(conjectures))
    return context


def expand_definitions(problem: Problem, term: Term) -> Term:
    """Inline every defined constant occurring in the term, then normalize.

    Definitions may reference each other but must be acyclic; a cycle
    raises CyclicDefinitionError.  The result contains no defined constant
    and is beta-normal.
    """
    defs = {u.symbol: u.term for u in problem.units if u.kind == "definition"}
    expanded: dict[str, Term] = {}
    visiting: list[str] = []

    def expand_name(name: str) -> Term:
        if name in expanded:
            return expanded[name]
        if name in visiting:
            raise CyclicDefinitionError(name)
        visiting.append(name)
        body = go(defs[name])
        visiting.pop()
        expanded[name] = body
        return body

    def go(t: Term) -> Term:
        if isinstance(t, Const):
            return expand_name(t.name) if t.name in defs else t
        if isinstance(t, Var):
            return t
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        if isinstance(t, _BINDERS):
            return type(t)(t.var, t.var_type, go(t.body))
        if isinstance(t, Not):
            return Not(go(t.body))
        if isinstance(t, (And, Or, Implies)):
            return type(t)(go(t.left), go(t.right))
        raise TypeError(f"not a term: {t!r}")

    return beta_normalize(go(term))
