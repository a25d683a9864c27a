"""First-order modal logic syntax trees and signature checks.

Terms are built from variables, constants, and rigid function symbols;
formulas add the propositional connectives, box/diamond, and quantifiers
over individuals.  Names follow the TPTP convention: variables start
uppercase, predicate/function/constant names start lowercase.  The three
symbol namespaces must stay disjoint and every symbol must be used with a
single arity; ``collect_signature`` enforces both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

ROLES = ("axiom", "hypothesis", "definition", "conjecture")

_LOWER_WORD = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
_UPPER_WORD = re.compile(r"[A-Z][a-zA-Z0-9_]*\Z")


class ProblemError(Exception):
    """A problem violates a well-formedness rule."""


class ArityClashError(ProblemError):
    def __init__(self, symbol: str, arity1: int, arity2: int):
        super().__init__(
            f"symbol '{symbol}' used with arity {arity1} and arity {arity2}"
        )
        self.symbol = symbol
        self.arities = (arity1, arity2)


class SortClashError(ProblemError):
    def __init__(self, symbol: str):
        super().__init__(
            f"symbol '{symbol}' used both as a predicate and as a term symbol"
        )
        self.symbol = symbol


class FreeVariableError(ProblemError):
    def __init__(self, unit: str, variable: str):
        super().__init__(f"unit '{unit}' contains a free variable: {variable}")
        self.unit = unit
        self.variable = variable


class MultipleConjecturesError(ProblemError):
    def __init__(self, names: tuple[str, ...]):
        super().__init__("more than one conjecture: " + ", ".join(names))
        self.names = names


class Term:
    """Base class for individual-denoting terms."""


@dataclass(frozen=True)
class Variable(Term):
    name: str

    def __post_init__(self):
        if not _UPPER_WORD.match(self.name):
            raise ValueError(f"variable names start uppercase: {self.name!r}")


@dataclass(frozen=True)
class Constant(Term):
    name: str

    def __post_init__(self):
        if not _LOWER_WORD.match(self.name):
            raise ValueError(f"constant names start lowercase: {self.name!r}")


@dataclass(frozen=True)
class FunctionApp(Term):
    name: str
    args: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not _LOWER_WORD.match(self.name):
            raise ValueError(f"function names start lowercase: {self.name!r}")
        if not self.args:
            raise ValueError("function applications take at least one argument")


class Formula:
    """Base class for modal formulas."""


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not _LOWER_WORD.match(self.pred):
            raise ValueError(f"predicate names start lowercase: {self.pred!r}")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    body: Formula


@dataclass(frozen=True)
class Dia(Formula):
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        if not _UPPER_WORD.match(self.var):
            raise ValueError(f"bound variable names start uppercase: {self.var!r}")


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        if not _UPPER_WORD.match(self.var):
            raise ValueError(f"bound variable names start uppercase: {self.var!r}")


@dataclass(frozen=True)
class AnnotatedFormula:
    name: str
    role: str
    formula: Formula

    def __post_init__(self):
        if not _LOWER_WORD.match(self.name):
            raise ValueError(f"unit names start lowercase: {self.name!r}")
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}, expected one of {ROLES}")


@dataclass(frozen=True)
class Problem:
    units: tuple[AnnotatedFormula, ...]

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))

    def conjecture(self) -> AnnotatedFormula | None:
        for unit in self.units:
            if unit.role == "conjecture":
                return unit
        return None


@dataclass
class Signature:
    """Symbols of a problem with their arities, in first-occurrence order."""

    predicates: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)
    constants: tuple[str, ...] = ()


def collect_signature(problem: Problem) -> Signature:
    """Scan all units left to right and record every symbol once.

    Raises ArityClashError if a symbol recurs with a different arity (a
    constant counts as arity 0) and SortClashError if a name is used both
    in predicate and in term position.
    """
    preds: dict[str, int] = {}
    funcs: dict[str, int] = {}
    consts: dict[str, None] = {}

    def scan_term(t: Term):
        if isinstance(t, Variable):
            return
        if isinstance(t, Constant):
            if t.name in preds:
                raise SortClashError(t.name)
            if t.name in funcs:
                raise ArityClashError(t.name, funcs[t.name], 0)
            consts.setdefault(t.name)
        elif isinstance(t, FunctionApp):
            if t.name in preds:
                raise SortClashError(t.name)
            if t.name in consts:
                raise ArityClashError(t.name, 0, len(t.args))
            arity = funcs.setdefault(t.name, len(t.args))
            if arity != len(t.args):
                raise ArityClashError(t.name, arity, len(t.args))
            for a in t.args:
                scan_term(a)
        else:
            raise TypeError(f"not a term: {t!r}")

    def scan(f: Formula):
        if isinstance(f, Atom):
            if f.pred in funcs or f.pred in consts:
                raise SortClashError(f.pred)
            arity = preds.setdefault(f.pred, len(f.args))
            if arity != len(f.args):
                raise ArityClashError(f.pred, arity, len(f.args))
            for a in f.args:
                scan_term(a)
        elif isinstance(f, Not):
            scan(f.body)
        elif isinstance(f, (And, Or, Implies)):
            scan(f.left)
            scan(f.right)
        elif isinstance(f, (Box, Dia)):
            scan(f.body)
        elif isinstance(f, (Forall, Exists)):
            scan(f.body)
        else:
            raise TypeError(f"not a formula: {f!r}")

    for unit in problem.units:
        scan(unit.formula)
    return Signature(preds, funcs, tuple(consts))


def free_vars(formula: Formula) -> set[str]:
    """Names of variables with a free occurrence in the formula."""
    out: set[str] = set()

    def scan_term(t: Term, bound: frozenset[str]):
        if isinstance(t, Variable):
            if t.name not in bound:
                out.add(t.name)
        elif isinstance(t, FunctionApp):
            for a in t.args:
                scan_term(a, bound)

    def scan(f: Formula, bound: frozenset[str]):
        if isinstance(f, Atom):
            for a in f.args:
                scan_term(a, bound)
        elif isinstance(f, Not):
            scan(f.body, bound)
        elif isinstance(f, (And, Or, Implies)):
            scan(f.left, bound)
            scan(f.right, bound)
        elif isinstance(f, (Box, Dia)):
            scan(f.body, bound)
        elif isinstance(f, (Forall, Exists)):
            scan(f.body, bound | {f.var})

    scan(formula, frozenset())
    return out


def validate_problem(problem: Problem) -> Signature:
    """Check closure, conjecture count, and signature consistency.

    Returns the collected signature on success so callers do not have to
    scan twice.
    """
    conjectures = [u.name for u in problem.units if u.role == "conjecture"]
    if len(conjectures) > 1:
        raise MultipleConjecturesError(tuple(conjectures))
    for unit in problem.units:
        loose = free_vars(unit.formula)
        if loose:
            raise FreeVariableError(unit.name, sorted(loose)[0])
    return collect_signature(problem)
