"""Finite Kripke models: evaluation, structure checks, bounded search.

A model carries finitely many worlds, an accessibility relation, a finite
universe of individuals, a per-world existence domain, rigid constant and
function interpretations, and world-relative predicate extensions.  On top
of that this module provides

- eval_fml: standard modal truth at a world (quantifiers range over the
  world's domain, boxes over accessible worlds),
- eval_hol: full finite-domain evaluation of embedded HOL terms, so both
  readings of a formula can be compared on the same model,
- check_frame / check_domains and their violation-listing variants,
- find_countermodel: bounded enumeration of models refuting a conjecture,
- correspondence_check: per-world agreement of the two readings,
- parse_model / print_model for the line-based fixture format.

Terms denote rigidly and may denote individuals outside dom(w); only
quantifiers are restricted to dom(w).  This matches the embedding, whose
existence guard appears at quantifiers only.
"""

from __future__ import annotations

import itertools
import re
import time
from dataclasses import dataclass, field

from . import embedding, fml, hol
from .embedding import DomainCondition, FrameProperty, TranslationConfig, frame_properties

_NAME = re.compile(r"\w+\Z")
_EMPTY: frozenset = frozenset()


class ModelError(ValueError):
    """A fixture cannot be parsed or a model fails its invariants."""


class UnboundVariableError(Exception):
    def __init__(self, name: str):
        super().__init__(f"variable '{name}' has no value")
        self.name = name


class UnknownSymbolError(Exception):
    def __init__(self, name: str):
        super().__init__(f"symbol '{name}' has no interpretation in the model")
        self.name = name


class NonFiniteTypeError(Exception):
    def __init__(self, type_text: str):
        super().__init__(f"cannot enumerate values of type {type_text}")
        self.type_text = type_text


class NoConjectureError(ValueError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    """Finite model; all collection fields are normalized on construction.

    preds maps (predicate, world) to a set of argument tuples; pairs with
    an empty extension are dropped so that equal models compare equal.
    consts and funcs are world-independent, and every function must be
    total over universe^n.
    """

    worlds: tuple[str, ...]
    rel: frozenset[tuple[str, str]]
    universe: tuple[str, ...]
    dom: dict[str, frozenset[str]]
    consts: dict[str, str] = field(default_factory=dict)
    funcs: dict[tuple[str, tuple[str, ...]], str] = field(default_factory=dict)
    preds: dict[tuple[str, str], frozenset[tuple[str, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "rel", frozenset(tuple(p) for p in self.rel))
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "dom", {w: frozenset(d) for w, d in self.dom.items()})
        object.__setattr__(
            self, "funcs", {(f, tuple(args)): v for (f, args), v in self.funcs.items()}
        )
        object.__setattr__(self, "consts", dict(self.consts))
        object.__setattr__(
            self,
            "preds",
            {k: frozenset(tuple(t) for t in v) for k, v in self.preds.items() if v},
        )
        self._validate()

    def _validate(self):
        if not self.worlds:
            raise ModelError("a model needs at least one world")
        if not self.universe:
            raise ModelError("a model needs at least one individual")
        for name in (*self.worlds, *self.universe):
            if not _NAME.match(name):
                raise ModelError(f"bad identifier {name!r}")
        if len(set(self.worlds)) != len(self.worlds):
            raise ModelError("duplicate world")
        if len(set(self.universe)) != len(self.universe):
            raise ModelError("duplicate individual")
        worlds = set(self.worlds)
        universe = set(self.universe)
        for u, v in self.rel:
            if u not in worlds or v not in worlds:
                raise ModelError(f"relation pair {u}>{v} mentions an unknown world")
        for w in self.worlds:
            if w not in self.dom:
                raise ModelError(f"missing domain for world {w}")
        for w, members in self.dom.items():
            if w not in worlds:
                raise ModelError(f"domain for unknown world {w}")
            if not members <= universe:
                raise ModelError(f"dom({w}) mentions individuals outside the universe")
        for name, val in self.consts.items():
            if not _NAME.match(name):
                raise ModelError(f"bad constant name {name!r}")
            if val not in universe:
                raise ModelError(f"constant {name} denotes unknown individual {val!r}")
        arities: dict[str, int] = {}
        for (name, args), val in self.funcs.items():
            if not _NAME.match(name):
                raise ModelError(f"bad function name {name!r}")
            if arities.setdefault(name, len(args)) != len(args):
                raise ModelError(f"function {name} used with two different arities")
            if any(a not in universe for a in args) or val not in universe:
                raise ModelError(f"function entry {name}{args!r} leaves the universe")
        for name, arity in arities.items():
            for combo in itertools.product(self.universe, repeat=arity):
                if (name, combo) not in self.funcs:
                    entry = f"{name}({','.join(combo)})"
                    raise ModelError(f"function {name} is not total: missing {entry}")
        pred_arities: dict[str, int] = {}
        for (name, w), ext in self.preds.items():
            if not _NAME.match(name):
                raise ModelError(f"bad predicate name {name!r}")
            if w not in worlds:
                raise ModelError(f"predicate {name} valued at unknown world {w}")
            for args in ext:
                if pred_arities.setdefault(name, len(args)) != len(args):
                    raise ModelError(f"predicate {name} used with two different arities")
                if any(a not in universe for a in args):
                    raise ModelError(f"predicate {name} holds of unknown individuals")


class _Candidate:
    """Duck-typed stand-in for KripkeModel used inside the search loop,

    skipping per-candidate validation; only the winner is promoted to a
    real (validated) KripkeModel.
    """

    __slots__ = ("worlds", "rel", "universe", "dom", "consts", "funcs", "preds")

    def __init__(self, worlds, rel, universe, dom, consts, funcs, preds):
        self.worlds = worlds
        self.rel = rel
        self.universe = universe
        self.dom = dom
        self.consts = consts
        self.funcs = funcs
        self.preds = preds


def _eval_term(model, term: fml.Term, assignment) -> str:
    if isinstance(term, fml.Variable):
        try:
            return assignment[term.name]
        except KeyError:
            raise UnboundVariableError(term.name) from None
    if isinstance(term, fml.Constant):
        try:
            return model.consts[term.name]
        except KeyError:
            raise UnknownSymbolError(term.name) from None
    if isinstance(term, fml.FunctionApp):
        args = tuple(_eval_term(model, a, assignment) for a in term.args)
        try:
            return model.funcs[(term.name, args)]
        except KeyError:
            raise UnknownSymbolError(term.name) from None
    raise TypeError(f"not a term: {term!r}")


def eval_fml(model, world: str, formula: fml.Formula, assignment=None) -> bool:
    """Truth of a formula at a world under an assignment of free variables.

    Boxes quantify over accessible worlds, individual quantifiers over
    dom(w) of the world of evaluation; atoms are evaluated over the full
    universe.
    """
    succ: dict[str, list[str]] = {w: [] for w in model.worlds}
    for u, v in model.rel:
        succ[u].append(v)

    def go(w: str, f: fml.Formula, a) -> bool:
        if isinstance(f, fml.Atom):
            args = tuple(_eval_term(model, t, a) for t in f.args)
            return args in model.preds.get((f.pred, w), _EMPTY)
        if isinstance(f, fml.Not):
            return not go(w, f.body, a)
        if isinstance(f, fml.And):
            return go(w, f.left, a) and go(w, f.right, a)
        if isinstance(f, fml.Or):
            return go(w, f.left, a) or go(w, f.right, a)
        if isinstance(f, fml.Implies):
            return not go(w, f.left, a) or go(w, f.right, a)
        if isinstance(f, fml.Box):
            return all(go(v, f.body, a) for v in succ[w])
        if isinstance(f, fml.Dia):
            return any(go(v, f.body, a) for v in succ[w])
        if isinstance(f, fml.Forall):
            members = model.dom[w]
            return all(
                go(w, f.body, {**a, f.var: x}) for x in model.universe if x in members
            )
        if isinstance(f, fml.Exists):
            members = model.dom[w]
            return any(
                go(w, f.body, {**a, f.var: x}) for x in model.universe if x in members
            )
        raise TypeError(f"not a formula: {f!r}")

    return go(world, formula, {} if assignment is None else assignment)


_REL_TYPE = hol.fn(hol.WORLD, hol.WORLD, hol.TRUTH)
_GUARD_TYPE = hol.fn(hol.INDIV, hol.WORLD, hol.TRUTH)
_TRUTH_VALUES = (False, True)


def _peel(t: hol.Type) -> tuple[list[hol.Type], hol.Type]:
    args = []
    while isinstance(t, hol.ArrowType):
        args.append(t.arg)
        t = t.result
    return args, t


def _curried(arity: int, finish):
    def build(acc):
        if len(acc) == arity:
            return finish(acc)
        return lambda v: build(acc + (v,))

    return build(())


def _const_value(model, const: hol.Const):
    if const.name == "exists_in_world" and const.type == _GUARD_TYPE:
        return _curried(2, lambda a: a[0] in model.dom[a[1]])
    if const.name.startswith("rel_") and const.type == _REL_TYPE:
        return _curried(2, lambda a: (a[0], a[1]) in model.rel)
    args, result = _peel(const.type)
    if const.type == hol.INDIV:
        try:
            return model.consts[const.name]
        except KeyError:
            raise UnknownSymbolError(const.name) from None
    if result == hol.INDIV and all(a == hol.INDIV for a in args):
        name = const.name

        def call_func(acc):
            try:
                return model.funcs[(name, acc)]
            except KeyError:
                raise UnknownSymbolError(name) from None

        return _curried(len(args), call_func)
    if (
        result == hol.TRUTH
        and args
        and args[-1] == hol.WORLD
        and all(a == hol.INDIV for a in args[:-1])
    ):
        name = const.name
        k = len(args) - 1
        return _curried(len(args), lambda a: a[:k] in model.preds.get((name, a[k]), _EMPTY))
    raise UnknownSymbolError(const.name)


def eval_hol(model, term: hol.Term, environment=None):
    """Evaluate a beta-normal, definition-free HOL term over the model.

    Mu quantifiers range over the universe, $i quantifiers over the
    worlds; lambdas become Python functions, so terms of function type
    evaluate to callables.  Quantification over a function type raises
    NonFiniteTypeError (the embedding never produces one after expansion).
    """

    def domain_of(t: hol.Type):
        if t == hol.TRUTH:
            return _TRUTH_VALUES
        if t == hol.WORLD:
            return model.worlds
        if t == hol.INDIV:
            return model.universe
        raise NonFiniteTypeError(hol.print_type(t))

    def go(t: hol.Term, env):
        if isinstance(t, hol.Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnboundVariableError(t.name) from None
        if isinstance(t, hol.Const):
            return _const_value(model, t)
        if isinstance(t, hol.App):
            return go(t.fun, env)(go(t.arg, env))
        if isinstance(t, hol.Lambda):
            return lambda v: go(t.body, {**env, t.var: v})
        if isinstance(t, hol.Forall):
            return all(go(t.body, {**env, t.var: v}) for v in domain_of(t.var_type))
        if isinstance(t, hol.Exists):
            return any(go(t.body, {**env, t.var: v}) for v in domain_of(t.var_type))
        if isinstance(t, hol.Not):
            return not go(t.body, env)
        if isinstance(t, hol.And):
            return go(t.left, env) and go(t.right, env)
        if isinstance(t, hol.Or):
            return go(t.left, env) or go(t.right, env)
        if isinstance(t, hol.Implies):
            return not go(t.left, env) or go(t.right, env)
        raise TypeError(f"not a term: {t!r}")

    return go(term, {} if environment is None else dict(environment))


def frame_violations(model, logic: embedding.Logic) -> tuple[str, ...]:
    """Violation messages, one per offending world or pair; empty if none."""
    rel = model.rel
    pairs = sorted(rel)
    msgs = []
    for prop in frame_properties(logic):
        if prop is FrameProperty.SERIAL:
            for w in model.worlds:
                if not any((w, v) in rel for v in model.worlds):
                    msgs.append(f"not serial: {w} has no successor")
        elif prop is FrameProperty.REFLEXIVE:
            for w in model.worlds:
                if (w, w) not in rel:
                    msgs.append(f"not reflexive: missing {w}>{w}")
        elif prop is FrameProperty.TRANSITIVE:
            for u, v in pairs:
                for v2, w in pairs:
                    if v2 == v and (u, w) not in rel:
                        msgs.append(f"not transitive: {u}>{v} and {v}>{w} but not {u}>{w}")
        elif prop is FrameProperty.SYMMETRIC:
            for u, v in pairs:
                if (v, u) not in rel:
                    msgs.append(f"not symmetric: {u}>{v} but not {v}>{u}")
    return tuple(msgs)


def check_frame(model, logic: embedding.Logic) -> bool:
    return not frame_violations(model, logic)


def domain_violations(model, domain: DomainCondition) -> tuple[str, ...]:
    """Violation messages for a domain condition; empty if the model fits.

    Constant requires dom(w) = universe everywhere.  Varying requires
    nonempty domains, constants that exist in every world, and function
    values that stay inside any domain their arguments come from.
    Cumulative adds monotonicity of domains along the relation.
    """
    msgs = []
    if domain is DomainCondition.CONSTANT:
        full = frozenset(model.universe)
        for w in model.worlds:
            if model.dom[w] != full:
                msgs.append(f"not constant: dom({w}) differs from the universe")
        return tuple(msgs)
    for w in model.worlds:
        if not model.dom[w]:
            msgs.append(f"non-emptiness violated: dom({w}) is empty")
    for name in sorted(model.consts):
        val = model.consts[name]
        for w in model.worlds:
            if val not in model.dom[w]:
                msgs.append(f"undesignated constant: {name} = {val} is not in dom({w})")
    for name, args in sorted(model.funcs):
        val = model.funcs[(name, args)]
        for w in model.worlds:
            if val not in model.dom[w] and all(a in model.dom[w] for a in args):
                entry = f"{name}({','.join(args)}) = {val}"
                msgs.append(f"unclosed function: {entry} leaves dom({w})")
    if domain is DomainCondition.CUMULATIVE:
        for u, v in sorted(model.rel):
            missing = sorted(model.dom[u] - model.dom[v])
            if missing:
                msgs.append(
                    f"not cumulative: {missing[0]} exists at {u} but not at {v} despite {u}>{v}"
                )
    return tuple(msgs)


def check_domains(model, domain: DomainCondition) -> bool:
    return not domain_violations(model, domain)


def correspondence_check(model, formula: fml.Formula, config: TranslationConfig) -> bool:
    """Do the modal and the embedded reading agree at every world?

    The formula must be closed.  Its embedding is expanded to a
    definition-free beta-normal term of type $i > $o and evaluated over
    the model; the result must equal eval_fml world by world.
    """
    infrastructure = hol.Problem(embedding.connective_definitions(config))
    expanded = hol.expand_definitions(infrastructure, embedding.embed_formula(formula, config))
    lifted = eval_hol(model, expanded)
    return all(eval_fml(model, w, formula) == lifted(w) for w in model.worlds)


@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int
    max_individuals: int
    time_budget: float | None = None

    def __post_init__(self):
        if self.max_worlds < 1 or self.max_individuals < 1:
            raise ValueError("search bounds must be at least 1")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    world: str


@dataclass(frozen=True)
class NoCountermodelWithinBounds:
    pass


@dataclass(frozen=True)
class Timeout:
    pass


SearchResult = Countermodel | NoCountermodelWithinBounds | Timeout


class _Deadline(Exception):
    pass


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise _Deadline


def _frame_ok(rel, worlds, props) -> bool:
    for prop in props:
        if prop is FrameProperty.SERIAL:
            if any(all((w, v) not in rel for v in worlds) for w in worlds):
                return False
        elif prop is FrameProperty.REFLEXIVE:
            if any((w, w) not in rel for w in worlds):
                return False
        elif prop is FrameProperty.TRANSITIVE:
            for u, v in rel:
                for w in worlds:
                    if (v, w) in rel and (u, w) not in rel:
                        return False
        elif prop is FrameProperty.SYMMETRIC:
            if any((v, u) not in rel for u, v in rel):
                return False
    return True


def _relations(worlds, props):
    pairs = [(u, v) for u in worlds for v in worlds]
    for mask in range(2 ** len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        if _frame_ok(rel, worlds, props):
            yield rel


def _refutes(model, assumptions, goal):
    """Witness world where the goal fails, if every assumption is valid."""
    for a in assumptions:
        for w in model.worlds:
            if not eval_fml(model, w, a):
                return None
    for w in model.worlds:
        if not eval_fml(model, w, goal):
            return w
    return None


def _domains(worlds, universe, rel, domain):
    if domain is DomainCondition.CONSTANT:
        yield {w: frozenset(universe) for w in worlds}
        return
    nonempty = [
        frozenset(c)
        for size in range(1, len(universe) + 1)
        for c in itertools.combinations(universe, size)
    ]
    for choice in itertools.product(nonempty, repeat=len(worlds)):
        dom = dict(zip(worlds, choice))
        if domain is DomainCondition.CUMULATIVE:
            if any(not dom[u] <= dom[v] for u, v in rel):
                continue
        yield dom


def _function_interps(functions, universe):
    per_func = []
    for name, arity in functions.items():
        args_list = list(itertools.product(universe, repeat=arity))
        options = []
        for values in itertools.product(universe, repeat=len(args_list)):
            options.append(dict(zip(((name, args) for args in args_list), values)))
        per_func.append(options)
    for chosen in itertools.product(*per_func):
        merged = {}
        for part in chosen:
            merged.update(part)
        yield merged


def _interpretation_ok(consts, funcs, dom, worlds, domain) -> bool:
    # mirrors the designation and closure clauses of check_domains
    if domain is DomainCondition.CONSTANT:
        return True
    for val in consts.values():
        if any(val not in dom[w] for w in worlds):
            return False
    for (_, args), val in funcs.items():
        for w in worlds:
            if val not in dom[w] and all(a in dom[w] for a in args):
                return False
    return True


def _search_generic(worlds, universe, sig, assumptions, goal, config, deadline):
    tuples_of = {
        p: list(itertools.product(universe, repeat=k)) for p, k in sig.predicates.items()
    }
    slots = [(p, w) for p in sig.predicates for w in worlds]
    mask_ranges = [range(2 ** len(tuples_of[p])) for p, _ in slots]
    for rel in _relations(worlds, frame_properties(config.logic)):
        _check_deadline(deadline)
        for dom in _domains(worlds, universe, rel, config.domain):
            for const_vals in itertools.product(universe, repeat=len(sig.constants)):
                consts = dict(zip(sig.constants, const_vals))
                for funcs in _function_interps(sig.functions, universe):
                    if not _interpretation_ok(consts, funcs, dom, worlds, config.domain):
                        continue
                    for masks in itertools.product(*mask_ranges):
                        _check_deadline(deadline)
                        preds = {}
                        for (p, w), mask in zip(slots, masks):
                            if mask:
                                tuples = tuples_of[p]
                                preds[(p, w)] = frozenset(
                                    tuples[i] for i in range(len(tuples)) if mask >> i & 1
                                )
                        candidate = _Candidate(worlds, rel, universe, dom, consts, funcs, preds)
                        witness = _refutes(candidate, assumptions, goal)
                        if witness is not None:
                            return candidate, witness
    return None


def _behaviors(worlds, rel, unary_count, domain):
    """Per-individual behavior: for each world, an existence bit plus one
    membership bit per unary predicate.  Enumeration order is fixed, so
    combinations_with_replacement over it is a canonical form for models
    that cannot distinguish individuals any other way."""
    bit_options = list(itertools.product(_TRUTH_VALUES, repeat=unary_count))
    if domain is DomainCondition.CONSTANT:
        exist_options = (True,)
    else:
        exist_options = _TRUTH_VALUES
    per_world = list(itertools.product(exist_options, bit_options))
    out = []
    for behavior in itertools.product(per_world, repeat=len(worlds)):
        if domain is DomainCondition.CUMULATIVE:
            index = {w: i for i, w in enumerate(worlds)}
            if any(
                behavior[index[u]][0] and not behavior[index[v]][0] for u, v in rel
            ):
                continue
        out.append(behavior)
    return out


def _search_profiles(worlds, universe, sig, assumptions, goal, config, deadline):
    unary = [p for p, k in sig.predicates.items() if k == 1]
    nullary = [p for p, k in sig.predicates.items() if k == 0]
    world_subsets = list(
        itertools.chain.from_iterable(
            itertools.combinations(worlds, size) for size in range(len(worlds) + 1)
        )
    )
    for rel in _relations(worlds, frame_properties(config.logic)):
        _check_deadline(deadline)
        behaviors = _behaviors(worlds, rel, len(unary), config.domain)
        for combo in itertools.combinations_with_replacement(behaviors, len(universe)):
            _check_deadline(deadline)
            if config.domain is not DomainCondition.CONSTANT:
                if any(
                    not any(b[i][0] for b in combo) for i in range(len(worlds))
                ):
                    continue
            dom = {
                w: frozenset(x for x, b in zip(universe, combo) if b[i][0])
                for i, w in enumerate(worlds)
            }
            base_preds = {}
            for pi, p in enumerate(unary):
                for i, w in enumerate(worlds):
                    ext = frozenset((x,) for x, b in zip(universe, combo) if b[i][1][pi])
                    if ext:
                        base_preds[(p, w)] = ext
            for truths in itertools.product(world_subsets, repeat=len(nullary)):
                preds = dict(base_preds)
                for p, true_at in zip(nullary, truths):
                    for w in true_at:
                        preds[(p, w)] = frozenset({()})
                candidate = _Candidate(worlds, rel, universe, dom, {}, {}, preds)
                witness = _refutes(candidate, assumptions, goal)
                if witness is not None:
                    return candidate, witness
    return None


def _verify_countermodel(model, witness, assumptions, goal, config):
    ok = (
        check_frame(model, config.logic)
        and check_domains(model, config.domain)
        and all(eval_fml(model, w, a) for a in assumptions for w in model.worlds)
        and not eval_fml(model, witness, goal)
    )
    if not ok:
        raise AssertionError("internal error: countermodel failed re-verification")


def find_countermodel(
    problem: fml.Problem, config: TranslationConfig, bounds: SearchBounds
) -> SearchResult:
    """Bounded search for a model refuting the problem's conjecture.

    Enumerates sizes smallest first (worlds before individuals), then
    relations satisfying the frame conditions, then domains, then
    interpretations; a hit must make every non-conjecture unit true at
    every world and the conjecture false somewhere.  Signatures without
    constants and functions whose predicates are at most unary are
    enumerated up to individual renaming.  Returns the first countermodel
    found, NoCountermodelWithinBounds after exhausting the bounds, or
    Timeout once the time budget runs out.
    """
    conjecture = problem.conjecture()
    if conjecture is None:
        raise NoConjectureError("the problem has no conjecture to refute")
    sig = fml.validate_problem(problem)
    assumptions = tuple(u.formula for u in problem.units if u.role != "conjecture")
    goal = conjecture.formula
    deadline = None if bounds.time_budget is None else time.monotonic() + bounds.time_budget
    profile_eligible = (
        not sig.constants
        and not sig.functions
        and all(k <= 1 for k in sig.predicates.values())
    )
    try:
        for n_worlds in range(1, bounds.max_worlds + 1):
            worlds = tuple(f"w{i}" for i in range(1, n_worlds + 1))
            for n_indiv in range(1, bounds.max_individuals + 1):
                universe = tuple(f"d{i}" for i in range(1, n_indiv + 1))
                search = _search_profiles if profile_eligible else _search_generic
                found = search(worlds, universe, sig, assumptions, goal, config, deadline)
                if found is not None:
                    candidate, witness = found
                    model = KripkeModel(
                        candidate.worlds,
                        candidate.rel,
                        candidate.universe,
                        candidate.dom,
                        candidate.consts,
                        candidate.funcs,
                        candidate.preds,
                    )
                    _verify_countermodel(model, witness, assumptions, goal, config)
                    return Countermodel(model, witness)
    except _Deadline:
        return Timeout()
    return NoCountermodelWithinBounds()


_CONST_LINE = re.compile(r"const\s+(\w+)\s*=\s*(\w+)\Z")
_FUN_LINE = re.compile(r"fun\s+(\w+)\(([^()]*)\)\s*=\s*(\w+)\Z")
_PRED_LINE = re.compile(r"pred\s+(\w+)\s*@\s*(\w+)\s*:(.*)\Z")


def parse_model(text: str) -> KripkeModel:
    """Read the line-based fixture format.

    Lines: ``worlds: w1 w2``, ``rel: w1>w2 w2>w2``, ``universe: a b``,
    ``dom w1: a``, ``const c = a``, ``fun g(a) = b``, ``pred f @ w1: a``;
    ``#`` starts a comment.  Binary and longer predicate entries separate
    tuple components with commas (``pred r @ w1: a,b``); ``()`` marks a
    nullary predicate as true.  Worlds without a dom line default to the
    full universe.
    """
    worlds = None
    universe = None
    rel: set[tuple[str, str]] = set()
    dom: dict[str, frozenset[str]] = {}
    consts: dict[str, str] = {}
    funcs: dict[tuple[str, tuple[str, ...]], str] = {}
    preds: dict[tuple[str, str], set[tuple[str, ...]]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def fail(msg: str):
            raise ModelError(f"line {lineno}: {msg}")

        if line.startswith("worlds:"):
            if worlds is not None:
                fail("worlds line given twice")
            worlds = tuple(line[len("worlds:"):].split())
        elif line.startswith("universe:"):
            if universe is not None:
                fail("universe line given twice")
            universe = tuple(line[len("universe:"):].split())
        elif line.startswith("rel:"):
            for entry in line[len("rel:"):].split():
                if entry.count(">") != 1:
                    fail(f"bad relation entry {entry!r} (expected w>v)")
                u, _, v = entry.partition(">")
                rel.add((u, v))
        elif line.startswith("dom "):
            head, sep, rest = line.partition(":")
            world = head[len("dom "):].strip()
            if not sep or not world:
                fail("bad dom line (expected 'dom <world>: members')")
            if world in dom:
                fail(f"dom {world} given twice")
            dom[world] = frozenset(rest.split())
        elif line.startswith("const "):
            m = _CONST_LINE.match(line)
            if not m:
                fail("bad const line (expected 'const <name> = <individual>')")
            name, val = m.groups()
            if name in consts:
                fail(f"const {name} given twice")
            consts[name] = val
        elif line.startswith("fun "):
            m = _FUN_LINE.match(line)
            if not m:
                fail("bad fun line (expected 'fun <name>(<args>) = <individual>')")
            name, inner, val = m.groups()
            args = tuple(a.strip() for a in inner.split(",")) if inner.strip() else ()
            if any(not _NAME.match(a) for a in args):
                fail(f"bad argument list {inner!r}")
            if (name, args) in funcs:
                fail(f"fun {name}({inner}) given twice")
            funcs[(name, args)] = val
        elif line.startswith("pred "):
            m = _PRED_LINE.match(line)
            if not m:
                fail("bad pred line (expected 'pred <name> @ <world>: entries')")
            name, world, rest = m.groups()
            ext = preds.setdefault((name, world), set())
            for item in rest.split():
                if item == "()":
                    ext.add(())
                    continue
                parts = tuple(item.split(","))
                if any(not _NAME.match(p) for p in parts):
                    fail(f"bad predicate entry {item!r}")
                ext.add(parts)
        else:
            fail(f"unrecognized line {line!r}")
    if worlds is None:
        raise ModelError("missing worlds line")
    if universe is None:
        raise ModelError("missing universe line")
    for w in worlds:
        dom.setdefault(w, frozenset(universe))
    return KripkeModel(
        worlds,
        frozenset(rel),
        universe,
        dom,
        consts,
        funcs,
        {k: frozenset(v) for k, v in preds.items()},
    )


def print_model(model: KripkeModel) -> str:
    """Render in the fixture format; parse_model(print_model(m)) == m."""
    windex = {w: i for i, w in enumerate(model.worlds)}
    uindex = {x: i for i, x in enumerate(model.universe)}
    lines = [f"worlds: {' '.join(model.worlds)}"]
    if model.rel:
        pairs = sorted(model.rel, key=lambda p: (windex[p[0]], windex[p[1]]))
        lines.append("rel: " + " ".join(f"{u}>{v}" for u, v in pairs))
    lines.append(f"universe: {' '.join(model.universe)}")
    for w in model.worlds:
        members = " ".join(x for x in model.universe if x in model.dom[w])
        lines.append(f"dom {w}: {members}".rstrip())
    for name in sorted(model.consts):
        lines.append(f"const {name} = {model.consts[name]}")
    for name, args in sorted(
        model.funcs, key=lambda k: (k[0], tuple(uindex[a] for a in k[1]))
    ):
        lines.append(f"fun {name}({','.join(args)}) = {model.funcs[(name, args)]}")
    for name, w in sorted(model.preds, key=lambda k: (k[0], windex[k[1]])):
        ext = sorted(model.preds[(name, w)], key=lambda t: tuple(uindex[a] for a in t))
        items = " ".join("()" if t == () else ",".join(t) for t in ext)
        lines.append(f"pred {name} @ {w}: {items}".rstrip())
    return "\n".join(lines) + "\n"
