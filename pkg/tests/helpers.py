"""Seeded random generators shared across the test modules.

Everything takes an explicit random.Random so failures reproduce from the
seed alone.  Models are generated to satisfy the domain condition they
are asked for (including constant designation and function closure under
varying and cumulative domains), so they can be fed straight into
correspondence checks and the eval subcommand.
"""

import itertools
import random

from fml2hol import fml, kripke
from fml2hol.embedding import DomainCondition

INDIVIDUALS = ("a", "b", "c")
_VARS = ("X", "Y", "Z")


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_signature(r: random.Random) -> fml.Signature:
    predicates = {}
    for name in ("p", "q")[: r.randint(1, 2)]:
        predicates[name] = r.randint(0, 2)
    functions = {"g": 1} if r.random() < 0.5 else {}
    constants = ("c",) if r.random() < 0.5 else ()
    return fml.Signature(predicates, functions, constants)


def random_term(r: random.Random, sig: fml.Signature, scope, depth: int = 1) -> fml.Term:
    options = []
    if scope:
        options.extend(["var", "var"])
    if sig.constants:
        options.append("const")
    if sig.functions and depth > 0:
        options.append("fun")
    kind = r.choice(options)
    if kind == "var":
        return fml.Variable(r.choice(scope))
    if kind == "const":
        return fml.Constant(r.choice(sig.constants))
    name = r.choice(sorted(sig.functions))
    arity = sig.functions[name]
    return fml.FunctionApp(
        name, tuple(random_term(r, sig, scope, depth - 1) for _ in range(arity))
    )


def random_formula(r: random.Random, sig: fml.Signature, depth: int, scope=()) -> fml.Formula:
    groundable = bool(scope or sig.constants)
    usable = [(p, k) for p, k in sig.predicates.items() if k == 0 or groundable]

    def atom():
        name, arity = r.choice(usable)
        return fml.Atom(name, tuple(random_term(r, sig, scope) for _ in range(arity)))

    if depth <= 0 and usable:
        return atom()
    choices = []
    if usable:
        choices += ["atom"] * 3
    if depth > 0:
        choices += ["not", "and", "or", "implies", "box", "dia", "forall", "exists"]
    else:
        choices += ["forall", "exists"]
    kind = r.choice(choices)
    if kind == "atom":
        return atom()
    if kind == "not":
        return fml.Not(random_formula(r, sig, depth - 1, scope))
    if kind == "box":
        return fml.Box(random_formula(r, sig, depth - 1, scope))
    if kind == "dia":
        return fml.Dia(random_formula(r, sig, depth - 1, scope))
    if kind in ("and", "or", "implies"):
        cls = {"and": fml.And, "or": fml.Or, "implies": fml.Implies}[kind]
        return cls(
            random_formula(r, sig, depth - 1, scope),
            random_formula(r, sig, depth - 1, scope),
        )
    cls = fml.Forall if kind == "forall" else fml.Exists
    var = r.choice(_VARS)
    return cls(var, random_formula(r, sig, depth - 1, scope + (var,)))


def random_problem(r: random.Random, max_units: int = 3, depth: int = 3) -> fml.Problem:
    sig = random_signature(r)
    count = r.randint(1, max_units)
    units = []
    for i in range(count):
        if i == count - 1 and r.random() < 0.7:
            role = "conjecture"
        else:
            role = r.choice(("axiom", "hypothesis", "definition"))
        units.append(
            fml.AnnotatedFormula(f"u{i + 1}", role, random_formula(r, sig, r.randint(0, depth)))
        )
    return fml.Problem(tuple(units))


def random_model(
    r: random.Random,
    sig: fml.Signature,
    domain: DomainCondition,
    max_worlds: int = 3,
    max_individuals: int = 3,
) -> kripke.KripkeModel:
    n = r.randint(1, max_worlds)
    m = r.randint(1, max_individuals)
    worlds = tuple(f"w{i}" for i in range(1, n + 1))
    universe = INDIVIDUALS[:m]
    rel = frozenset((u, v) for u in worlds for v in worlds if r.random() < 0.5)

    if domain is DomainCondition.CONSTANT:
        dom = {w: frozenset(universe) for w in worlds}
    else:
        # one core individual exists everywhere, keeping domains nonempty
        # and giving constants and functions a safe denotation
        core = r.choice(universe)
        dom = {
            w: frozenset({core} | {x for x in universe if r.random() < 0.5})
            for w in worlds
        }
        if domain is DomainCondition.CUMULATIVE:
            changed = True
            while changed:
                changed = False
                for u, v in rel:
                    if not dom[u] <= dom[v]:
                        dom[v] = dom[v] | dom[u]
                        changed = True

    shared = frozenset(universe).intersection(*dom.values())
    consts = {}
    for name in sig.constants:
        pool = universe if domain is DomainCondition.CONSTANT else sorted(shared)
        consts[name] = r.choice(pool)

    funcs = {}
    for name, arity in sig.functions.items():
        for args in itertools.product(universe, repeat=arity):
            if domain is DomainCondition.CONSTANT:
                allowed = list(universe)
            else:
                containing = [dom[w] for w in worlds if set(args) <= dom[w]]
                if containing:
                    allowed = sorted(frozenset(universe).intersection(*containing))
                else:
                    allowed = list(universe)
            funcs[(name, args)] = r.choice(allowed)

    preds = {}
    for name, arity in sig.predicates.items():
        for w in worlds:
            ext = frozenset(
                t for t in itertools.product(universe, repeat=arity) if r.random() < 0.5
            )
            if ext:
                preds[(name, w)] = ext
    return kripke.KripkeModel(worlds, rel, universe, dom, consts, funcs, preds)
