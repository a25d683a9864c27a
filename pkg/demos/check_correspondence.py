"""
Checking the embedding against direct Kripke evaluation
========================================================

The point of the translation is that a modal formula holds in a Kripke
model exactly when its embedded HOL image evaluates to true over that
model.  Both sides are computable on finite models, so the claim can be
tested instead of trusted: evaluate the modal formula world by world,
evaluate the lifted HOL term at the same worlds, and compare.
"""

import random

from fml2hol import embedding, fml, hol, kripke, qmf
from fml2hol.embedding import DomainCondition, Logic, TranslationConfig

# a two-world model with a growing domain: b exists only at w2
model = kripke.parse_model("""
worlds: w1 w2
rel: w1>w2
universe: a b
dom w1: a
dom w2: a b
pred f @ w1: a
pred f @ w2: a
""")

formula = qmf.parse_formula(
    "( ! [X] : ( #box : ( f(X) ) ) ) => ( #box : ( ! [X] : ( f(X) ) ) )"
)
config = TranslationConfig(Logic.K, DomainCondition.VARYING)

# direct modal evaluation, world by world
for w in model.worlds:
    print(f"eval_fml at {w}: {kripke.eval_fml(model, w, formula)}")

# the embedded image: expand the connective definitions away, then
# evaluate the resulting lambda term over the same model
definitions = hol.Problem(embedding.connective_definitions(config))
lifted = hol.expand_definitions(definitions, embedding.embed_formula(formula, config))
valuation = kripke.eval_hol(model, lifted)
for w in model.worlds:
    print(f"eval_hol at {w}: {valuation(w)}")

# correspondence_check packages that comparison, quantified over worlds
print("correspondence:", kripke.correspondence_check(model, formula, config))
print()

# the equivalence is not an accident of one example; it survives random
# models, random closed formulas, and every logic/domain combination
rng = random.Random(2024)
signature = fml.Signature({"p": 1, "q": 2}, {"g": 1}, ("c",))
atoms = [
    qmf.parse_formula(text)
    for text in ("p(c)", "p(g(c))", "q(c,c)", "#dia : ( p(c) )")
]


def random_formula(depth):
    if depth == 0:
        return rng.choice(atoms)
    shapes = (
        lambda: fml.Not(random_formula(depth - 1)),
        lambda: fml.And(random_formula(depth - 1), random_formula(depth - 1)),
        lambda: fml.Implies(random_formula(depth - 1), random_formula(depth - 1)),
        lambda: fml.Box(random_formula(depth - 1)),
        lambda: fml.Forall("X", fml.Or(fml.Atom("p", (fml.Variable("X"),)),
                                       random_formula(depth - 1))),
    )
    return rng.choice(shapes)()


def random_model(domain):
    worlds = ("w1", "w2")
    universe = ("a", "b")
    if domain is DomainCondition.CONSTANT:
        dom = {w: frozenset(universe) for w in worlds}
    else:
        dom = {"w1": frozenset({"a"}), "w2": frozenset(universe)}
    return kripke.KripkeModel(
        worlds=worlds,
        rel=frozenset({("w1", "w2")} | ({("w1", "w1")} if rng.random() < 0.5 else set())),
        universe=universe,
        dom=dom,
        consts={"c": rng.choice(universe)},
        funcs={("g", (x,)): rng.choice(universe) for x in universe},
        preds={
            ("p", w): frozenset((x,) for x in universe if rng.random() < 0.5)
            for w in worlds
        } | {
            ("q", w): frozenset(
                (x, y) for x in universe for y in universe if rng.random() < 0.5
            )
            for w in worlds
        },
    )


checked = 0
for _ in range(300):
    domain = rng.choice(tuple(DomainCondition))
    cfg = TranslationConfig(rng.choice(tuple(Logic)), domain)
    assert kripke.correspondence_check(random_model(domain), random_formula(3), cfg)
    checked += 1
print(f"correspondence held on all {checked} random model/formula pairs")
