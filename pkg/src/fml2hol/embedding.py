"""Embedding of modal problems into classical higher-order logic.

A modal formula becomes a predicate on worlds (type ``$i > $o``): the
connectives are lifted pointwise, box quantifies over accessible worlds
through an explicit relation constant ``rel_<logic>``, and the individual
quantifiers become second-order constants ``mforall_ind``/``mexists_ind``.
Validity is truth at every world (``mvalid``).  Each logic contributes
frame axioms for its relation (serial, reflexive, transitive, symmetric as
appropriate); non-constant domain conditions guard the quantifiers with an
``exists_in_world`` predicate and add domain axioms.  The output is an
ordered unit list ready for the thf emitter: infrastructure first, then
user signature declarations, then the user formulas wrapped in ``mvalid``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import reduce

from . import fml, hol
from .hol import (
    INDIV,
    PROP,
    TRUTH,
    WORLD,
    And,
    App,
    Const,
    Exists,
    Forall,
    Implies,
    Lambda,
    Not,
    Or,
    Unit,
    Var,
    apply,
    fn,
)


class Logic(Enum):
    K = "k"
    K4 = "k4"
    D = "d"
    D4 = "d4"
    T = "t"
    S4 = "s4"
    S5 = "s5"

    @property
    def tag(self) -> str:
        return self.value


class DomainCondition(Enum):
    CONSTANT = "const"
    VARYING = "vary"
    CUMULATIVE = "cumul"

    @property
    def tag(self) -> str:
        return self.value


class FrameProperty(Enum):
    SERIAL = "mserial"
    REFLEXIVE = "mreflexive"
    TRANSITIVE = "mtransitive"
    SYMMETRIC = "msymmetric"

    @property
    def symbol(self) -> str:
        return self.value


_FRAME_PROPERTIES: dict[Logic, tuple[FrameProperty, ...]] = {
    Logic.K: (),
    Logic.K4: (FrameProperty.TRANSITIVE,),
    Logic.D: (FrameProperty.SERIAL,),
    Logic.D4: (FrameProperty.SERIAL, FrameProperty.TRANSITIVE),
    Logic.T: (FrameProperty.REFLEXIVE,),
    Logic.S4: (FrameProperty.REFLEXIVE, FrameProperty.TRANSITIVE),
    Logic.S5: (
        FrameProperty.REFLEXIVE,
        FrameProperty.TRANSITIVE,
        FrameProperty.SYMMETRIC,
    ),
}


def frame_properties(logic: Logic) -> tuple[FrameProperty, ...]:
    return _FRAME_PROPERTIES[logic]


def parse_logic(token: str) -> Logic:
    try:
        return Logic(token.lower())
    except ValueError:
        raise ValueError(f"unknown logic: {token}") from None


def parse_domain(token: str) -> DomainCondition:
    try:
        return DomainCondition(token.lower())
    except ValueError:
        raise ValueError(f"unknown domain condition: {token}") from None


@dataclass(frozen=True)
class TranslationConfig:
    logic: Logic
    domain: DomainCondition

    @property
    def name(self) -> str:
        return f"{self.logic.tag}:{self.domain.tag}"

    @property
    def guarded(self) -> bool:
        return self.domain is not DomainCondition.CONSTANT

    @property
    def rel_name(self) -> str:
        return f"rel_{self.logic.tag}"

    @property
    def box_name(self) -> str:
        return f"mbox_{self.logic.tag}"

    @property
    def dia_name(self) -> str:
        return f"mdia_{self.logic.tag}"


class EmbeddingError(Exception):
    """A user name collides with the embedding's reserved vocabulary."""


# fixed types of the infrastructure symbols
REL_TYPE = fn(WORLD, WORLD, TRUTH)
GUARD_TYPE = fn(INDIV, WORLD, TRUTH)
_IND_PRED = fn(INDIV, WORLD, TRUTH)  # argument type of the lifted quantifiers

MVALID = Const("mvalid", fn(PROP, TRUTH))
MNOT = Const("mnot", fn(PROP, PROP))
MOR = Const("mor", fn(PROP, PROP, PROP))
MAND = Const("mand", fn(PROP, PROP, PROP))
MIMPLIES = Const("mimplies", fn(PROP, PROP, PROP))
MFORALL_IND = Const("mforall_ind", fn(_IND_PRED, PROP))
MEXISTS_IND = Const("mexists_ind", fn(_IND_PRED, PROP))
EXISTS_IN_WORLD = Const("exists_in_world", GUARD_TYPE)


def box_const(logic: Logic) -> Const:
    return Const(f"mbox_{logic.tag}", fn(PROP, PROP))


def dia_const(logic: Logic) -> Const:
    return Const(f"mdia_{logic.tag}", fn(PROP, PROP))


def rel_const(logic: Logic) -> Const:
    return Const(f"rel_{logic.tag}", REL_TYPE)


def property_const(prop: FrameProperty) -> Const:
    return Const(prop.symbol, fn(REL_TYPE, TRUTH))


def pred_type(arity: int) -> hol.Type:
    return fn(*([INDIV] * arity), PROP) if arity else PROP


def func_type(arity: int) -> hol.Type:
    return fn(*([INDIV] * arity), INDIV)


def _def(symbol: str, body: hol.Term) -> Unit:
    return Unit.definition(symbol, symbol, body)


def connective_definitions(config: TranslationConfig) -> tuple[Unit, ...]:
    """Declarations and definitions of the lifted vocabulary, in an order
    where every symbol is introduced before its first use."""
    rel = rel_const(config.logic)
    phi, psi = Var("Phi", PROP), Var("Psi", PROP)
    phi_ind = Var("Phi", _IND_PRED)
    w, v = Var("W", WORLD), Var("V", WORLD)
    x = Var("X", INDIV)
    r = Var("R", REL_TYPE)
    u = Var("U", WORLD)

    units = [Unit.type_decl(f"{rel.name}_type", rel.name, REL_TYPE)]
    if config.guarded:
        units.append(
            Unit.type_decl("exists_in_world_type", "exists_in_world", GUARD_TYPE)
        )

    units.append(
        _def("mvalid", Lambda("Phi", PROP, Forall("W", WORLD, App(phi, w))))
    )
    units.append(
        _def(
            "mnot",
            Lambda("Phi", PROP, Lambda("W", WORLD, Not(App(phi, w)))),
        )
    )
    units.append(
        _def(
            "mor",
            Lambda(
                "Phi",
                PROP,
                Lambda(
                    "Psi",
                    PROP,
                    Lambda("W", WORLD, Or(App(phi, w), App(psi, w))),
                ),
            ),
        )
    )
    units.append(
        _def(
            "mand",
            Lambda(
                "Phi",
                PROP,
                Lambda(
                    "Psi",
                    PROP,
                    apply(MNOT, apply(MOR, apply(MNOT, phi), apply(MNOT, psi))),
                ),
            ),
        )
    )
    units.append(
        _def(
            "mimplies",
            Lambda(
                "Phi",
                PROP,
                Lambda("Psi", PROP, apply(MOR, apply(MNOT, phi), psi)),
            ),
        )
    )
    units.append(
        _def(
            config.box_name,
            Lambda(
                "Phi",
                PROP,
                Lambda(
                    "W",
                    WORLD,
                    Forall(
                        "V",
                        WORLD,
                        Or(Not(apply(rel, w, v)), App(phi, v)),
                    ),
                ),
            ),
        )
    )
    units.append(
        _def(
            config.dia_name,
            Lambda(
                "Phi",
                PROP,
                apply(MNOT, apply(box_const(config.logic), apply(MNOT, phi))),
            ),
        )
    )
    if config.guarded:
        forall_body = Forall(
            "X",
            INDIV,
            Implies(apply(EXISTS_IN_WORLD, x, w), apply(phi_ind, x, w)),
        )
    else:
        forall_body = Forall("X", INDIV, apply(phi_ind, x, w))
    units.append(
        _def(
            "mforall_ind",
            Lambda("Phi", _IND_PRED, Lambda("W", WORLD, forall_body)),
        )
    )
    units.append(
        _def(
            "mexists_ind",
            Lambda(
                "Phi",
                _IND_PRED,
                apply(
                    MNOT,
                    apply(
                        MFORALL_IND,
                        Lambda("X", INDIV, apply(MNOT, App(phi_ind, x))),
                    ),
                ),
            ),
        )
    )

    property_bodies = {
        FrameProperty.SERIAL: Lambda(
            "R",
            REL_TYPE,
            Forall("W", WORLD, Exists("V", WORLD, apply(r, w, v))),
        ),
        FrameProperty.REFLEXIVE: Lambda(
            "R", REL_TYPE, Forall("W", WORLD, apply(r, w, w))
        ),
        FrameProperty.TRANSITIVE: Lambda(
            "R",
            REL_TYPE,
            Forall(
                "U",
                WORLD,
                Forall(
                    "V",
                    WORLD,
                    Forall(
                        "W",
                        WORLD,
                        Implies(
                            And(apply(r, u, v), apply(r, v, w)),
                            apply(r, u, w),
                        ),
                    ),
                ),
            ),
        ),
        FrameProperty.SYMMETRIC: Lambda(
            "R",
            REL_TYPE,
            Forall(
                "U",
                WORLD,
                Forall(
                    "V", WORLD, Implies(apply(r, u, v), apply(r, v, u))
                ),
            ),
        ),
    }
    for prop in frame_properties(config.logic):
        units.append(_def(prop.symbol, property_bodies[prop]))
    return tuple(units)


def frame_axioms(config: TranslationConfig) -> tuple[Unit, ...]:
    rel = rel_const(config.logic)
    return tuple(
        Unit.formula(f"a{i}", "axiom", apply(property_const(prop), rel))
        for i, prop in enumerate(frame_properties(config.logic), start=1)
    )


def domain_axioms(
    config: TranslationConfig, signature: fml.Signature
) -> tuple[Unit, ...]:
    """Axioms tying exists_in_world to the signature and, for cumulative
    domains, to the accessibility relation.  Empty for constant domains."""
    if not config.guarded:
        return ()
    w, v = Var("W", WORLD), Var("V", WORLD)
    x = Var("X", INDIV)
    units = [
        Unit.formula(
            "nonempty_ax",
            "axiom",
            Forall(
                "V",
                WORLD,
                Exists("X", INDIV, apply(EXISTS_IN_WORLD, x, v)),
            ),
        )
    ]
    for c in signature.constants:
        units.append(
            Unit.formula(
                f"designation_{c}",
                "axiom",
                Forall(
                    "W",
                    WORLD,
                    apply(EXISTS_IN_WORLD, Const(c, INDIV), w),
                ),
            )
        )
    for f, arity in signature.functions.items():
        args = [Var(f"X{i}", INDIV) for i in range(1, arity + 1)]
        guards = [apply(EXISTS_IN_WORLD, a, w) for a in args]
        image = apply(Const(f, func_type(arity)), *args)
        body = Implies(reduce(And, guards), apply(EXISTS_IN_WORLD, image, w))
        for a in reversed(args):
            body = Forall(a.name, INDIV, body)
        units.append(
            Unit.formula(f"closure_{f}", "axiom", Forall("W", WORLD, body))
        )
    if config.domain is DomainCondition.CUMULATIVE:
        rel = rel_const(config.logic)
        units.append(
            Unit.formula(
                "cumulative_ax",
                "axiom",
                Forall(
                    "X",
                    INDIV,
                    Forall(
                        "V",
                        WORLD,
                        Forall(
                            "W",
                            WORLD,
                            Implies(
                                And(
                                    apply(EXISTS_IN_WORLD, x, v),
                                    apply(rel, v, w),
                                ),
                                apply(EXISTS_IN_WORLD, x, w),
                            ),
                        ),
                    ),
                ),
            )
        )
    return tuple(units)


def embed_term(t: fml.Term) -> hol.Term:
    if isinstance(t, fml.Variable):
        return Var(t.name, INDIV)
    if isinstance(t, fml.Constant):
        return Const(t.name, INDIV)
    if isinstance(t, fml.FunctionApp):
        head = Const(t.name, func_type(len(t.args)))
        return apply(head, *(embed_term(a) for a in t.args))
    raise TypeError(f"not a term: {t!r}")


def embed_formula(formula: fml.Formula, config: TranslationConfig) -> hol.Term:
    """Map a closed modal formula to a term of type $i > $o."""
    if isinstance(formula, fml.Atom):
        head = Const(formula.pred, pred_type(len(formula.args)))
        return apply(head, *(embed_term(a) for a in formula.args))
    if isinstance(formula, fml.Not):
        return apply(MNOT, embed_formula(formula.body, config))
    if isinstance(formula, fml.And):
        return apply(
            MAND,
            embed_formula(formula.left, config),
            embed_formula(formula.right, config),
        )
    if isinstance(formula, fml.Or):
        return apply(
            MOR,
            embed_formula(formula.left, config),
            embed_formula(formula.right, config),
        )
    if isinstance(formula, fml.Implies):
        return apply(
            MIMPLIES,
            embed_formula(formula.left, config),
            embed_formula(formula.right, config),
        )
    if isinstance(formula, fml.Box):
        return apply(box_const(config.logic), embed_formula(formula.body, config))
    if isinstance(formula, fml.Dia):
        return apply(dia_const(config.logic), embed_formula(formula.body, config))
    if isinstance(formula, fml.Forall):
        return apply(
            MFORALL_IND,
            Lambda(formula.var, INDIV, embed_formula(formula.body, config)),
        )
    if isinstance(formula, fml.Exists):
        return apply(
            MEXISTS_IND,
            Lambda(formula.var, INDIV, embed_formula(formula.body, config)),
        )
    raise TypeError(f"not a formula: {formula!r}")


_RESERVED_SYMBOL = re.compile(
    r"(mvalid|mnot|mor|mand|mimplies|mforall_ind|mexists_ind"
    r"|mserial|mreflexive|mtransitive|msymmetric|exists_in_world"
    r"|mbox_\w+|mdia_\w+|rel_\w+)\Z"
)
_RESERVED_UNIT = re.compile(
    r"(a[0-9]+|prove|nonempty_ax|cumulative_ax|exists_in_world_type"
    r"|designation_\w+|closure_\w+"
    r"|mvalid|mnot|mor|mand|mimplies|mforall_ind|mexists_ind"
    r"|mserial|mreflexive|mtransitive|msymmetric"
    r"|mbox_\w+|mdia_\w+|rel_\w+)\Z"
)


def infrastructure_group(unit_name: str) -> str | None:
    """Which include-mode axiom file an embedding-generated unit goes to.

    Returns 'logic' for the relation, box/diamond, frame-property, and
    cumulative units, 'domain' for the validity/connective/quantifier
    definitions and the non-emptiness axiom, None for user material.
    The cumulative axiom is grouped with the logic file because it mentions
    rel_<tag>: the domain file is included first and must not look ahead.
    Designation and closure axioms mention per-problem user symbols, so
    they stay with the problem rather than a shared axiom file.
    """
    if re.match(r"(rel_\w+|mbox_\w+|mdia_\w+"
                r"|mserial|mreflexive|mtransitive|msymmetric"
                r"|a[0-9]+|cumulative_ax)\Z", unit_name):
        return "logic"
    if re.match(r"(exists_in_world_type|mvalid|mnot|mor|mand|mimplies"
                r"|mforall_ind|mexists_ind|nonempty_ax)\Z", unit_name):
        return "domain"
    return None


def embed_problem(problem: fml.Problem, config: TranslationConfig) -> hol.Problem:
    """Translate a validated problem into an ordered HOL unit list.

    Order: lifted vocabulary, frame axioms, user signature declarations,
    domain axioms, user units.  Signature declarations come before the
    domain axioms because designation and closure axioms mention user
    constants and functions, and every unit list we build keeps symbols
    declared before use.  The conjecture is emitted under the fixed name
    'prove'; other units keep their names and roles (the 'definition'
    role becomes an axiom, since its payload is an assertion, not an
    equation).
    """
    signature = fml.validate_problem(problem)

    for sym in (
        list(signature.predicates)
        + list(signature.functions)
        + list(signature.constants)
    ):
        if _RESERVED_SYMBOL.match(sym):
            raise EmbeddingError(f"user symbol '{sym}' collides with a reserved name")
    for unit in problem.units:
        if unit.role != "conjecture" and _RESERVED_UNIT.match(unit.name):
            raise EmbeddingError(
                f"unit name '{unit.name}' collides with a reserved name"
            )

    units: list[Unit] = list(connective_definitions(config))
    units.extend(frame_axioms(config))
    for p, arity in signature.predicates.items():
        units.append(Unit.type_decl(f"{p}_type", p, pred_type(arity)))
    for f, arity in signature.functions.items():
        units.append(Unit.type_decl(f"{f}_type", f, func_type(arity)))
    for c in signature.constants:
        units.append(Unit.type_decl(f"{c}_type", c, INDIV))
    units.extend(domain_axioms(config, signature))
    for unit in problem.units:
        name = "prove" if unit.role == "conjecture" else unit.name
        kind = "axiom" if unit.role == "definition" else unit.role
        payload = apply(MVALID, embed_formula(unit.formula, config))
        units.append(Unit.formula(name, kind, payload))

    names = [u.name for u in units]
    duplicates = {n for n in names if names.count(n) > 1}
    if duplicates:
        raise EmbeddingError(
            "duplicate unit names after embedding: " + ", ".join(sorted(duplicates))
        )
    return hol.Problem(tuple(units))
