"""Concrete-syntax emission: parenthesization, wrapping, and file layouts."""

import pytest

import thf_reader
from fml2hol import embedding, hol, qmf, thf
from fml2hol.embedding import TranslationConfig, parse_domain, parse_logic
from fml2hol.hol import (
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

E1 = qmf.parse_problem(
    "qmf(con,conjecture,("
    " ( ! [X] : ( #box : ( f(X) ) ) ) => ( #box : ( ! [X] : ( f(X) ) ) ) ))."
)


def config(logic: str, domain: str) -> TranslationConfig:
    return TranslationConfig(parse_logic(logic), parse_domain(domain))


def embed(problem, logic, domain) -> hol.Problem:
    return embedding.embed_problem(problem, config(logic, domain))


def test_emit_atomic_terms():
    assert thf.emit_term(Const("p", PROP)) == "p"
    assert thf.emit_term(Var("W", WORLD)) == "W"


def test_emit_application_spine():
    rel = Const("rel_d", fn(WORLD, WORLD, TRUTH))
    term = apply(rel, Var("W", WORLD), Var("V", WORLD))
    assert thf.emit_term(term) == "rel_d @ W @ V"


def test_emit_non_atomic_argument_parenthesized():
    f = Const("f", fn(INDIV, PROP))
    g = Const("g", fn(INDIV, INDIV))
    term = apply(f, App(g, Const("c", INDIV)), Var("W", WORLD))
    assert thf.emit_term(term) == "f @ ( g @ c ) @ W"


def test_emit_trailing_binder_argument_bare():
    head = Const("mforall_ind", fn(fn(INDIV, PROP), PROP))
    lam = Lambda("X", INDIV, App(Const("f", fn(INDIV, PROP)), Var("X", INDIV)))
    term = App(head, lam)
    assert thf.emit_term(term) == "mforall_ind @ ^ [X: mu] : ( f @ X )"


def test_emit_non_trailing_binder_argument_parenthesized():
    head = Const("h", fn(fn(INDIV, TRUTH), INDIV, TRUTH))
    lam = Lambda("X", INDIV, Const("t", TRUTH))
    term = apply(head, lam, Const("c", INDIV))
    assert thf.emit_term(term) == "h @ ( ^ [X: mu] : ( t ) ) @ c"


def test_emit_non_atomic_head_parenthesized():
    lam = Lambda("X", INDIV, Var("X", INDIV))
    term = App(lam, Const("c", INDIV))
    assert thf.emit_term(term) == "( ^ [X: mu] : ( X ) ) @ c"


def test_emit_mforall_body_matches_published_form():
    got = thf.emit_term(
        Lambda(
            "Phi",
            fn(INDIV, WORLD, TRUTH),
            Lambda(
                "W",
                WORLD,
                Forall(
                    "X",
                    INDIV,
                    apply(Var("Phi", fn(INDIV, WORLD, TRUTH)), Var("X", INDIV), Var("W", WORLD)),
                ),
            ),
        )
    )
    assert got == "^ [Phi: mu > $i > $o,W: $i] : ! [X: mu] : ( Phi @ X @ W )"


def test_same_class_binders_merge_only():
    term = Forall("U", WORLD, Exists("V", WORLD, Forall("W", WORLD, Const("t", TRUTH))))
    assert thf.emit_term(term) == "! [U: $i] : ? [V: $i] : ! [W: $i] : ( t )"
    merged = Forall("U", WORLD, Forall("V", WORLD, Const("t", TRUTH)))
    assert thf.emit_term(merged) == "! [U: $i,V: $i] : ( t )"


def test_emit_not_forms():
    assert thf.emit_term(Not(Const("p", TRUTH))) == "~ p"
    inner = App(Const("f", fn(INDIV, TRUTH)), Const("c", INDIV))
    assert thf.emit_term(Not(inner)) == "~ ( f @ c )"
    assert thf.emit_term(Not(Not(Const("p", TRUTH)))) == "~ ( ~ p )"


def test_emit_binary_operand_parenthesization():
    p, q, r = Const("p", TRUTH), Const("q", TRUTH), Const("r", TRUTH)
    assert thf.emit_term(Or(Not(p), q)) == "~ p | q"
    assert thf.emit_term(Implies(And(p, q), r)) == "( p & q ) => r"
    assert thf.emit_term(And(p, Or(q, r))) == "p & ( q | r )"


def test_emit_unit_kinds():
    decl = Unit.type_decl("f_type", "f", fn(INDIV, WORLD, TRUTH))
    assert thf.emit_unit(decl) == "thf(f_type,type,( f: mu > $i > $o ))."
    defn = Unit.definition("idd", "idd", Lambda("X", INDIV, Var("X", INDIV)))
    assert thf.emit_unit(defn) == "thf(idd,definition,( idd = ( ^ [X: mu] : ( X ) ) ))."
    ax = Unit.formula("ax", "axiom", Const("p", TRUTH))
    assert thf.emit_unit(ax) == "thf(ax,axiom,( p ))."
    hyp = Unit.formula("h", "hypothesis", Const("p", TRUTH))
    assert thf.emit_unit(hyp) == "thf(h,hypothesis,( p ))."


def test_type_printing_higher_order_argument():
    decl = Unit.type_decl("v_type", "v", fn(PROP, TRUTH))
    assert thf.emit_unit(decl) == "thf(v_type,type,( v: ( $i > $o ) > $o ))."


def test_golden_conjecture_d_const():
    text = thf.emit_problem(embed(E1, "d", "const")).problem_text
    assert (
        "thf(prove,conjecture,( mvalid @ ( mimplies @ ( mforall_ind @ ^ [X: mu] :"
        " ( mbox_d @ ( f @ X ) ) ) @ ( mbox_d @ ( mforall_ind @ ^ [X: mu] :"
        " ( f @ X ) ) ) ) ))." in text.replace("\n    ", " ")
    )
    assert "thf(f_type,type,( f: mu > $i > $o ))." in text


def test_golden_box_definition():
    text = thf.emit_problem(embed(E1, "d", "const")).problem_text
    assert (
        "thf(mbox_d,definition,( mbox_d = ( ^ [Phi: $i > $o,W: $i] : ! [V: $i] :"
        " ( ~ ( rel_d @ W @ V ) | ( Phi @ V ) ) ) ))."
        in text.replace("\n    ", " ")
    )


def test_wrapping_keeps_token_stream():
    problem = embed(E1, "s5", "cumul")
    wide = thf.emit_problem(problem, width=10_000).problem_text
    narrow = thf.emit_problem(problem, width=60).problem_text
    assert any(len(line) > 60 for line in wide.splitlines())
    assert all(len(line) <= 60 for line in narrow.splitlines())
    assert thf_reader.lex(wide) == thf_reader.lex(narrow)
    for line in narrow.splitlines():
        if not line.startswith(("thf(", "include(")):
            assert line.startswith("    ")


def test_emission_is_deterministic():
    problem = embed(E1, "t", "vary")
    assert thf.emit_problem(problem) == thf.emit_problem(problem)


def test_empty_problem_inline():
    assert thf.emit_problem(hol.Problem(())).problem_text == ""


def test_include_mode_layout():
    out = thf.emit_problem(embed(E1, "d", "const"), mode=thf.Include("Axioms", "E1"))
    lines = out.problem_text.splitlines()
    assert lines[0] == "include('Axioms/E1_const.ax')."
    assert lines[1] == "include('Axioms/E1_d.ax')."
    assert lines[2] == ""
    assert lines[3].startswith("thf(f_type,")
    (domain_path, domain_text), (logic_path, logic_text) = out.axiom_files
    assert domain_path == "Axioms/E1_const.ax"
    assert logic_path == "Axioms/E1_d.ax"
    assert "thf(mvalid," in domain_text
    assert "thf(mbox_d," in logic_text
    assert "thf(a1," in logic_text


def test_include_mode_empty_axiom_dir():
    out = thf.emit_problem(embed(E1, "k", "vary"), mode=thf.Include("", "probe"))
    assert out.problem_text.splitlines()[0] == "include('probe_vary.ax')."
    assert out.axiom_files[0][0] == "probe_vary.ax"


def test_include_mode_groups_by_reusability():
    problem = qmf.parse_problem(
        "qmf(con,conjecture,( ! [X] : ( p(g(X)) | p(c) ) ))."
    )
    out = thf.emit_problem(embed(problem, "s4", "cumul"), mode=thf.Include("ax", "m"))
    (_, domain_text), (_, logic_text) = out.axiom_files
    assert "nonempty_ax" in domain_text
    assert "cumulative_ax" in logic_text
    # designation and closure mention user symbols: problem file only
    assert "designation_c" not in domain_text + logic_text
    assert "designation_c" in out.problem_text
    assert "closure_g" in out.problem_text
    names = [
        line.split(",")[0][len("thf(") :]
        for line in out.problem_text.splitlines()
        if line.startswith("thf(")
    ]
    assert names.index("c_type") < names.index("designation_c")


def test_include_concatenation_is_well_formed():
    for logic, domain in (("d", "const"), ("s5", "vary"), ("k4", "cumul")):
        out = thf.emit_problem(embed(E1, logic, domain), mode=thf.Include("ax", "e"))
        body = "\n".join(
            line for line in out.problem_text.splitlines() if not line.startswith("include(")
        )
        concat = "\n".join(text for _, text in out.axiom_files) + "\n" + body
        hol.check_problem(thf_reader.read_problem(concat))


def test_include_axiom_file_names_follow_config():
    out = thf.emit_problem(embed(E1, "k4", "cumul"), mode=thf.Include("lib", "e1"))
    assert [path for path, _ in out.axiom_files] == [
        "lib/e1_cumul.ax",
        "lib/e1_k4.ax",
    ]


def test_include_mode_requires_embedded_problem():
    bare = hol.Problem((Unit.type_decl("p_type", "p", TRUTH),))
    with pytest.raises(ValueError, match="mbox"):
        thf.emit_problem(bare, mode=thf.Include("ax", "x"))


def test_include_mode_requires_basename():
    with pytest.raises(ValueError, match="basename"):
        thf.Include("ax", "")


def test_reread_roundtrip_all_configs():
    for logic in embedding.Logic:
        for domain in embedding.DomainCondition:
            problem = embedding.embed_problem(
                E1, TranslationConfig(logic, domain)
            )
            text = thf.emit_problem(problem).problem_text
            back = thf_reader.read_problem(text)
            assert thf_reader.problems_alpha_equal(problem, back)
            hol.check_problem(back)
