import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import formulas, terms
from minlogic.formula import (
    And, App, Atom, Exists, ForAll, Imp, Neg, Or, ParseError, PreconditionViolation, Var,
    alpha_equivalent, children, degree, dne, efq, free_variables, has_positive_occurrence,
    match_scheme, parse_formula, parse_term, positive_occurrences, print_formula, substitute,
    subformula_at, tnd,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")
A, B = Atom("A"), Atom("B")


def P(*args):
    return Atom("p", tuple(args))


# --- parsing ---------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("~A -> (A -> B)", Imp(Neg(A), Imp(A, B))),
    ("A | ~A", Or(A, Neg(A))),
    ("p & q | r", Or(And(p, q), r)),
    ("forall x. p(x) -> q", ForAll("x", Imp(P(Var("x")), q))),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("p | q | r", Or(Or(p, q), r)),
    ("p & q & r", And(And(p, q), r)),
    ("~~p", Neg(Neg(p))),
    ("~p & q", And(Neg(p), q)),
    ("(p -> q) -> r", Imp(Imp(p, q), r)),
    ("p & exists y. q | r", And(p, Exists("y", Or(q, r)))),
    ("p(f(x), c())", Atom("p", (App("f", (Var("x"),)), App("c")))),
    ("¬A ⊃ (A ⊃ B)", Imp(Neg(A), Imp(A, B))),
    ("∀x. ∃y. p(x) ∧ q ∨ r", ForAll("x", Exists("y", Or(And(P(Var("x")), q), r)))),
])
def test_parse_examples(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text", ["", "p &", "(p", "p q", "forall p", "forall x p", "forall",
                                  "p(x", "p(,)", "exists. p", "~", "p -> ", "p)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_formula("p & & q")
    assert info.value.position == 4


def test_reserved_words_are_not_atoms():
    with pytest.raises(ParseError):
        parse_formula("forall & p")


# --- printing --------------------------------------------------------------

@pytest.mark.parametrize("f, text", [
    (Imp(Neg(A), Imp(A, B)), "~A -> A -> B"),
    (Or(And(p, q), r), "p & q | r"),
    (ForAll("x", P(Var("x"))), "forall x. p(x)"),
    (Imp(Imp(p, q), r), "(p -> q) -> r"),
    (And(ForAll("x", P(Var("x"))), q), "(forall x. p(x)) & q"),
    (And(q, ForAll("x", P(Var("x")))), "q & forall x. p(x)"),
    (Neg(And(p, q)), "~(p & q)"),
    (Or(p, Or(q, r)), "p | (q | r)"),
    (P(App("c")), "p(c())"),
])
def test_print_examples(f, text):
    assert print_formula(f) == text
    assert parse_formula(text) == f


@given(formulas(max_depth=6))
def test_round_trip(f):
    assert parse_formula(print_formula(f)) == f


@given(terms)
def test_term_round_trip(t):
    from minlogic.formula import print_term
    assert parse_term(print_term(t)) == t


# --- degree ----------------------------------------------------------------

@pytest.mark.parametrize("text, d", [
    ("p", 1), ("~p", 2), ("p & (q | r)", 3), ("~~(p | ~p)", 5),
    ("forall x. p(x)", 2), ("~p -> p -> q", 3), ("p & ~p", 3),
])
def test_degree_examples(text, d):
    assert degree(parse_formula(text)) == d


@given(formulas(max_depth=6))
def test_degree_monotone(f):
    assert degree(f) >= 1
    for g in children(f):
        assert degree(f) > degree(g)


# --- variables and substitution -------------------------------------------

@pytest.mark.parametrize("text, fv", [
    ("p(x) & forall x. q(x)", {"x"}),
    ("forall x. p(x)", set()),
    ("p(x, f(y))", {"x", "y"}),
])
def test_free_variables(text, fv):
    assert free_variables(parse_formula(text)) == fv


def test_substitute_examples():
    f_a = App("f", (Var("a"),))
    assert substitute(parse_formula("p(x)"), "x", f_a) == Atom("p", (f_a,))
    assert substitute(parse_formula("forall x. p(x)"), "x", Var("a")) == parse_formula("forall x. p(x)")
    renamed = substitute(parse_formula("forall y. p(x, y)"), "x", Var("y"))
    assert renamed == parse_formula("forall y1. p(y, y1)")


def test_substitute_renames_only_when_needed():
    f = parse_formula("forall y. p(x, y) & exists z. q(z)")
    assert substitute(f, "x", Var("w")) == parse_formula("forall y. p(w, y) & exists z. q(z)")


@given(formulas(max_depth=5), st.sampled_from(["x", "y", "z"]))
def test_substitution_identity(f, v):
    assert alpha_equivalent(substitute(f, v, Var(v)), f)


@given(formulas(max_depth=5), st.sampled_from(["x", "y"]), terms)
def test_substitution_removes_variable(f, v, t):
    from minlogic.formula import term_variables
    g = substitute(f, v, t)
    if v not in term_variables(t):
        assert v not in free_variables(g)
    assert free_variables(g) <= (free_variables(f) - {v}) | term_variables(t)


def test_alpha_equivalence():
    assert alpha_equivalent(parse_formula("forall x. p(x)"), parse_formula("forall y. p(y)"))
    assert not alpha_equivalent(parse_formula("forall x. p(x, y)"), parse_formula("forall y. p(y, y)"))


# --- positivity ------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("B", True), ("~B", False), ("B & ~B", True), ("B -> q", True),
    ("~(B & q)", False), ("q | ~~B", False), ("forall x. B", True), ("q", False),
])
def test_positive_occurrence_examples(text, expected):
    assert has_positive_occurrence(parse_formula(text), B) is expected


def test_positive_occurrence_needs_atom():
    with pytest.raises(PreconditionViolation):
        has_positive_occurrence(p, Neg(p))


def _brute_positive(f, b):
    out = []

    def walk(g, path, negs):
        if g == b and negs == 0:
            out.append(path)
        for i, c in enumerate(children(g)):
            walk(c, path + (i,), negs + isinstance(g, Neg))

    walk(f, (), 0)
    return out


@given(formulas(max_depth=5, quantifiers=False), st.sampled_from([p, q, r]))
def test_positivity_matches_brute_force(f, b):
    paths = list(positive_occurrences(f, b))
    assert paths == _brute_positive(f, b)
    assert has_positive_occurrence(f, b) == bool(paths)
    for path in paths:
        assert subformula_at(f, path) == b


# --- schemes ---------------------------------------------------------------

def test_scheme_rendering():
    assert efq(A, B).formula == parse_formula("~A -> A -> B")
    assert tnd(A).formula == parse_formula("A | ~A")
    assert dne(A).formula == parse_formula("~~A -> A")


def test_match_scheme():
    assert match_scheme("EFQ", parse_formula("~p -> p -> q")) == efq(p, q)
    assert match_scheme("DNE", parse_formula("~~(p | q) -> p | q")) == dne(Or(p, q))
    assert match_scheme("TND", parse_formula("q | ~q")) == tnd(q)
    assert match_scheme("EFQ", parse_formula("~p -> q -> q")) is None
    assert match_scheme("DNE", parse_formula("~~p -> q")) is None
