import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minlogic.analysis import (
    _Enumerator,
    EXHAUSTED, FOUND, LEMMA4, LIMIT, backward_search, enumerate_cutfree_proofs,
    formula_universe, lemma4_unprovability, positivity_witness,
)
from minlogic.corpus import load_corpus
from minlogic.formula import And, Atom, PreconditionViolation, is_propositional, parse_formula
from minlogic.generate import random_cutfree_proof, random_formula
from minlogic.kernel import Rule, Sequent, apply_rule, check_proof, get_profile, node_paths, parse_sequent

F = parse_formula
S = parse_sequent
B, q = Atom("B"), Atom("q")


# --- positivity and its certificate ----------------------------------------

def test_positivity_examples():
    assert positivity_witness([F("~B"), F("B")], B) == (B, ())
    assert positivity_witness([B], B) == (B, ())
    assert positivity_witness([F("~B"), F("B & q")], B) == (And(B, q), (0,))
    assert positivity_witness([F("~B"), F("~~B")], B) is None
    assert positivity_witness([], B) is None


def test_positivity_needs_atom():
    with pytest.raises(PreconditionViolation):
        positivity_witness([B], F("~B"))


@pytest.mark.parametrize("text, verdict", [
    ("~p, p |- q", True),
    ("p |- q", True),
    ("~p |- p", True),
    ("|- p", True),
    ("p |- p", False),
    ("p -> q |- q", False),       # the criterion ignores implication polarity
    ("|- p | ~p", False),         # not an atomic succedent
    ("~p, p |-", False),
])
def test_positivity_certificate_examples(text, verdict):
    cert = lemma4_unprovability(S(text))
    assert (cert is not None) is verdict
    if cert:
        assert cert.kind == LEMMA4 and cert.sequent == S(text)
        assert cert.checked == S(text).antecedent
        assert "kind: UnprovableByLemma4" in cert.to_text()


# --- backward search -------------------------------------------------------

@pytest.mark.parametrize("text, profile, kind", [
    ("|- p | ~p", "ML_EFQ", EXHAUSTED),
    ("|- p | ~p", "MLplus", FOUND),
    ("|- p | ~p", "ML", EXHAUSTED),
    ("|- p | ~p", "LJ", EXHAUSTED),
    ("~p, p |- q", "LJ", FOUND),
    ("~p, p |- q", "ML", EXHAUSTED),
    ("~p, p |- q", "MLplus", EXHAUSTED),
    ("~p, p |-", "ML", FOUND),
    ("~~p |- p", "MLplus", EXHAUSTED),
    ("~~p |- p", "MLplus_WR", FOUND),
    ("|- ((p -> q) -> p) -> p", "LJ", EXHAUSTED),
    ("|- ((p -> q) -> p) -> p", "MLplus_WR", FOUND),
    ("p & q |- q & p", "ML", FOUND),
    ("p -> q, q -> r |- p -> r", "ML", FOUND),
    ("|- ~~(p | ~p)", "ML", FOUND),
    ("|- ~p -> p -> q", "ML_EFQ", FOUND),
    ("|- ~~p -> p", "ML_DNE", FOUND),
])
def test_search_verdicts(text, profile, kind):
    cert = backward_search(S(text), profile)
    assert cert.kind == kind
    if kind == FOUND:
        assert cert.proof.conclusion == S(text)
        assert cert.proof.degree == 0
        assert check_proof(cert.proof, profile).valid


def test_weakening_refutation_prunes():
    cert = backward_search(S("((q -> r) -> q & r) & (q & ~r) |- p"), "MLplus")
    assert cert.kind == EXHAUSTED
    assert cert.stats.refutations > 0 and cert.stats.nodes < 1000


def test_search_depth_limit():
    cert = backward_search(S("|- ((p -> q) -> p) -> p"), "MLplus_WR", max_depth=3)
    assert cert.kind == LIMIT and cert.stats.truncated > 0


@pytest.mark.parametrize("text, profile", [
    ("|- forall x. P(x) -> P(x)", "ML"),
    ("|- p, q", "LJ"),
    ("|- p", "LK"),
])
def test_search_preconditions(text, profile):
    with pytest.raises(PreconditionViolation):
        backward_search(S(text), profile)


@pytest.mark.parametrize("entry", [e for e in load_corpus() if e.proof.degree == 0 and not e.hypotheses],
                         ids=lambda e: e.id)
def test_search_finds_corpus_end_sequents(entry):
    for exp in entry.expectations:
        if exp.valid and exp.profile != "LK" and is_propositional_sequent(entry.proof.conclusion):
            assert backward_search(entry.proof.conclusion, exp.profile).kind == FOUND


def is_propositional_sequent(s):
    return all(is_propositional(f) for f in s.formulas())


# --- enumeration -----------------------------------------------------------

def test_universe():
    assert len(formula_universe(["p"])) == 5
    assert len(formula_universe(["p", "q"])) == 2 + 2 + 3 * 4


def test_height_one_is_axioms():
    out = list(enumerate_cutfree_proofs("ML", ["p"], 1))
    assert len(out) == 5 and all(t.rule is Rule.Axiom for t in out)


@pytest.mark.parametrize("height, distinct, count", [
    (2, True, 36), (2, False, 39), (3, True, 227), (3, False, 367),
])
def test_enumeration_counts(height, distinct, count):
    assert len(list(enumerate_cutfree_proofs("ML", ["p"], height, distinct=distinct))) == count


def _brute_force(profile, atoms, max_height, max_antecedent=3):
    # every binary rule tried on every premise pair, no indexing
    en = _Enumerator(get_profile(profile), atoms, max_antecedent)
    rules = [Rule.AndRight, Rule.ImpLeft, Rule.OrLeft]
    if en.profile.allows(Rule.Tnd):
        rules.append(Rule.Tnd)
    levels = [en.axioms()]
    for _ in range(2, max_height + 1):
        new = levels[-1]
        pool = [t for lv in levels for t in lv]
        fresh = {id(t) for t in new}
        out = [t for p in new for t in en.unary(p)]
        for p in pool:
            for q in pool:
                if id(p) not in fresh and id(q) not in fresh:
                    continue
                for rule in rules:
                    try:
                        out.append(apply_rule(rule, premises=[p, q]))
                    except ValueError:
                        pass
        levels.append([t for t in out if en.fits(t.antecedent, t.succedent)])
    return [t for lv in levels for t in lv]


@pytest.mark.parametrize("profile", ["ML", "MLplus"])
def test_enumeration_matches_brute_force(profile):
    trees = list(enumerate_cutfree_proofs(profile, ["p"], 3, distinct=False))
    assert Counter(trees) == Counter(_brute_force(profile, ["p"], 3))


def test_enumeration_is_sound_and_consistent():
    trees = list(enumerate_cutfree_proofs("MLplus", ["p"], 3, distinct=False))
    shortest = list(enumerate_cutfree_proofs("MLplus", ["p"], 3))
    for t in trees:
        assert t.height <= 3 and t.degree == 0
        assert check_proof(t, "MLplus").valid
        assert all(len(n.antecedent) <= 3 for _, n in node_paths(t))
    assert {t.conclusion for t in trees} == {t.conclusion for t in shortest}
    assert len(shortest) == len({t.conclusion for t in shortest})
    heights = [t.height for t in shortest]
    assert heights == sorted(heights)


def test_search_proves_every_enumerated_sequent():
    for t in enumerate_cutfree_proofs("ML", ["p", "q"], 3):
        assert backward_search(t.conclusion, "ML").kind == FOUND, t.conclusion


def test_enumerated_atomic_succedents_have_witnesses():
    for t in enumerate_cutfree_proofs("MLplus", ["p"], 4):
        if len(t.succedent) == 1 and isinstance(t.succedent[0], Atom):
            assert positivity_witness(t.antecedent, t.succedent[0]) is not None


# --- the criterion against search -----------------------------------------

@given(st.integers(0, 100_000))
def test_positivity_certificate_never_contradicts_search(seed):
    rng = random.Random(seed)
    ante = tuple(random_formula(rng, depth=rng.randint(0, 3)) for _ in range(rng.randint(0, 3)))
    s = Sequent(ante, (Atom(rng.choice("pqr")),))
    if lemma4_unprovability(s) is not None:
        assert backward_search(s, "MLplus", max_depth=20).kind != FOUND


@given(st.integers(0, 100_000))
def test_generated_atomic_conclusions_have_witnesses(seed):
    t = random_cutfree_proof(random.Random(seed), "MLplus")
    if len(t.succedent) == 1 and isinstance(t.succedent[0], Atom):
        assert lemma4_unprovability(t.conclusion) is None
