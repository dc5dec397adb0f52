import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minlogic.corpus import load_corpus
from minlogic.formula import ParseError
from minlogic.generate import random_cut_proof
from minlogic.kernel import Rule, check_proof, parse_sequent
from minlogic.proofio import (
    format_proof, format_proof_file, parse_proof, parse_proof_file, proof_to_latex,
)

EXAMPLE = """
# a comment
(assume (seq "p |-"))
(rule NegRight [~p] (seq "|- ~p")
  (rule Hypothesis [] (seq "p |-")))
"""


def test_parse_example():
    pf = parse_proof_file(EXAMPLE)
    assert pf.hypotheses == (parse_sequent("p |-"),)
    assert pf.proof.rule is Rule.NegRight
    assert str(pf.proof.conclusion) == "|- ~p"
    assert check_proof(pf.proof, "ML", pf.hypotheses).valid


def test_metadata_keys():
    text = """(rule ForAllRight [forall y. P(y); eigen=a] (seq "forall x. P(x) |- forall y. P(y)")
      (rule ForAllLeft [forall x. P(x); term=a] (seq "forall x. P(x) |- P(a)")
        (rule Axiom [P(a)] (seq "P(a) |- P(a)"))))"""
    t = parse_proof(text)
    assert t.meta.eigen == "a"
    assert check_proof(t, "ML").valid
    s = parse_proof('(rule InitialScheme [scheme=EFQ(p, q | r)] (seq "|- ~p -> p -> q | r"))')
    assert check_proof(s, "ML_EFQ").valid


@pytest.mark.parametrize("text", [
    "(rule Bogus [] (seq \"p |- p\"))",
    "(rule Axiom [p] (seq \"p |- \"",
    "(rule Axiom [colour=red] (seq \"p |- p\"))",
    "(rule Axiom [p] (seq \"p |- p &\"))",
    "(rule Axiom [p] (seq \"p |- p\")) trailing",
    "(rule Axiom [p] (sequent \"p |- p\"))",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_proof(text)


def test_cut_formula_inferred_when_missing():
    t = parse_proof("""(rule Cut [] (seq "p |- p")
        (rule Axiom [p] (seq "p |- p")) (rule Axiom [p] (seq "p |- p")))""")
    assert t.degree == 1 and check_proof(t, "ML").valid


def test_invalid_proofs_still_parse():
    t = parse_proof('(rule Axiom [p] (seq "p |- q"))')
    assert not check_proof(t, "ML").valid


@pytest.mark.parametrize("entry", load_corpus(), ids=lambda e: e.id)
def test_corpus_round_trip(entry):
    text = format_proof_file(entry.proof, entry.hypotheses, entry.description)
    pf = parse_proof_file(text)
    assert pf.proof == entry.proof
    assert pf.hypotheses == entry.hypotheses


@given(st.integers(0, 10_000))
def test_random_round_trip(seed):
    rng = random.Random(seed)
    t = random_cut_proof(rng, rng.choice(["ML", "MLplus"]), quantifiers=rng.random() < 0.4)
    assert parse_proof(format_proof(t)) == t


def test_latex():
    out = proof_to_latex(load_corpus()[0].proof)
    assert out.startswith("\\begin{prooftree}") and out.rstrip().endswith("\\end{prooftree}")
    assert "\\RightLabel{w:r}" in out
    assert out.count("\\AXC") == 1 and out.count("\\UIC") == 5
