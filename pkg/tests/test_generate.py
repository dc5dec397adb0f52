import random

from hypothesis import given
from hypothesis import strategies as st

from minlogic.formula import is_propositional
from minlogic.generate import random_cut_proof, random_cutfree_proof, random_formula
from minlogic.kernel import Rule, check_proof, node_paths, uses_rule


@given(st.integers(0, 100_000), st.sampled_from(["ML", "MLplus"]), st.booleans())
def test_cutfree_proofs_are_valid(seed, profile, quantifiers):
    t = random_cutfree_proof(random.Random(seed), profile, max_height=6, quantifiers=quantifiers)
    assert t.height <= 6 and t.degree == 0
    assert check_proof(t, profile).valid
    if profile == "ML":
        assert not uses_rule(t, {Rule.Tnd})


@given(st.integers(0, 100_000), st.sampled_from(["ML", "MLplus"]))
def test_cut_proofs_have_cuts(seed, profile):
    t = random_cut_proof(random.Random(seed), profile)
    assert t.height <= 8 and t.degree > 0
    assert check_proof(t, profile).valid


def test_generator_is_deterministic():
    a = random_cut_proof(random.Random(3), "MLplus", quantifiers=True)
    b = random_cut_proof(random.Random(3), "MLplus", quantifiers=True)
    assert a == b


def test_rule_coverage():
    seen = set()
    rng = random.Random(0)
    for _ in range(300):
        t = random_cutfree_proof(rng, "MLplus", quantifiers=True)
        seen |= {n.rule for _, n in node_paths(t)}
    wanted = set(Rule) - {Rule.Cut, Rule.WeakeningRight, Rule.ContractionRight, Rule.ExchangeRight,
                          Rule.InitialScheme, Rule.Hypothesis}
    assert wanted <= seen, wanted - seen


def test_random_formula_propositional_by_default():
    rng = random.Random(1)
    assert all(is_propositional(random_formula(rng, depth=4)) for _ in range(200))
