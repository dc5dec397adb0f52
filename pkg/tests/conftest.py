import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from minlogic.formula import And, App, Atom, Exists, ForAll, Imp, Neg, Or, Var

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

VARS = ("x", "y", "z")

terms = st.recursive(
    st.sampled_from([Var(v) for v in VARS] + [App("c")]),
    lambda inner: st.builds(App, st.sampled_from(["f", "g"]), st.tuples(inner)),
    max_leaves=3,
)

atoms = st.one_of(
    st.sampled_from([Atom("p"), Atom("q"), Atom("r")]),
    st.builds(Atom, st.just("P"), st.tuples(terms)),
    st.builds(Atom, st.just("R"), st.tuples(terms, terms)),
)


def formulas(max_depth=6, quantifiers=True):
    def extend(inner):
        options = [
            st.builds(Neg, inner),
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Imp, inner, inner),
        ]
        if quantifiers:
            options += [st.builds(ForAll, st.sampled_from(VARS), inner),
                        st.builds(Exists, st.sampled_from(VARS), inner)]
        return st.one_of(options)

    base = atoms if quantifiers else st.sampled_from([Atom("p"), Atom("q"), Atom("r")])

    def bounded(depth):
        if depth == 0:
            return base
        return st.one_of(base, extend(st.deferred(lambda: bounded(depth - 1))))

    return bounded(max_depth)


@pytest.fixture
def rng():
    return random.Random(1234)


# acceptance verdicts, reported once at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
