"""The displayed derivations relating ex falso, excluded middle and double
negation elimination, as checkable proof trees.

Schematic letters are instantiated as ``A = p`` and ``B = q``;
:func:`instantiate` rebuilds an entry at other formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formula import Atom, Formula, Neg, Or, dne, efq
from .kernel import (
    ProofTree, Rule, Sequent, apply_rule, check_proof, get_profile, node_paths, replace_at,
)

__all__ = ["Expectation", "CorpusEntry", "load_corpus", "get_entry", "instantiate", "run_corpus",
           "efq_to_weakening_translation"]


@dataclass(frozen=True)
class Expectation:
    profile: str
    valid: bool
    failing_rule: Optional[Rule] = None
    failing_path: Optional[tuple] = None


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    description: str
    proof: ProofTree
    expectations: tuple
    hypotheses: tuple = ()
    reconstructed: bool = False

    def check(self, exp: Expectation):
        return check_proof(self.proof, get_profile(exp.profile), self.hypotheses)

    def holds(self, exp: Expectation) -> bool:
        r = self.check(exp)
        if r.valid != exp.valid:
            return False
        if not exp.valid:
            if exp.failing_rule is not None and r.rule is not exp.failing_rule:
                return False
            if exp.failing_path is not None and r.path != exp.failing_path:
                return False
        return True


def _ax(f):
    return apply_rule(Rule.Axiom, formula=f)


def _un(rule, p, **meta):
    return apply_rule(rule, premises=[p], **meta)


def _bin(rule, p, q, **meta):
    return apply_rule(rule, premises=[p, q], **meta)


def efq_from_weakening(a: Formula, b: Formula) -> ProofTree:
    """|- ~A -> (A -> B) using weakening on the right."""
    t = _un(Rule.NegLeft, _ax(a))                       # ~A, A |-
    t = _un(Rule.WeakeningRight, t, formula=b)          # ~A, A |- B
    t = _un(Rule.ExchangeLeft, t, index=0)              # A, ~A |- B
    t = _un(Rule.ImpRight, t)                           # ~A |- A -> B
    return _un(Rule.ImpRight, t)                        # |- ~A -> (A -> B)


def weakening_from_efq(a: Formula, b: Formula) -> ProofTree:
    """From the assumption ``A |-`` derive ``A |- B`` with an EFQ initial sequent and two cuts."""
    hyp = apply_rule(Rule.Hypothesis, sequent=Sequent((a,), ()))
    not_a = _un(Rule.WeakeningLeft, _un(Rule.NegRight, hyp), formula=a)         # A |- ~A
    left = _bin(Rule.AndRight, _ax(a), not_a)                                    # A |- A & ~A
    scheme = apply_rule(Rule.InitialScheme, scheme=efq(a, b))                   # |- ~A -> (A -> B)
    mp = _bin(Rule.ImpLeft, _ax(Neg(a)), _bin(Rule.ImpLeft, _ax(a), _ax(b)))    # ~A->(A->B), ~A, A |- B
    t = _bin(Rule.Cut, scheme, mp)                                               # ~A, A |- B
    conj = left.succedent[0]
    t = _un(Rule.AndLeft2, t, formula=conj)                                      # A & ~A, A |- B
    t = _un(Rule.ExchangeLeft, t, index=0)                                       # A, A & ~A |- B
    t = _un(Rule.AndLeft1, t, formula=conj)                                      # A & ~A, A & ~A |- B
    t = _un(Rule.ContractionLeft, t)                                             # A & ~A |- B
    return _bin(Rule.Cut, left, t)                                               # A |- B


def _double_negated_tnd(a: Formula) -> ProofTree:
    """|- ~~(A | ~A) in minimal logic."""
    d = Or(a, Neg(a))
    t = _un(Rule.OrRight1, _ax(a), formula=d)            # A |- A | ~A
    t = _un(Rule.NegLeft, t)                             # ~(A | ~A), A |-
    t = _un(Rule.ExchangeLeft, t, index=0)               # A, ~(A | ~A) |-
    t = _un(Rule.NegRight, t)                            # ~(A | ~A) |- ~A
    t = _un(Rule.OrRight2, t, formula=d)                 # ~(A | ~A) |- A | ~A
    t = _un(Rule.NegLeft, t)                             # ~(A | ~A), ~(A | ~A) |-
    t = _un(Rule.ContractionLeft, t)                     # ~(A | ~A) |-
    return _un(Rule.NegRight, t)                         # |- ~~(A | ~A)


def tnd_from_dne(a: Formula) -> ProofTree:
    """|- A | ~A from the DNE instance at A | ~A (reconstructed derivation)."""
    d = Or(a, Neg(a))
    inst = dne(d)
    mp = _bin(Rule.ImpLeft, _double_negated_tnd(a), _ax(d))   # ~~(A|~A) -> (A|~A) |- A | ~A
    return _bin(Rule.Cut, apply_rule(Rule.InitialScheme, scheme=inst), mp)


def efq_from_dne(a: Formula, b: Formula) -> ProofTree:
    t = _un(Rule.NegLeft, _ax(a))                              # ~A, A |-
    t = _un(Rule.WeakeningLeft, t, formula=Neg(b))             # ~B, ~A, A |-
    t = _un(Rule.NegRight, t)                                  # ~A, A |- ~~B
    t = _bin(Rule.ImpLeft, t, _ax(b))                          # ~~B -> B, ~A, A |- B
    t = _bin(Rule.Cut, apply_rule(Rule.InitialScheme, scheme=dne(b)), t)   # ~A, A |- B
    t = _un(Rule.ExchangeLeft, t, index=0)                     # A, ~A |- B
    t = _un(Rule.ImpRight, t)
    return _un(Rule.ImpRight, t)                               # |- ~A -> (A -> B)


def tnd_by_rule(a: Formula) -> ProofTree:
    d = Or(a, Neg(a))
    left = _un(Rule.OrRight1, _ax(a), formula=d)
    right = _un(Rule.OrRight2, _ax(Neg(a)), formula=d)
    return _bin(Rule.Tnd, left, right)                         # |- A | ~A


def dne_from_tnd_and_weakening(a: Formula) -> ProofTree:
    """~~A |- A: case split on A | ~A, with weakening on the right in the ~A case."""
    nna = Neg(Neg(a))
    left = _un(Rule.ExchangeLeft, _un(Rule.WeakeningLeft, _ax(a), formula=nna), index=0)  # A, ~~A |- A
    right = _un(Rule.NegLeft, _ax(Neg(a)))                                                 # ~~A, ~A |-
    right = _un(Rule.ExchangeLeft, right, index=0)                                         # ~A, ~~A |-
    right = _un(Rule.WeakeningRight, right, formula=a)                                     # ~A, ~~A |- A
    case = _bin(Rule.OrLeft, left, right)                                                  # A | ~A, ~~A |- A
    return _bin(Rule.Cut, tnd_by_rule(a), case)                                            # ~~A |- A


def tnd_rule_in_lk(a: Formula, gamma=(), delta=None) -> ProofTree:
    """Simulate the case-split rule in LK: derive |- A | ~A and cut it against OrLeft.

    The case premises ``A, Gamma |- Delta`` and ``~A, Gamma |- Delta`` are
    hypotheses.
    """
    d = Or(a, Neg(a))
    delta = (Atom("q"),) if delta is None else tuple(delta)
    gamma = tuple(gamma)
    t = _un(Rule.OrRight1, _ax(a), formula=d)                 # A |- A | ~A
    t = _un(Rule.NegRight, t)                                 # |- A | ~A, ~A
    t = _un(Rule.OrRight2, t, formula=d)                      # |- A | ~A, A | ~A
    t = _un(Rule.ContractionRight, t)                         # |- A | ~A
    h1 = apply_rule(Rule.Hypothesis, sequent=Sequent((a,) + gamma, delta))
    h2 = apply_rule(Rule.Hypothesis, sequent=Sequent((Neg(a),) + gamma, delta))
    return _bin(Rule.Cut, t, _bin(Rule.OrLeft, h1, h2))       # Gamma |- Delta


def _hyps(p: ProofTree) -> tuple:
    return tuple(n.conclusion for _, n in node_paths(p) if n.rule is Rule.Hypothesis)


def _first_path(p: ProofTree, rule: Rule) -> tuple:
    for path, n in node_paths(p):
        if n.rule is rule:
            return path
    raise LookupError(rule)


def _build(entry_id: str, a: Formula, b: Formula) -> CorpusEntry:
    E = Expectation
    if entry_id == "L1-FWD":
        p = efq_from_weakening(a, b)
        wr = _first_path(p, Rule.WeakeningRight)
        return CorpusEntry("L1-fwd", "ex falso from weakening on the right", p,
                           (E("LJ", True), E("MLplus_WR", True),
                            E("ML", False, Rule.WeakeningRight, wr),
                            E("MLplus", False, Rule.WeakeningRight, wr)))
    if entry_id == "L1-CONV":
        p = weakening_from_efq(a, b)
        return CorpusEntry("L1-conv", "weakening on the right (A |- to A |- B) from EFQ initial "
                           "sequents and two cuts", p,
                           (E("ML_EFQ", True), E("ML", False, Rule.InitialScheme),
                            E("ML_DNE", False, Rule.InitialScheme)), hypotheses=_hyps(p))
    if entry_id == "L2-1A":
        p = tnd_from_dne(a)
        return CorpusEntry("L2-1a", "excluded middle from a DNE initial sequent (reconstructed)", p,
                           (E("ML_DNE", True), E("ML", False, Rule.InitialScheme),
                            E("ML_EFQ", False, Rule.InitialScheme)), reconstructed=True)
    if entry_id == "L2-1B":
        p = efq_from_dne(a, b)
        return CorpusEntry("L2-1b", "ex falso from DNE initial sequents", p,
                           (E("ML_DNE", True), E("ML", False, Rule.InitialScheme)))
    if entry_id == "L2-2":
        p = dne_from_tnd_and_weakening(a)
        wr = _first_path(p, Rule.WeakeningRight)
        return CorpusEntry("L2-2", "double negation elimination from excluded middle and "
                           "weakening on the right", p,
                           (E("MLplus_WR", True), E("MLplus", False, Rule.WeakeningRight, wr),
                            E("LJ", False, Rule.Tnd)))
    if entry_id == "S21-A":
        p = tnd_by_rule(a)
        return CorpusEntry("S21-a", "excluded middle by the case-split rule", p,
                           (E("MLplus", True), E("MLplus_WR", True), E("ML", False, Rule.Tnd, ()),
                            E("LJ", False, Rule.Tnd, ())))
    if entry_id == "S21-B":
        p = tnd_rule_in_lk(a, (), (b,))
        return CorpusEntry("S21-b", "the case-split rule simulated in LK (Gamma empty, Delta = B)", p,
                           (E("LK", True), E("LJ", False)), hypotheses=_hyps(p))
    raise KeyError(entry_id)


ENTRY_IDS = ("L1-fwd", "L1-conv", "L2-1a", "L2-1b", "L2-2", "S21-a", "S21-b")


def instantiate(entry_id: str, a: Formula, b: Formula) -> CorpusEntry:
    """Rebuild entry ``entry_id`` with ``A := a`` and ``B := b``."""
    return _build(entry_id.upper(), a, b)


def load_corpus() -> list:
    p, q = Atom("p"), Atom("q")
    return [instantiate(i, p, q) for i in ENTRY_IDS]


def get_entry(entry_id: str) -> CorpusEntry:
    for e in load_corpus():
        if e.id.lower() == entry_id.lower():
            return e
    raise KeyError(entry_id)


def run_corpus(entries=None) -> list:
    """Return ``(entry, expectation, report, ok)`` rows for every expectation."""
    rows = []
    for e in entries if entries is not None else load_corpus():
        for exp in e.expectations:
            r = e.check(exp)
            rows.append((e, exp, r, e.holds(exp)))
    return rows


def efq_to_weakening_translation(entry: CorpusEntry) -> ProofTree:
    """Replace every EFQ initial sequent by its derivation from weakening on the right."""
    p = entry.proof
    while True:
        hit = next(((path, n) for path, n in node_paths(p)
                    if n.rule is Rule.InitialScheme and n.meta.scheme.scheme == "EFQ"), None)
        if hit is None:
            return p
        path, node = hit
        a, b = node.meta.scheme.parameters
        p = replace_at(p, path, efq_from_weakening(a, b))
