"""Cut elimination for minimal logic (with or without the case-split rule).

The work is done by :func:`cut_reduce`, a mix-style reduction: given proofs
of ``Gamma |- C`` and ``Pi |- L`` whose cuts all have degree below that of
``C``, it builds a proof of ``Gamma, Pi* |- L`` (``Pi*`` is ``Pi`` with the
selected occurrences of ``C`` deleted) whose cuts are again all of lower
degree.  It recurses on the sum of the two heights; at the bottom it meets
axioms, and when both sides introduce ``C`` it applies one of the local
principal reductions in :func:`reduce_principal`, which only create cuts on
immediate subformulas of ``C``.

:func:`eliminate_cuts` repeatedly replaces a topmost cut of maximal degree by
the output of ``cut_reduce`` until no cut is left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .formula import Formula, PreconditionViolation, Var, degree, fresh_name, print_formula
from .kernel import (
    EIGEN_RULES, ProofTree, Rule, Sequent, apply_rule, check_proof, get_profile, identity_proof,
    node_at, proof_variables, rearrange, rebuild, replace_at, substitute_proof, uses_rule,
)

__all__ = ["DeletionMask", "ALL", "TraceStep", "ReductionTrace", "CutElimError", "NotPrincipal",
           "UnsupportedProfile", "reduce_principal", "cut_reduce", "eliminate_cuts",
           "insert_detour_cut", "ELIMINABLE_RULES"]


class CutElimError(Exception):
    pass


class NotPrincipal(CutElimError):
    """The cut formula is not introduced by the last rule on both sides."""


class UnsupportedProfile(CutElimError):
    """The proof uses rules outside single-succedent minimal logic (plus the case-split rule)."""


ELIMINABLE_RULES = frozenset(Rule) - {
    Rule.WeakeningRight, Rule.ContractionRight, Rule.ExchangeRight, Rule.InitialScheme,
    Rule.Hypothesis,
}


@dataclass(frozen=True)
class DeletionMask:
    """Which occurrences of the cut formula to delete from the right antecedent.

    ``positions=None`` means all of them.
    """

    positions: Optional[frozenset] = None

    def keep(self, antecedent: Sequence[Formula], c: Formula) -> tuple:
        if self.positions is None:
            return tuple(f for f in antecedent if f != c)
        for i in self.positions:
            if not (0 <= i < len(antecedent) and antecedent[i] == c):
                raise PreconditionViolation(f"mask position {i} is not an occurrence of {print_formula(c)}")
        return tuple(f for i, f in enumerate(antecedent) if i not in self.positions)


ALL = DeletionMask()


@dataclass(frozen=True)
class TraceStep:
    call: int
    parent: Optional[int]
    kind: str
    formula: Formula
    bound: int               # degree of the cut formula; every cut produced stays below it
    heights: int             # h(left) + h(right) at this call
    parent_heights: Optional[int]
    degree_in: int
    degree_out: int

    def line(self) -> str:
        parent = "-" if self.parent is None else str(self.parent)
        ph = "-" if self.parent_heights is None else str(self.parent_heights)
        return (f"{self.call}\t{parent}\t{self.kind}\t{print_formula(self.formula)}\t"
                f"bound={self.bound}\tdeg={self.degree_in}->{self.degree_out}\t"
                f"heights={self.heights}\tparent_heights={ph}")


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    _next: int = 0

    def new_call(self) -> int:
        self._next += 1
        return self._next

    def __len__(self):
        return len(self.steps)

    def to_text(self) -> str:
        header = "call\tparent\tkind\tformula\tbound\tdegrees\theights\tparent_heights"
        return "\n".join([header] + [s.line() for s in self.steps]) + "\n"

    def violations(self) -> list:
        """Steps that break the degree contract or the decreasing-height measure."""
        by_call = {s.call: s for s in self.steps}
        bad = []
        for s in self.steps:
            if s.degree_out >= s.bound or s.degree_in >= s.bound:
                bad.append(s)
            elif s.parent is not None:
                parent = by_call.get(s.parent)
                if parent is None or parent.bound != s.bound or not s.heights < parent.heights:
                    bad.append(s)
        return bad


# ---------------------------------------------------------------------------
# principal reductions

_PAIRS = {
    Rule.NegRight: {Rule.NegLeft},
    Rule.AndRight: {Rule.AndLeft1, Rule.AndLeft2},
    Rule.OrRight1: {Rule.OrLeft},
    Rule.OrRight2: {Rule.OrLeft},
    Rule.ImpRight: {Rule.ImpLeft},
    Rule.ForAllRight: {Rule.ForAllLeft},
    Rule.ExistsRight: {Rule.ExistsLeft},
}

_NAMES = {
    (Rule.NegRight, Rule.NegLeft): "principal-neg",
    (Rule.AndRight, Rule.AndLeft1): "principal-and1",
    (Rule.AndRight, Rule.AndLeft2): "principal-and2",
    (Rule.OrRight1, Rule.OrLeft): "principal-or1",
    (Rule.OrRight2, Rule.OrLeft): "principal-or2",
    (Rule.ImpRight, Rule.ImpLeft): "principal-imp",
    (Rule.ForAllRight, Rule.ForAllLeft): "principal-forall",
    (Rule.ExistsRight, Rule.ExistsLeft): "principal-exists",
}


def _cut(left: ProofTree, right: ProofTree) -> ProofTree:
    return apply_rule(Rule.Cut, premises=[left, right])


def _is_principal_pair(left: ProofTree, right: ProofTree, c: Formula) -> bool:
    return (left.rule in _PAIRS and right.rule in _PAIRS[left.rule]
            and left.succedent == (c,) and right.antecedent[:1] == (c,))


def reduce_principal(cut_node: ProofTree) -> ProofTree:
    """Replace a cut whose formula is introduced on both sides by cuts on its
    immediate subformulas.  The end-sequent is unchanged."""
    if cut_node.rule is not Rule.Cut:
        raise NotPrincipal(f"not a cut: {cut_node.rule}")
    left, right = cut_node.premises
    c = cut_node.meta.formula
    if not _is_principal_pair(left, right, c):
        raise NotPrincipal(f"{left.rule} / {right.rule} do not both introduce {print_formula(c)}")
    target = cut_node.antecedent
    R = Rule
    if left.rule is R.NegRight:
        # A, G |-  /  P |- A   ~>   cut on A
        out = _cut(right.premises[0], left.premises[0])
    elif left.rule is R.AndRight:
        i = 0 if right.rule is R.AndLeft1 else 1
        out = _cut(left.premises[i], right.premises[0])
    elif left.rule in (R.OrRight1, R.OrRight2):
        i = 0 if left.rule is R.OrRight1 else 1
        out = _cut(left.premises[0], right.premises[i])
    elif left.rule is R.ImpRight:
        # A, G |- B  with  P1 |- A  and  B, P2 |- L   ~>   cut on A, then on B
        first = _cut(right.premises[0], left.premises[0])
        out = _cut(first, right.premises[1])
    elif left.rule is R.ForAllRight:
        a, t = left.meta.eigen, right.meta.term
        out = _cut(_instantiate(left.premises[0], a, t, right), right.premises[0])
    else:
        a, t = right.meta.eigen, left.meta.term
        out = _cut(left.premises[0], _instantiate(right.premises[0], a, t, left))
    return rearrange(out, target)


def _instantiate(p: ProofTree, a: str, t, other: ProofTree) -> ProofTree:
    avoid = proof_variables(p) | proof_variables(other)
    return substitute_proof(p, a, t, avoid)


# ---------------------------------------------------------------------------
# mix-style reduction

# premises whose succedent carries the conclusion's succedent, for left-side permutation
_CARRY = {Rule.ImpLeft: (1,), Rule.Cut: (1,), Rule.OrLeft: (0, 1), Rule.Tnd: (0, 1)}
# number of active antecedent formulas at the head of each premise
_ACTIVE = {
    Rule.AndLeft1: (1,), Rule.AndLeft2: (1,), Rule.OrLeft: (1, 1), Rule.ImpLeft: (0, 1),
    Rule.NegLeft: (0,), Rule.ForAllLeft: (1,), Rule.ExistsLeft: (1,), Rule.AndRight: (0, 0),
    Rule.OrRight1: (0,), Rule.OrRight2: (0,), Rule.ImpRight: (1,), Rule.NegRight: (1,),
    Rule.ForAllRight: (0,), Rule.ExistsRight: (0,), Rule.Tnd: (1, 1), Rule.Cut: (0, 1),
}
_SHARED_CONTEXT = frozenset({Rule.AndRight, Rule.OrLeft, Rule.Tnd})


class _Reducer:
    def __init__(self, c: Formula, trace: Optional[ReductionTrace], avoid: set):
        self.c = c
        self.bound = degree(c)
        self.trace = trace if trace is not None else ReductionTrace()
        self.avoid = avoid

    def fresh(self, base: str) -> str:
        name = fresh_name(base, self.avoid)
        self.avoid.add(name)
        return name

    def rename_eigen(self, p: ProofTree, clash: set) -> ProofTree:
        """Rename ``p``'s own eigenvariable away from ``clash``."""
        if p.rule not in EIGEN_RULES or p.meta.eigen not in clash:
            return p
        a = p.meta.eigen
        b = self.fresh(a)
        prem = substitute_proof(p.premises[0], a, Var(b), self.avoid)
        return apply_rule(p.rule, p.meta, [prem], eigen=b)

    def mix(self, pi: ProofTree, pi2: ProofTree, parent: Optional[tuple] = None) -> ProofTree:
        c = self.c
        call = self.trace.new_call()
        hsum = pi.height + pi2.height
        if parent is not None and not hsum < parent[1]:
            raise AssertionError("height measure did not decrease")
        gamma = pi.antecedent
        rest = tuple(f for f in pi2.antecedent if f != c)
        target = gamma + rest
        me = (call, hsum)

        if c not in pi2.antecedent:
            kind, out = "absorb-weaken", rearrange(pi2, target)
        elif pi.rule is Rule.Axiom:
            kind, out = "axiom-left", rearrange(pi2, (c,) + rest)
        elif pi2.rule is Rule.Axiom:
            kind, out = "axiom-right", pi
        elif pi.rule not in _PAIRS:
            kind, out = "permute-left", self.permute_left(pi, pi2, me)
        elif not (pi2.rule in _PAIRS[pi.rule] and pi2.antecedent[0] == c):
            kind, out = "permute-right", self.permute_right(pi, pi2, me, target)
        else:
            kind = _NAMES[(pi.rule, pi2.rule)]
            out = self.principal(pi, pi2, me, target)

        if out.conclusion != Sequent(target, pi2.succedent):
            raise AssertionError(f"{kind}: produced {out.conclusion}, wanted {Sequent(target, pi2.succedent)}")
        if out.degree >= self.bound:
            raise AssertionError(f"{kind}: output degree {out.degree} not below {self.bound}")
        self.trace.steps.append(TraceStep(
            call, parent[0] if parent else None, kind, c, self.bound, hsum,
            parent[1] if parent else None, max(pi.degree, pi2.degree), out.degree))
        return out

    def permute_left(self, pi: ProofTree, pi2: ProofTree, me) -> ProofTree:
        # pi ends in a rule that does not introduce C on the right: push the
        # reduction into the premise(s) carrying C and reapply the rule.
        pi = self.rename_eigen(pi, proof_variables(pi2))
        carry = _CARRY.get(pi.rule, (0,))
        premises = [self.mix(q, pi2, me) if i in carry else q for i, q in enumerate(pi.premises)]
        return rebuild(pi, premises)

    def _reduce_premises(self, pi: ProofTree, node: ProofTree, me, force_all: bool) -> list:
        out = []
        for j, (q, k) in enumerate(zip(node.premises, _ACTIVE[node.rule])):
            if not force_all and self.c not in q.antecedent:
                out.append(q)
                continue
            sub = self.mix(pi, q, me)
            active = q.antecedent[:k]
            rest = tuple(f for f in q.antecedent[k:] if f != self.c)
            out.append(rearrange(sub, active + pi.antecedent + rest))
        return out

    def permute_right(self, pi: ProofTree, pi2: ProofTree, me, target) -> ProofTree:
        # pi2's last rule does not act on an occurrence of C
        if pi2.rule in (Rule.WeakeningLeft, Rule.ContractionLeft, Rule.ExchangeLeft):
            return rearrange(self.mix(pi, pi2.premises[0], me), target)
        pi2 = self.rename_eigen(pi2, proof_variables(pi))
        force = pi2.rule in _SHARED_CONTEXT and any(self.c in q.antecedent for q in pi2.premises)
        premises = self._reduce_premises(pi, pi2, me, force)
        return rearrange(rebuild(pi2, premises), target)

    def principal(self, pi: ProofTree, pi2: ProofTree, me, target) -> ProofTree:
        # both sides introduce C: first clear the other occurrences of C from
        # pi2's premises, then apply the local reduction.
        pi2 = self.rename_eigen(pi2, proof_variables(pi))
        if any(self.c in q.antecedent[k:] for q, k in zip(pi2.premises, _ACTIVE[pi2.rule])):
            force = pi2.rule in _SHARED_CONTEXT
            pi2 = rebuild(pi2, self._reduce_premises(pi, pi2, me, force))
        reduced = reduce_principal(_cut(pi, pi2))
        return rearrange(reduced, target)


def _check_eliminable(p: ProofTree, what: str):
    if uses_rule(p, frozenset(Rule) - ELIMINABLE_RULES):
        raise UnsupportedProfile(f"{what} proof uses rules outside ML/MLplus or initial-sequent schemes")


def cut_reduce(pi: ProofTree, pi2: ProofTree, c: Formula, mask: DeletionMask = ALL,
               trace: Optional[ReductionTrace] = None) -> ProofTree:
    """Proof of ``Gamma, Pi - C |- L`` from ``pi: Gamma |- C`` and ``pi2: Pi |- L``.

    Both inputs must have degree below ``degree(c)``; so does the result.
    Occurrences of ``C`` in ``Pi`` that ``mask`` keeps are restored by
    weakening at the end.
    """
    if pi.succedent != (c,):
        raise PreconditionViolation(f"left proof must conclude {print_formula(c)}, got {pi.conclusion}")
    bound = degree(c)
    for name, p in (("left", pi), ("right", pi2)):
        if p.degree >= bound:
            raise PreconditionViolation(f"{name} proof has degree {p.degree}, needs < {bound}")
        if len(p.succedent) > 1:
            raise UnsupportedProfile(f"{name} proof is multi-succedent")
        _check_eliminable(p, name)
    kept = mask.keep(pi2.antecedent, c)
    avoid = proof_variables(pi) | proof_variables(pi2)
    out = _Reducer(c, trace, avoid).mix(pi, pi2)
    return rearrange(out, pi.antecedent + kept)


def _eliminate_degree(p: ProofTree, n: int, trace: ReductionTrace) -> ProofTree:
    if p.degree < n:
        return p
    premises = [_eliminate_degree(q, n, trace) for q in p.premises]
    if p.rule is Rule.Cut and degree(p.meta.formula) == n:
        left, right = premises
        out = cut_reduce(left, right, p.meta.formula, ALL, trace)
        return rearrange(out, p.antecedent)
    return rebuild(p, premises)


def eliminate_cuts(p: ProofTree, profile="MLplus") -> tuple:
    """Return ``(cut_free_proof, trace)`` with the same end-sequent as ``p``."""
    profile = get_profile(profile)
    if profile.name not in ("ML", "MLplus"):
        raise UnsupportedProfile(f"cut elimination is implemented for ML and MLplus, not {profile.name}")
    report = check_proof(p, profile)
    if not report.valid:
        raise PreconditionViolation(f"input proof is not valid in {profile.name}: {report}")
    _check_eliminable(p, "input")
    trace = ReductionTrace()
    while p.degree > 0:
        p = _eliminate_degree(p, p.degree, trace)
    return p, trace


def insert_detour_cut(p: ProofTree, at: Sequence[int] = (), expand: bool = False) -> ProofTree:
    """Splice a cut against an identity proof below the node at ``at``.

    The node ``G |- A`` becomes ``cut(G |- A, A |- A)``; with ``expand`` the
    identity is built from atomic axioms so the new cut has to be reduced
    through principal steps rather than absorbed by an axiom.
    """
    try:
        node = node_at(p, at)
    except (IndexError, TypeError):
        raise PreconditionViolation(f"no node at path {tuple(at)}") from None
    if not node.succedent:
        raise PreconditionViolation(f"node at {tuple(at)} has an empty succedent")
    a = node.succedent[-1]
    ident = identity_proof(a) if expand else apply_rule(Rule.Axiom, formula=a)
    return replace_at(p, tuple(at), _cut(node, ident))
