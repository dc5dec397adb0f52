"""Underivability certificates and bounded cut-free proof search.

Three tools live here:

* the positivity criterion: a cut-free MLplus proof of ``Gamma |- B`` with
  ``B`` atomic needs some formula of ``Gamma`` containing ``B`` outside the
  scope of every negation (:func:`positivity_witness`,
  :func:`lemma4_unprovability`);
* :func:`backward_search`, a complete root-first search over cut-free
  propositional proofs with loop checking and a depth limit;
* :func:`enumerate_cutfree_proofs`, a brute-force generator of small
  cut-free proofs used to test the positivity criterion empirically.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .formula import (
    And, Atom, Formula, Imp, Neg, Or, PreconditionViolation, degree, is_propositional,
    match_scheme, positive_occurrences, print_formula, subformulas,
)
from .kernel import (
    CalculusProfile, ProofTree, Rule, Sequent, apply_rule, get_profile, rearrange,
)

__all__ = ["Certificate", "positivity_witness", "lemma4_unprovability", "backward_search",
           "SearchStats", "enumerate_cutfree_proofs", "formula_universe"]

POSITIVITY = "PositivityWitness"
LEMMA4 = "UnprovableByLemma4"
EXHAUSTED = "UnprovableByExhaustion"
FOUND = "ProvableBySearch"
LIMIT = "LimitReached"


@dataclass
class SearchStats:
    nodes: int = 0
    loop_hits: int = 0
    memo_hits: int = 0
    deepest: int = 0
    truncated: int = 0
    dropped_copies: int = 0
    refutations: int = 0

    def __str__(self):
        return (f"nodes={self.nodes} loop_hits={self.loop_hits} memo_hits={self.memo_hits} "
                f"deepest={self.deepest} truncated={self.truncated} dropped_copies={self.dropped_copies} "
                f"refutations={self.refutations}")


@dataclass(frozen=True)
class Certificate:
    kind: str
    sequent: Optional[Sequent] = None
    profile: Optional[str] = None
    formula: Optional[Formula] = None
    path: tuple = ()
    checked: tuple = ()
    proof: Optional[ProofTree] = None
    stats: Optional[SearchStats] = None
    limits: dict = field(default_factory=dict)
    basis: str = ""

    def to_text(self) -> str:
        lines = [f"kind: {self.kind}"]
        if self.sequent is not None:
            lines.append(f"sequent: {self.sequent}")
        if self.profile is not None:
            lines.append(f"profile: {self.profile}")
        if self.formula is not None:
            lines.append(f"witness: {print_formula(self.formula)}")
            lines.append("path: " + (".".join(map(str, self.path)) or "root"))
        if self.checked:
            lines.append("checked: " + ", ".join(print_formula(f) for f in self.checked))
        if self.limits:
            lines.append("limits: " + " ".join(f"{k}={v}" for k, v in self.limits.items()))
        if self.stats is not None:
            lines.append(f"stats: {self.stats}")
        if self.proof is not None:
            lines.append(f"proof: height={self.proof.height} degree={self.proof.degree}")
        if self.basis:
            lines.append(f"basis: {self.basis}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


# ---------------------------------------------------------------------------
# positivity

def positivity_witness(gamma: Sequence[Formula], b: Formula) -> Optional[tuple]:
    """First ``F`` in ``gamma`` with ``b`` under no negation, with the path to it."""
    if not isinstance(b, Atom):
        raise PreconditionViolation(f"{print_formula(b)} is not atomic")
    for f in gamma:
        path = next(positive_occurrences(f, b), None)
        if path is not None:
            return f, path
    return None


def lemma4_unprovability(s: Sequent) -> Optional[Certificate]:
    """Certificate that ``s`` has no MLplus proof, when the criterion applies.

    Returns ``None`` when there is no verdict: either the succedent is not a
    single atom, or the antecedent does supply a positive occurrence.
    """
    if len(s.succedent) != 1 or not isinstance(s.succedent[0], Atom):
        return None
    if positivity_witness(s.antecedent, s.succedent[0]) is not None:
        return None
    return Certificate(
        LEMMA4, s, "MLplus", checked=s.antecedent,
        basis=(f"no antecedent formula contains {print_formula(s.succedent[0])} outside the scope "
               "of a negation; every cut-free MLplus proof of an atomic succedent needs one, and "
               "MLplus (hence ML) admits cut elimination. This is a proved criterion, not a search."))


# ---------------------------------------------------------------------------
# backward search

def _key(ante) -> tuple:
    return tuple(sorted(ante, key=print_formula))


class _Search:
    def __init__(self, root: Sequent, profile: CalculusProfile, max_copies: int, max_depth: int):
        self.profile = profile
        self.max_copies = max_copies
        self.max_depth = max_depth
        self.stats = SearchStats()
        self.proved: dict = {}
        self.failed: set = set()
        self.branch: dict = {}
        subs = []
        for f in root.formulas():
            for g in subformulas(f):
                if g not in subs:
                    subs.append(g)
        # smallest first: splitting on an atom usually settles a goal soonest
        self.split_formulas = sorted(
            (g for g in subs if not isinstance(g, Neg) or g.body not in subs), key=degree) \
            if profile.allows(Rule.Tnd) else []

    def add(self, ante: tuple, *fs) -> Optional[tuple]:
        out = list(ante)
        for f in fs:
            if out.count(f) < self.max_copies:
                out.append(f)
            else:
                self.stats.dropped_copies += 1
        return _key(out)

    # Each alternative is (rule, meta fields, premise goals, builder); the
    # builder turns premise proofs into a proof whose antecedent is a
    # rearrangement of the goal's.

    def alternatives(self, ante: tuple, succ: tuple):
        prof = self.profile
        if succ:
            d = succ[0]
            if d in ante:
                yield "axiom", (), lambda: apply_rule(Rule.Axiom, formula=d)
            for scheme in prof.schemes:
                inst = match_scheme(scheme, d)
                if inst is not None:
                    yield "scheme", (), lambda inst=inst: apply_rule(Rule.InitialScheme, scheme=inst)
            if isinstance(d, Neg):
                yield "negr", [(self.add(ante, d.body), ())], \
                    lambda p: apply_rule(Rule.NegRight, premises=[_head(p, d.body)])
            elif isinstance(d, And):
                yield "andr", [(ante, (d.left,)), (ante, (d.right,))], \
                    lambda p, q: apply_rule(Rule.AndRight, premises=_same_ctx(p, q))
            elif isinstance(d, Or):
                yield "orr1", [(ante, (d.left,))], \
                    lambda p: apply_rule(Rule.OrRight1, formula=d, premises=[p])
                yield "orr2", [(ante, (d.right,))], \
                    lambda p: apply_rule(Rule.OrRight2, formula=d, premises=[p])
            elif isinstance(d, Imp):
                yield "impr", [(self.add(ante, d.left), (d.right,))], \
                    lambda p: apply_rule(Rule.ImpRight, premises=[_head(p, d.left)])
            if prof.allows(Rule.WeakeningRight):
                yield "wr", [(ante, ())], \
                    lambda p: apply_rule(Rule.WeakeningRight, formula=d, premises=[p])
        for f in dict.fromkeys(ante):
            yield from self.left(ante, succ, f)
        for a in self.split_formulas:
            if a in ante or Neg(a) in ante:
                continue
            yield "tnd", [(self.add(ante, a), succ), (self.add(ante, Neg(a)), succ)], \
                lambda p, q, a=a: apply_rule(Rule.Tnd, premises=_split(p, q, a))

    def left(self, ante, succ, f):
        if isinstance(f, And):
            for rule, part in ((Rule.AndLeft1, f.left), (Rule.AndLeft2, f.right)):
                if part in ante:
                    continue
                yield rule.value, [(self.add(ante, part), succ)], \
                    lambda p, rule=rule, part=part: apply_rule(rule, formula=f, premises=[_head(p, part)])
        elif isinstance(f, Or):
            if f.left in ante or f.right in ante:
                return
            yield "orl", [(self.add(ante, f.left), succ), (self.add(ante, f.right), succ)], \
                lambda p, q: apply_rule(Rule.OrLeft, premises=_split(p, q, f.left, f.right))
        elif isinstance(f, Imp):
            if f.right in ante:
                return
            yield "impl", [(ante, (f.left,)), (self.add(ante, f.right), succ)], \
                lambda p, q: apply_rule(Rule.ImpLeft, premises=[p, _head(q, f.right)])
        elif isinstance(f, Neg) and not succ:
            yield "negl", [(ante, (f.body,))], lambda p: apply_rule(Rule.NegLeft, premises=[p])

    def prove(self, ante: tuple, succ: tuple, depth: int):
        """Return ``(proof or None, lowest ancestor depth a loop check referred to)``."""
        goal = (ante, succ)
        st = self.stats
        st.nodes += 1
        st.deepest = max(st.deepest, depth)
        if goal in self.proved:
            st.memo_hits += 1
            return self.proved[goal], depth + 1
        if goal in self.failed:
            st.memo_hits += 1
            return None, depth + 1
        if goal in self.branch:
            st.loop_hits += 1
            return None, self.branch[goal]
        if depth >= self.max_depth:
            st.truncated += 1
            return None, -1
        self.branch[goal] = depth
        low = depth + 1
        found = None
        refuted = False
        for _name, premises, build in self.alternatives(ante, succ):
            if not premises:
                found = build()
                break
            subproofs = []
            for pa, ps in premises:
                sub, sub_low = self.prove(pa, ps, depth + 1)
                low = min(low, sub_low)
                if sub is None:
                    # a weakening of the goal that fails on its own refutes the goal
                    refuted = sub_low > depth + 1 and ps == succ and _contains(pa, ante)
                    break
                subproofs.append(sub)
            else:
                found = build(*subproofs)
                break
            if refuted:
                st.refutations += 1
                low = depth + 1
                break
        del self.branch[goal]
        if found is not None:
            found = rearrange(found, ante)
            self.proved[goal] = found
        elif low >= depth:
            # no truncation and no loop check pointing above this node; a
            # proof revisiting the goal itself could be shortened, so a
            # loop back to it does not count
            self.failed.add(goal)
            low = depth + 1
        return found, low


def _contains(big: tuple, small: tuple) -> bool:
    return all(big.count(f) >= small.count(f) for f in set(small))


def _head(p: ProofTree, f: Formula) -> ProofTree:
    """Bring one copy of ``f`` to the front, weakening it in if absent."""
    ante = list(p.antecedent)
    if f in ante:
        ante.remove(f)
    return rearrange(p, (f,) + tuple(ante))


def _same_ctx(*ps: ProofTree) -> list:
    ctx = _union(*(p.antecedent for p in ps))
    return [rearrange(p, ctx) for p in ps]


def _union(*antes) -> tuple:
    out = []
    for ante in antes:
        for f in ante:
            if out.count(f) < ante.count(f):
                out.append(f)
    return tuple(out)


def _split(p: ProofTree, q: ProofTree, a: Formula, b: Optional[Formula] = None) -> list:
    b = Neg(a) if b is None else b
    p, q = _head(p, a), _head(q, b)
    ctx = _union(p.antecedent[1:], q.antecedent[1:])
    return [rearrange(p, (a,) + ctx), rearrange(q, (b,) + ctx)]


def backward_search(s: Sequent, profile="ML", max_copies: int = 2, max_depth: int = 40) -> Certificate:
    """Search for a cut-free proof of the propositional sequent ``s``.

    Antecedents are treated as multisets and left rules keep their principal
    formula, so contraction is never needed explicitly; a component already
    present ``max_copies`` times is not added again.  A goal repeated on the
    current branch fails (loop check).  Initial-sequent schemes are matched
    against the succedent formula only.

    Failures that do not depend on a loop check above the failing goal are
    memoised.  When a premise that only adds antecedent formulas to the goal
    fails that way, the goal fails too, since left weakening is admissible,
    and no further alternatives are tried.
    """
    profile = get_profile(profile)
    if profile.multi_succedent:
        raise PreconditionViolation(f"search supports single-succedent profiles, not {profile.name}")
    if len(s.succedent) > 1:
        raise PreconditionViolation("search needs a succedent of at most one formula")
    if not all(is_propositional(f) for f in s.formulas()):
        raise PreconditionViolation("search is propositional; the sequent contains a quantifier")
    search = _Search(s, profile, max_copies, max_depth)
    proof, _ = search.prove(_key(s.antecedent), tuple(s.succedent), 0)
    limits = {"max_copies": max_copies, "max_depth": max_depth}
    if proof is not None:
        proof = rearrange(proof, s.antecedent)
        return Certificate(FOUND, s, profile.name, proof=proof, stats=search.stats, limits=limits,
                           basis="cut-free proof found; check it with check_proof")
    if search.stats.truncated:
        return Certificate(LIMIT, s, profile.name, stats=search.stats, limits=limits,
                           basis="the depth limit cut off part of the search space; no verdict")
    basis = "every cut-free rule application was tried"
    if profile.allows(Rule.Tnd):
        basis += "; excluded-middle splits were limited to subformulas of the sequent"
    if profile.schemes:
        basis += ("; scheme instances were matched against the succedent only, so this is a bound "
                  "on cut-free search in this profile rather than a proof of underivability")
    return Certificate(EXHAUSTED, s, profile.name, stats=search.stats, limits=limits, basis=basis)


# ---------------------------------------------------------------------------
# enumeration

def formula_universe(atoms) -> list:
    """Atoms, plus one application of each connective to atoms."""
    atoms = sorted((a if isinstance(a, Formula) else Atom(a) for a in atoms), key=print_formula)
    out = list(atoms) + [Neg(a) for a in atoms]
    for cls in (And, Or, Imp):
        out += [cls(a, b) for a in atoms for b in atoms]
    return out


class _Enumerator:
    def __init__(self, profile: CalculusProfile, atoms, max_antecedent: int):
        self.profile = profile
        self.universe = formula_universe(atoms)
        self.inside = set(self.universe)
        self.max_antecedent = max_antecedent
        self.multi = profile.multi_succedent

    def fits(self, ante, succ) -> bool:
        return (len(ante) <= self.max_antecedent and (self.multi or len(succ) <= 1)
                and all(f in self.inside for f in ante) and all(f in self.inside for f in succ))

    def unary(self, p: ProofTree) -> Iterator[ProofTree]:
        R, allow = Rule, self.profile.allows
        ante, succ = p.antecedent, p.succedent
        U = self.universe
        if len(ante) < self.max_antecedent:
            for f in U:
                yield apply_rule(R.WeakeningLeft, formula=f, premises=[p])
        for i in range(len(ante) - 1):
            yield apply_rule(R.ExchangeLeft, index=i, premises=[p])
        if len(ante) >= 2 and ante[0] == ante[1]:
            yield apply_rule(R.ContractionLeft, premises=[p])
        if ante:
            a = ante[0]
            for f in U:
                if isinstance(f, And) and f.left == a:
                    yield apply_rule(R.AndLeft1, formula=f, premises=[p])
                if isinstance(f, And) and f.right == a:
                    yield apply_rule(R.AndLeft2, formula=f, premises=[p])
            if not succ and Neg(a) in self.inside:
                yield apply_rule(R.NegRight, premises=[p])
            if succ and Imp(a, succ[-1]) in self.inside:
                yield apply_rule(R.ImpRight, premises=[p])
        if succ:
            d = succ[-1]
            if Neg(d) in self.inside and (self.multi or len(succ) == 1) and len(ante) < self.max_antecedent:
                yield apply_rule(R.NegLeft, premises=[p])
            for f in U:
                if isinstance(f, Or) and f.left == d:
                    yield apply_rule(R.OrRight1, formula=f, premises=[p])
                if isinstance(f, Or) and f.right == d:
                    yield apply_rule(R.OrRight2, formula=f, premises=[p])
        if allow(R.WeakeningRight) and (self.multi or not succ):
            for f in U:
                yield apply_rule(R.WeakeningRight, formula=f, premises=[p])
        if allow(R.ContractionRight) and len(succ) >= 2 and succ[-1] == succ[-2]:
            yield apply_rule(R.ContractionRight, premises=[p])
        if allow(R.ExchangeRight):
            for i in range(len(succ) - 1):
                yield apply_rule(R.ExchangeRight, index=i, premises=[p])

    def axioms(self) -> list:
        return [apply_rule(Rule.Axiom, formula=f) for f in self.universe]


def enumerate_cutfree_proofs(profile, atoms, max_height: int, max_antecedent: int = 3,
                             distinct: bool = True) -> Iterator[ProofTree]:
    """Cut-free proofs of height at most ``max_height`` over a small universe.

    Every formula in every sequent is drawn from :func:`formula_universe` and
    antecedents have at most ``max_antecedent`` formulas.  With ``distinct``
    (the default) one shortest proof is yielded per derivable end-sequent;
    otherwise every proof tree is yielded, which is only feasible for very
    small heights.  Proofs come out in order of increasing height.
    """
    profile = get_profile(profile)
    atoms = {a if isinstance(a, Formula) else Atom(a) for a in atoms}
    en = _Enumerator(profile, atoms, max_antecedent)
    if max_height < 1:
        return
    level = en.axioms()
    seen = {p.conclusion for p in level}
    older: list = []
    yield from level
    for _h in range(2, max_height + 1):
        fresh = []

        def accept(t):
            if not en.fits(t.antecedent, t.succedent):
                return
            if distinct:
                if t.conclusion in seen:
                    return
                seen.add(t.conclusion)
            fresh.append(t)

        for p in level:
            for t in en.unary(p):
                accept(t)
        _join(en, level, older, accept)
        older = older + level
        level = fresh
        yield from fresh
        if not fresh:
            return


def _join(en: _Enumerator, new: list, old: list, accept):
    """Binary rule instances with at least one premise from ``new``.

    Only atoms can sit under a connective in the universe, so each rule's
    partner premise is found by direct lookup.
    """
    atoms = [f for f in en.universe if isinstance(f, Atom)]
    new_ids = {id(t) for t in new}
    by_seq = defaultdict(list)
    heads = (defaultdict(list), defaultdict(list))   # (all, new only), keyed by (head, length)
    for t in old + new:
        by_seq[t.conclusion].append(t)
        if t.antecedent:
            key = (t.antecedent[0], len(t.antecedent))
            heads[0][key].append(t)
            if id(t) in new_ids:
                heads[1][key].append(t)
    tnd = en.profile.allows(Rule.Tnd)

    def emit(rule, p, q):
        if id(p) in new_ids or id(q) in new_ids:
            accept(apply_rule(rule, premises=[p, q]))

    for p in old + new:
        pa, ps = p.antecedent, p.succedent
        if ps and isinstance(ps[-1], Atom):
            for b in atoms:
                for q in by_seq.get(Sequent(pa, ps[:-1] + (b,)), ()):
                    emit(Rule.AndRight, p, q)
            if en.multi or len(ps) == 1:
                partners = heads[0 if id(p) in new_ids else 1]
                for b in atoms:
                    for n in range(1, en.max_antecedent - len(pa) + 1):
                        for q in partners.get((b, n), ()):
                            emit(Rule.ImpLeft, p, q)
        if pa and isinstance(pa[0], Atom):
            for b in atoms:
                for q in by_seq.get(Sequent((b,) + pa[1:], ps), ()):
                    emit(Rule.OrLeft, p, q)
            if tnd:
                for q in by_seq.get(Sequent((Neg(pa[0]),) + pa[1:], ps), ()):
                    emit(Rule.Tnd, p, q)
