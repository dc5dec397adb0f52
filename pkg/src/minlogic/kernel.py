"""Sequents, proof trees, calculus profiles and the proof checker.

Antecedents are ordered.  Left rules act on the head of the antecedent,
right rules on the last succedent formula, and reordering is done with
explicit exchange steps.  Every node is built through :func:`apply_rule`,
which computes the conclusion from the premises, so a tree assembled that
way is locally valid by construction; :func:`check_proof` re-derives each
node's conclusion and additionally enforces the profile's rule set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .formula import (
    And, Atom, Exists, ForAll, Formula, Imp, Neg, Or, SchemeInstance,
    Term, Var, _subst_term, all_variables, alpha_equivalent, degree, free_variables, fresh_name,
    parse_sequent_parts, print_formula, print_term, substitute, term_variables,
)

__all__ = [
    "Sequent", "Rule", "Meta", "ProofTree", "CalculusProfile", "CheckReport",
    "SchemaMismatch", "EigenvariableViolation", "PROFILES", "get_profile",
    "parse_sequent", "apply_rule", "conclude", "check_proof", "height", "proof_degree",
    "cut_count", "rearrange", "identity_proof", "substitute_proof", "proof_variables",
    "node_at", "replace_at", "node_paths", "rebuild", "uses_rule",
]


class SchemaMismatch(ValueError):
    """Premises or metadata do not instantiate the requested rule."""


class EigenvariableViolation(SchemaMismatch):
    """The eigenvariable of a forall-right or exists-left step occurs free in its conclusion."""


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple = ()
    succedent: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(self.antecedent))
        object.__setattr__(self, "succedent", tuple(self.succedent))

    def __str__(self):
        left = ", ".join(print_formula(f) for f in self.antecedent)
        right = ", ".join(print_formula(f) for f in self.succedent)
        return f"{left} |- {right}".strip()

    def formulas(self):
        return self.antecedent + self.succedent

    def free_variables(self) -> set:
        out = set()
        for f in self.formulas():
            out |= free_variables(f)
        return out


def parse_sequent(text: str) -> Sequent:
    ante, succ = parse_sequent_parts(text)
    return Sequent(tuple(ante), tuple(succ))


class Rule(enum.Enum):
    Axiom = "Axiom"
    Cut = "Cut"
    WeakeningLeft = "WeakeningLeft"
    WeakeningRight = "WeakeningRight"
    ContractionLeft = "ContractionLeft"
    ExchangeLeft = "ExchangeLeft"
    ContractionRight = "ContractionRight"
    ExchangeRight = "ExchangeRight"
    AndLeft1 = "AndLeft1"
    AndLeft2 = "AndLeft2"
    AndRight = "AndRight"
    OrLeft = "OrLeft"
    OrRight1 = "OrRight1"
    OrRight2 = "OrRight2"
    ImpLeft = "ImpLeft"
    ImpRight = "ImpRight"
    NegLeft = "NegLeft"
    NegRight = "NegRight"
    ForAllLeft = "ForAllLeft"
    ForAllRight = "ForAllRight"
    ExistsLeft = "ExistsLeft"
    ExistsRight = "ExistsRight"
    Tnd = "Tnd"
    InitialScheme = "InitialScheme"
    # open premise of a derived rule; only valid against declared hypotheses
    Hypothesis = "Hypothesis"

    def __str__(self):
        return self.value


ARITY = {r: 1 for r in Rule}
ARITY.update({r: 0 for r in (Rule.Axiom, Rule.InitialScheme, Rule.Hypothesis)})
ARITY.update({r: 2 for r in (Rule.Cut, Rule.AndRight, Rule.OrLeft, Rule.ImpLeft, Rule.Tnd)})

LEFT_LOGICAL = frozenset({Rule.AndLeft1, Rule.AndLeft2, Rule.OrLeft, Rule.ImpLeft, Rule.NegLeft,
                          Rule.ForAllLeft, Rule.ExistsLeft})
RIGHT_LOGICAL = frozenset({Rule.AndRight, Rule.OrRight1, Rule.OrRight2, Rule.ImpRight,
                           Rule.NegRight, Rule.ForAllRight, Rule.ExistsRight})
STRUCTURAL_LEFT = frozenset({Rule.WeakeningLeft, Rule.ContractionLeft, Rule.ExchangeLeft})
EIGEN_RULES = frozenset({Rule.ForAllRight, Rule.ExistsLeft})
TERM_RULES = frozenset({Rule.ForAllLeft, Rule.ExistsRight})


@dataclass(frozen=True)
class Meta:
    """Rule-specific node metadata.

    ``formula`` is the principal formula (the cut formula for Cut, the
    case-split formula for Tnd, the added formula for weakening);
    ``index`` the exchange position; ``term`` the witness of forall-left and
    exists-right; ``eigen`` the eigenvariable of forall-right and
    exists-left; ``scheme`` the instance of an initial-sequent scheme;
    ``sequent`` the assumed sequent of a Hypothesis leaf.
    """

    formula: Optional[Formula] = None
    index: Optional[int] = None
    term: Optional[Term] = None
    eigen: Optional[str] = None
    scheme: Optional[SchemeInstance] = None
    sequent: Optional[Sequent] = None

    def __str__(self):
        parts = []
        if self.formula is not None:
            parts.append(print_formula(self.formula))
        if self.index is not None:
            parts.append(f"index={self.index}")
        if self.term is not None:
            parts.append(f"term={print_term(self.term)}")
        if self.eigen is not None:
            parts.append(f"eigen={self.eigen}")
        if self.scheme is not None:
            parts.append(str(self.scheme))
        return "; ".join(parts)


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: Rule
    meta: Meta = Meta()
    premises: tuple = ()
    height: int = field(init=False, compare=False, repr=False)
    degree: int = field(init=False, compare=False, repr=False)
    cuts: int = field(init=False, compare=False, repr=False)
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        ps = self.premises
        h = 1 + max((p.height for p in ps), default=0)
        d = max((p.degree for p in ps), default=0)
        n = sum(p.cuts for p in ps)
        if self.rule is Rule.Cut:
            if self.meta.formula is not None:
                d = max(d, degree(self.meta.formula))
            n += 1
        object.__setattr__(self, "height", h)
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "cuts", n)
        object.__setattr__(self, "_hash", hash((self.conclusion, self.rule, self.meta, ps)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.rule}: {self.conclusion}"

    @property
    def antecedent(self):
        return self.conclusion.antecedent

    @property
    def succedent(self):
        return self.conclusion.succedent


# ---------------------------------------------------------------------------
# profiles

_CORE = frozenset(Rule) - {Rule.WeakeningRight, Rule.ContractionRight, Rule.ExchangeRight,
                           Rule.Tnd, Rule.InitialScheme, Rule.Hypothesis}


@dataclass(frozen=True)
class CalculusProfile:
    name: str
    rules: frozenset
    schemes: frozenset = frozenset()
    multi_succedent: bool = False

    def __str__(self):
        return self.name

    def allows(self, rule: Rule) -> bool:
        if rule is Rule.Hypothesis:
            return True
        if rule is Rule.InitialScheme:
            return bool(self.schemes)
        return rule in self.rules

    def extends(self, other: "CalculusProfile") -> bool:
        """True when every proof valid under ``other`` is valid under ``self``."""
        return (self.rules >= other.rules and self.schemes >= other.schemes
                and (self.multi_succedent or not other.multi_succedent))


def _profile(name, extra=(), schemes=(), multi=False):
    return CalculusProfile(name, _CORE | frozenset(extra), frozenset(schemes), multi)


PROFILES = {
    p.name: p for p in (
        _profile("ML"),
        _profile("MLplus", [Rule.Tnd]),
        _profile("LJ", [Rule.WeakeningRight]),
        _profile("LK", [Rule.WeakeningRight, Rule.ContractionRight, Rule.ExchangeRight], multi=True),
        _profile("ML_EFQ", [Rule.InitialScheme], ["EFQ"]),
        _profile("ML_DNE", [Rule.InitialScheme], ["DNE"]),
        _profile("MLplus_WR", [Rule.Tnd, Rule.WeakeningRight]),
    )
}


def get_profile(name) -> CalculusProfile:
    if isinstance(name, CalculusProfile):
        return name
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; known: {', '.join(PROFILES)}") from None


# ---------------------------------------------------------------------------
# rule schemas

def _expect(cond, msg):
    if not cond:
        raise SchemaMismatch(msg)


def _show(fs):
    return ", ".join(print_formula(f) for f in fs) or "(empty)"


def _head(seq: Sequent, rule: Rule):
    _expect(seq.antecedent, f"{rule}: premise antecedent is empty")
    return seq.antecedent[0], seq.antecedent[1:]


def _last(seq: Sequent, rule: Rule):
    _expect(seq.succedent, f"{rule}: premise succedent is empty")
    return seq.succedent[:-1], seq.succedent[-1]


def _principal(meta: Meta, kind, rule: Rule):
    f = meta.formula
    _expect(isinstance(f, kind), f"{rule}: principal formula must be a {kind.__name__}, got "
            f"{print_formula(f) if f is not None else 'nothing'}")
    return f


def _same(actual, expected, rule: Rule, what: str):
    _expect(actual == expected, f"{rule}: {what} is {print_formula(actual)}, schema needs "
            f"{print_formula(expected)}")


def _instance(actual, quant, t: Term, rule: Rule):
    inst = substitute(quant.body, quant.variable, t)
    _expect(alpha_equivalent(actual, inst), f"{rule}: premise formula {print_formula(actual)} is not "
            f"{print_formula(quant)} instantiated at {print_term(t)}")


def conclude(rule: Rule, meta: Meta, premises: Sequence[Sequent]) -> tuple:
    """Return ``(conclusion, normalized meta)`` for one rule instance.

    Raises :class:`SchemaMismatch` when the premises and metadata do not fit
    the rule's schema.
    """
    _expect(len(premises) == ARITY[rule], f"{rule}: expects {ARITY[rule]} premise(s), got {len(premises)}")
    R = Rule
    if rule is R.Axiom:
        _expect(meta.formula is not None, "Axiom: missing formula")
        return Sequent((meta.formula,), (meta.formula,)), meta
    if rule is R.InitialScheme:
        _expect(meta.scheme is not None, "InitialScheme: missing scheme instance")
        return Sequent((), (meta.scheme.formula,)), meta
    if rule is R.Hypothesis:
        _expect(meta.sequent is not None, "Hypothesis: missing sequent")
        return meta.sequent, meta

    if len(premises) == 1:
        (p,) = premises
        ante, succ = p.antecedent, p.succedent
    if rule is R.WeakeningLeft:
        _expect(meta.formula is not None, "WeakeningLeft: missing formula")
        return Sequent((meta.formula,) + ante, succ), meta
    if rule is R.WeakeningRight:
        _expect(meta.formula is not None, "WeakeningRight: missing formula")
        return Sequent(ante, succ + (meta.formula,)), meta
    if rule is R.ContractionLeft:
        _expect(len(ante) >= 2 and ante[0] == ante[1], "ContractionLeft: antecedent must start with two equal formulas")
        return Sequent(ante[1:], succ), replace(meta, formula=ante[0])
    if rule is R.ContractionRight:
        _expect(len(succ) >= 2 and succ[-1] == succ[-2], "ContractionRight: succedent must end with two equal formulas")
        return Sequent(ante, succ[:-1]), replace(meta, formula=succ[-1])
    if rule in (R.ExchangeLeft, R.ExchangeRight):
        side = ante if rule is R.ExchangeLeft else succ
        i = meta.index
        _expect(i is not None and 0 <= i and i + 1 < len(side), f"{rule}: index {i} out of range")
        side = side[:i] + (side[i + 1], side[i]) + side[i + 2:]
        return (Sequent(side, succ) if rule is R.ExchangeLeft else Sequent(ante, side)), meta
    if rule in (R.AndLeft1, R.AndLeft2):
        f = _principal(meta, And, rule)
        h, rest = _head(p, rule)
        _same(h, f.left if rule is R.AndLeft1 else f.right, rule, "premise head")
        return Sequent((f,) + rest, succ), meta
    if rule in (R.OrRight1, R.OrRight2):
        f = _principal(meta, Or, rule)
        delta, last = _last(p, rule)
        _same(last, f.left if rule is R.OrRight1 else f.right, rule, "premise succedent")
        return Sequent(ante, delta + (f,)), meta
    if rule is R.ImpRight:
        h, rest = _head(p, rule)
        delta, last = _last(p, rule)
        f = Imp(h, last)
        if meta.formula is not None:
            _same(meta.formula, f, rule, "declared principal")
        return Sequent(rest, delta + (f,)), replace(meta, formula=f)
    if rule is R.NegLeft:
        delta, last = _last(p, rule)
        f = Neg(last)
        if meta.formula is not None:
            _same(meta.formula, f, rule, "declared principal")
        return Sequent((f,) + ante, delta), replace(meta, formula=f)
    if rule is R.NegRight:
        h, rest = _head(p, rule)
        f = Neg(h)
        if meta.formula is not None:
            _same(meta.formula, f, rule, "declared principal")
        return Sequent(rest, succ + (f,)), replace(meta, formula=f)
    if rule in (R.ForAllLeft, R.ExistsLeft):
        f = _principal(meta, ForAll if rule is R.ForAllLeft else Exists, rule)
        h, rest = _head(p, rule)
        if rule is R.ForAllLeft:
            _expect(meta.term is not None, "ForAllLeft: missing witness term")
            _instance(h, f, meta.term, rule)
            return Sequent((f,) + rest, succ), meta
        _expect(meta.eigen is not None, "ExistsLeft: missing eigenvariable")
        _instance(h, f, Var(meta.eigen), rule)
        out = Sequent((f,) + rest, succ)
        if meta.eigen in out.free_variables():
            raise EigenvariableViolation(f"ExistsLeft: eigenvariable {meta.eigen} occurs free in the conclusion")
        return out, meta
    if rule in (R.ForAllRight, R.ExistsRight):
        f = _principal(meta, ForAll if rule is R.ForAllRight else Exists, rule)
        delta, last = _last(p, rule)
        out = Sequent(ante, delta + (f,))
        if rule is R.ExistsRight:
            _expect(meta.term is not None, "ExistsRight: missing witness term")
            _instance(last, f, meta.term, rule)
            return out, meta
        _expect(meta.eigen is not None, "ForAllRight: missing eigenvariable")
        _instance(last, f, Var(meta.eigen), rule)
        if meta.eigen in out.free_variables():
            raise EigenvariableViolation(f"ForAllRight: eigenvariable {meta.eigen} occurs free in the conclusion")
        return out, meta

    p0, p1 = premises
    if rule is R.Cut:
        gamma_delta, c = _last(p0, rule)
        c2, pi = _head(p1, rule)
        _same(c2, c, rule, "right premise head")
        if meta.formula is not None:
            _same(meta.formula, c, rule, "declared cut formula")
        return Sequent(p0.antecedent + pi, gamma_delta + p1.succedent), replace(meta, formula=c)
    if rule is R.AndRight:
        d0, a = _last(p0, rule)
        d1, b = _last(p1, rule)
        _expect(p0.antecedent == p1.antecedent and d0 == d1, "AndRight: premises must share their context")
        f = And(a, b)
        if meta.formula is not None:
            _same(meta.formula, f, rule, "declared principal")
        return Sequent(p0.antecedent, d0 + (f,)), replace(meta, formula=f)
    if rule is R.OrLeft:
        a, g0 = _head(p0, rule)
        b, g1 = _head(p1, rule)
        _expect(g0 == g1 and p0.succedent == p1.succedent, "OrLeft: premises must share their context")
        f = Or(a, b)
        if meta.formula is not None:
            _same(meta.formula, f, rule, "declared principal")
        return Sequent((f,) + g0, p0.succedent), replace(meta, formula=f)
    if rule is R.ImpLeft:
        delta, a = _last(p0, rule)
        b, pi = _head(p1, rule)
        f = Imp(a, b)
        if meta.formula is not None:
            _same(meta.formula, f, rule, "declared principal")
        return Sequent((f,) + p0.antecedent + pi, delta + p1.succedent), replace(meta, formula=f)
    if rule is R.Tnd:
        a, g0 = _head(p0, rule)
        na, g1 = _head(p1, rule)
        _expect(na == Neg(a), f"Tnd: second premise must start with {print_formula(Neg(a))}, "
                f"got {print_formula(na)}")
        _expect(g0 == g1 and p0.succedent == p1.succedent, "Tnd: premises must share their context")
        if meta.formula is not None:
            _same(meta.formula, a, rule, "declared case formula")
        return Sequent(g0, p0.succedent), replace(meta, formula=a)
    raise SchemaMismatch(f"unknown rule {rule}")


def apply_rule(rule: Rule, meta: Optional[Meta] = None, premises: Iterable[ProofTree] = (),
               **fields) -> ProofTree:
    """Build a node whose conclusion is computed from its premises.

    Metadata may be given as a :class:`Meta` or as keyword fields
    (``formula=``, ``index=``, ``term=``, ``eigen=``, ``scheme=``, ``sequent=``).
    """
    if meta is None:
        meta = Meta(**fields)
    elif fields:
        meta = replace(meta, **fields)
    premises = tuple(premises)
    conclusion, meta = conclude(rule, meta, [p.conclusion for p in premises])
    return ProofTree(conclusion, rule, meta, premises)


def rebuild(p: ProofTree, premises: Sequence[ProofTree]) -> ProofTree:
    """Reapply ``p``'s rule and metadata to new premises."""
    return apply_rule(p.rule, p.meta, premises)


# ---------------------------------------------------------------------------
# checking

@dataclass(frozen=True)
class CheckReport:
    valid: bool
    path: tuple = ()
    rule: Optional[Rule] = None
    reason: Optional[str] = None
    height: int = 0
    degree: int = 0
    cuts: int = 0

    @property
    def verdict(self) -> str:
        return "Valid" if self.valid else "Invalid"

    def __str__(self):
        stats = f"height={self.height} degree={self.degree} cuts={self.cuts}"
        if self.valid:
            return f"Valid ({stats})"
        path = ".".join(str(i) for i in self.path) or "root"
        return f"Invalid at {path} [{self.rule}]: {self.reason} ({stats})"


def _local_problem(p: ProofTree, profile: CalculusProfile, hypotheses) -> Optional[str]:
    if not profile.allows(p.rule):
        return f"{p.rule} not in profile {profile.name}"
    if p.rule is Rule.InitialScheme and p.meta.scheme is not None \
            and p.meta.scheme.scheme not in profile.schemes:
        return f"scheme {p.meta.scheme.scheme} not in profile {profile.name}"
    if p.rule is Rule.Hypothesis and p.conclusion not in hypotheses:
        return f"hypothesis {p.conclusion} is not among the declared assumptions"
    if not profile.multi_succedent and len(p.conclusion.succedent) > 1:
        return f"succedent has {len(p.conclusion.succedent)} formulas; profile {profile.name} allows at most one"
    try:
        expected, _ = conclude(p.rule, p.meta, [q.conclusion for q in p.premises])
    except SchemaMismatch as exc:
        return str(exc)
    if expected != p.conclusion:
        return f"{p.rule}: conclusion should be {expected}, found {p.conclusion}"
    return None


def check_proof(p: ProofTree, profile, hypotheses: Iterable[Sequent] = ()) -> CheckReport:
    """Check every node of ``p`` against ``profile``.

    Nodes are visited root first, premises left to right; the report names
    the first failing node by its path of premise indices.
    """
    profile = get_profile(profile)
    hypotheses = frozenset(hypotheses)
    stats = dict(height=p.height, degree=p.degree, cuts=p.cuts)
    stack = [((), p)]
    while stack:
        path, node = stack.pop()
        problem = _local_problem(node, profile, hypotheses)
        if problem is not None:
            return CheckReport(False, path, node.rule, problem, **stats)
        for i in reversed(range(len(node.premises))):
            stack.append((path + (i,), node.premises[i]))
    return CheckReport(True, **stats)


def height(p: ProofTree) -> int:
    return p.height


def proof_degree(p: ProofTree) -> int:
    """Largest cut-formula degree in ``p``; 0 exactly when ``p`` is cut-free."""
    return p.degree


def cut_count(p: ProofTree) -> int:
    return p.cuts


def uses_rule(p: ProofTree, rules) -> bool:
    rules = {rules} if isinstance(rules, Rule) else set(rules)
    stack = [p]
    while stack:
        node = stack.pop()
        if node.rule in rules:
            return True
        stack.extend(node.premises)
    return False


# ---------------------------------------------------------------------------
# navigation

def node_at(p: ProofTree, path: Sequence[int]) -> ProofTree:
    for i in path:
        if not 0 <= i < len(p.premises):
            raise IndexError(f"no premise {i} at {p}")
        p = p.premises[i]
    return p


def replace_at(p: ProofTree, path: Sequence[int], new: ProofTree) -> ProofTree:
    """Replace the subtree at ``path`` by ``new`` (same conclusion) and rebuild upward."""
    if not path:
        return new
    i = path[0]
    if not 0 <= i < len(p.premises):
        raise IndexError(f"no premise {i} at {p}")
    ps = list(p.premises)
    ps[i] = replace_at(ps[i], path[1:], new)
    return rebuild(p, ps)


def node_paths(p: ProofTree, prefix: tuple = ()):
    yield prefix, p
    for i, q in enumerate(p.premises):
        yield from node_paths(q, prefix + (i,))


# ---------------------------------------------------------------------------
# structural repair

def _move(p: ProofTree, src: int, dst: int) -> ProofTree:
    """Move antecedent position ``src`` to ``dst`` (``dst <= src``) by exchanges."""
    for i in range(src - 1, dst - 1, -1):
        if p.rule is Rule.ExchangeLeft and p.meta.index == i:
            p = p.premises[0]       # swapping twice is the identity
        else:
            p = apply_rule(Rule.ExchangeLeft, index=i, premises=[p])
    return p


def rearrange(p: ProofTree, target: Sequence[Formula]) -> ProofTree:
    """Turn ``p``'s antecedent into ``target`` with contraction, weakening and
    exchange on the left.

    Surplus copies are contracted first, missing formulas are weakened in
    at the head, then the sequence is sorted into place.  Every formula of
    the current antecedent must occur in ``target``.
    """
    target = tuple(target)
    ante = list(p.antecedent)
    if tuple(ante) == target:
        return p
    seen = []
    for f in ante:
        if f not in seen:
            seen.append(f)
    for f in seen:
        want = target.count(f)
        if want == 0:
            raise SchemaMismatch(f"cannot remove {print_formula(f)}: no rule deletes a formula")
        while ante.count(f) > want:
            first = ante.index(f)
            p = _move(p, first, 0)
            ante.insert(0, ante.pop(first))
            second = ante.index(f, 1)
            p = _move(p, second, 1)
            ante.insert(1, ante.pop(second))
            p = apply_rule(Rule.ContractionLeft, premises=[p])
            ante.pop(0)
    for f in target:
        while ante.count(f) < target.count(f):
            p = apply_rule(Rule.WeakeningLeft, formula=f, premises=[p])
            ante.insert(0, f)
    for k, f in enumerate(target):
        m = ante.index(f, k)
        if m != k:
            p = _move(p, m, k)
            ante.insert(k, ante.pop(m))
    assert tuple(ante) == target == p.antecedent
    return p


def identity_proof(f: Formula) -> ProofTree:
    """Cut-free proof of ``f |- f`` from atomic axioms only."""
    if isinstance(f, Atom):
        return apply_rule(Rule.Axiom, formula=f)
    if isinstance(f, Neg):
        inner = apply_rule(Rule.NegLeft, premises=[identity_proof(f.body)])
        inner = apply_rule(Rule.ExchangeLeft, index=0, premises=[inner])
        return apply_rule(Rule.NegRight, premises=[inner])
    if isinstance(f, And):
        a = apply_rule(Rule.AndLeft1, formula=f, premises=[identity_proof(f.left)])
        b = apply_rule(Rule.AndLeft2, formula=f, premises=[identity_proof(f.right)])
        return apply_rule(Rule.AndRight, premises=[a, b])
    if isinstance(f, Or):
        a = apply_rule(Rule.OrRight1, formula=f, premises=[identity_proof(f.left)])
        b = apply_rule(Rule.OrRight2, formula=f, premises=[identity_proof(f.right)])
        return apply_rule(Rule.OrLeft, premises=[a, b])
    if isinstance(f, Imp):
        inner = apply_rule(Rule.ImpLeft, premises=[identity_proof(f.left), identity_proof(f.right)])
        inner = apply_rule(Rule.ExchangeLeft, index=0, premises=[inner])
        return apply_rule(Rule.ImpRight, premises=[inner])
    a = fresh_name("a", all_variables(f))
    inner = identity_proof(substitute(f.body, f.variable, Var(a)))
    if isinstance(f, ForAll):
        inner = apply_rule(Rule.ForAllLeft, formula=f, term=Var(a), premises=[inner])
        return apply_rule(Rule.ForAllRight, formula=f, eigen=a, premises=[inner])
    inner = apply_rule(Rule.ExistsRight, formula=f, term=Var(a), premises=[inner])
    return apply_rule(Rule.ExistsLeft, formula=f, eigen=a, premises=[inner])


# ---------------------------------------------------------------------------
# substitution in proofs

def proof_variables(p: ProofTree) -> set:
    """All variable names in ``p``: free, bound, eigenvariables and witness terms."""
    out = set()
    seen = set()
    stack = [p]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        for f in node.conclusion.formulas():
            out |= all_variables(f)
        if node.meta.eigen is not None:
            out.add(node.meta.eigen)
        if node.meta.term is not None:
            out |= term_variables(node.meta.term)
        stack.extend(node.premises)
    return out


def _subst_meta(meta: Meta, v: str, t: Term) -> Meta:
    changes = {}
    if meta.formula is not None:
        changes["formula"] = substitute(meta.formula, v, t)
    if meta.term is not None:
        changes["term"] = _subst_term(meta.term, v, t)
    if meta.scheme is not None:
        changes["scheme"] = SchemeInstance(meta.scheme.scheme,
                                           tuple(substitute(x, v, t) for x in meta.scheme.parameters))
    if meta.sequent is not None:
        s = meta.sequent
        changes["sequent"] = Sequent(tuple(substitute(f, v, t) for f in s.antecedent),
                                     tuple(substitute(f, v, t) for f in s.succedent))
    return replace(meta, **changes)


def substitute_proof(p: ProofTree, v: str, t: Term, avoid: Optional[set] = None) -> ProofTree:
    """Substitute ``t`` for the free variable ``v`` throughout ``p``.

    Eigenvariables that would clash with the variables of ``t`` are renamed
    apart first, so the result is again a proof, of the substituted
    end-sequent, with the same height and degree.
    """
    if avoid is None:
        avoid = proof_variables(p) | term_variables(t) | {v}
    tvars = term_variables(t)
    memo = {}

    def go(node: ProofTree, v: str, t: Term, tvars: set) -> ProofTree:
        key = (id(node), v, t)
        hit = memo.get(key)
        if hit is not None and hit[0] is node:
            return hit[1]
        meta = node.meta
        premises = node.premises
        if node.rule in EIGEN_RULES:
            a = meta.eigen
            if a == v:
                memo[key] = (node, node)
                return node
            if a in tvars:
                b = fresh_name(a, avoid)
                avoid.add(b)
                premises = (go(premises[0], a, Var(b), {b}),)
                meta = replace(meta, eigen=b)
        new_premises = [go(q, v, t, tvars) for q in premises]
        out = apply_rule(node.rule, _subst_meta(meta, v, t), new_premises)
        memo[key] = (node, out)
        return out

    return go(p, v, t, tvars)
