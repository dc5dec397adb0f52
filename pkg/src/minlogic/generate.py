"""Random formulas and random (cut-free or cut-bearing) proofs for fuzzing.

Proofs are grown bottom-up: a pool starts with axioms and every step applies
one randomly chosen rule to pool members, fixing up antecedents with
:func:`~minlogic.kernel.rearrange` where a rule needs a shared context.  All
nodes are built through ``apply_rule``, so every generated tree is valid in
the profile it was generated for.
"""

from __future__ import annotations

import random
from typing import Optional

from .formula import (
    And, Atom, Exists, ForAll, Formula, Imp, Neg, Or, Var, free_variables, fresh_name,
    all_variables, substitute,
)
from .kernel import ProofTree, Rule, apply_rule, node_paths, rearrange

__all__ = ["random_formula", "random_cutfree_proof", "random_cut_proof", "DEFAULT_ATOMS"]

DEFAULT_ATOMS = (Atom("p"), Atom("q"), Atom("r"))
_FO_ATOMS = (Atom("P", (Var("a"),)), Atom("P", (Var("b"),)), Atom("R", (Var("a"), Var("b"))))


def random_formula(rng: random.Random, atoms=DEFAULT_ATOMS, depth: int = 3,
                   quantifiers: bool = False) -> Formula:
    """A random formula of nesting depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice(atoms)
    kinds = ["neg", "and", "or", "imp"] + (["all", "ex"] if quantifiers else [])
    kind = rng.choice(kinds)
    sub = lambda: random_formula(rng, atoms, depth - 1, quantifiers)  # noqa: E731
    if kind == "neg":
        return Neg(sub())
    if kind in ("all", "ex"):
        body = sub()
        free = sorted(free_variables(body))
        if not free:
            return body
        return _abstract(ForAll if kind == "all" else Exists, body, rng.choice(free))
    cls = {"and": And, "or": Or, "imp": Imp}[kind]
    return cls(sub(), sub())


def _abstract(quant, body: Formula, a: str) -> Formula:
    """``Qx. body[x/a]`` with a fresh bound variable ``x``."""
    x = fresh_name("x", all_variables(body))
    return quant(x, substitute(body, a, Var(x)))


class _Grower:
    def __init__(self, rng: random.Random, tnd: bool, quantifiers: bool, max_height: int):
        self.rng = rng
        self.tnd = tnd
        self.quantifiers = quantifiers
        self.max_height = max_height
        self.atoms = DEFAULT_ATOMS[:2] + (_FO_ATOMS if quantifiers else DEFAULT_ATOMS[2:])

    def formula(self, depth=1) -> Formula:
        return random_formula(self.rng, self.atoms, depth, self.quantifiers)

    def axiom(self) -> ProofTree:
        return apply_rule(Rule.Axiom, formula=self.formula(self.rng.choice((0, 0, 1))))

    def union(self, *antes) -> tuple:
        out = []
        for ante in antes:
            for f in ante:
                if out.count(f) < ante.count(f):
                    out.append(f)
        return tuple(out)

    def step(self, pool: list) -> Optional[ProofTree]:
        rng = self.rng
        p = rng.choice(pool)
        q = rng.choice(pool)
        ante, succ = p.antecedent, p.succedent
        moves = []
        moves.append("wl")
        if len(ante) >= 2:
            moves.append("xl")
        if len(set(ante)) < len(ante):
            moves += ["cl", "cl"]
        if ante:
            moves += ["andl", "negr" if not succ else "impr"]
        if succ:
            moves += ["andr", "orr", "negl", "impl"]
        if ante and p.succedent == q.succedent and q.antecedent:
            moves.append("orl")
            if self.tnd:
                moves.append("tnd")
        if self.quantifiers:
            moves += ["alll", "allr", "exr", "exl"]
        move = rng.choice(moves)
        try:
            return getattr(self, "_" + move)(p, q)
        except _Skip:
            return None

    # -- individual rules -------------------------------------------------

    def _wl(self, p, q):
        # sometimes duplicate a formula so that contraction has work to do
        if p.antecedent and self.rng.random() < 0.3:
            f = self.rng.choice(p.antecedent)
        else:
            f = self.formula()
        return apply_rule(Rule.WeakeningLeft, formula=f, premises=[p])

    def _cl(self, p, q):
        ante = list(p.antecedent)
        f = self.rng.choice([g for g in ante if ante.count(g) > 1])
        ante.remove(f)
        ante.remove(f)
        return apply_rule(Rule.ContractionLeft, premises=[rearrange(p, [f, f] + ante)])

    def _xl(self, p, q):
        i = self.rng.randrange(len(p.antecedent) - 1)
        return apply_rule(Rule.ExchangeLeft, index=i, premises=[p])

    def _andl(self, p, q):
        a, other = p.antecedent[0], self.formula()
        if self.rng.random() < 0.5:
            return apply_rule(Rule.AndLeft1, formula=And(a, other), premises=[p])
        return apply_rule(Rule.AndLeft2, formula=And(other, a), premises=[p])

    def _negr(self, p, q):
        return apply_rule(Rule.NegRight, premises=[p])

    def _impr(self, p, q):
        return apply_rule(Rule.ImpRight, premises=[p])

    def _negl(self, p, q):
        return apply_rule(Rule.NegLeft, premises=[p])

    def _andr(self, p, q):
        if not q.succedent:
            raise _Skip
        ctx = self.union(p.antecedent, q.antecedent)
        return apply_rule(Rule.AndRight, premises=[rearrange(p, ctx), rearrange(q, ctx)])

    def _orr(self, p, q):
        a, other = p.succedent[0], self.formula()
        if self.rng.random() < 0.5:
            return apply_rule(Rule.OrRight1, formula=Or(a, other), premises=[p])
        return apply_rule(Rule.OrRight2, formula=Or(other, a), premises=[p])

    def _impl(self, p, q):
        if not q.antecedent:
            raise _Skip
        return apply_rule(Rule.ImpLeft, premises=[p, q])

    def _two_cases(self, p, q, b):
        a = p.antecedent[0]
        if q.antecedent[0] != b:
            q = apply_rule(Rule.WeakeningLeft, formula=b, premises=[q])
        ctx = self.union(p.antecedent[1:], q.antecedent[1:])
        return rearrange(p, (a,) + ctx), rearrange(q, (b,) + ctx)

    def _orl(self, p, q):
        b = q.antecedent[0]
        p2, q2 = self._two_cases(p, q, b)
        return apply_rule(Rule.OrLeft, premises=[p2, q2])

    def _tnd(self, p, q):
        a = p.antecedent[0]
        p2, q2 = self._two_cases(p, q, Neg(a))
        return apply_rule(Rule.Tnd, premises=[p2, q2])

    def _pick_var(self, f: Formula) -> str:
        free = sorted(free_variables(f))
        if not free:
            raise _Skip
        return self.rng.choice(free)

    def _alll(self, p, q):
        if not p.antecedent:
            raise _Skip
        a = self._pick_var(p.antecedent[0])
        f = _abstract(ForAll, p.antecedent[0], a)
        return apply_rule(Rule.ForAllLeft, formula=f, term=Var(a), premises=[p])

    def _exr(self, p, q):
        if not p.succedent:
            raise _Skip
        a = self._pick_var(p.succedent[0])
        f = _abstract(Exists, p.succedent[0], a)
        return apply_rule(Rule.ExistsRight, formula=f, term=Var(a), premises=[p])

    def _allr(self, p, q):
        if not p.succedent:
            raise _Skip
        a = self._pick_var(p.succedent[0])
        if any(a in free_variables(f) for f in p.antecedent):
            raise _Skip
        f = _abstract(ForAll, p.succedent[0], a)
        return apply_rule(Rule.ForAllRight, formula=f, eigen=a, premises=[p])

    def _exl(self, p, q):
        if not p.antecedent:
            raise _Skip
        a = self._pick_var(p.antecedent[0])
        if any(a in free_variables(f) for f in p.antecedent[1:] + p.succedent):
            raise _Skip
        f = _abstract(Exists, p.antecedent[0], a)
        return apply_rule(Rule.ExistsLeft, formula=f, eigen=a, premises=[p])

    def grow(self, steps: int) -> list:
        pool = [self.axiom() for _ in range(4)]
        for _ in range(steps):
            if self.rng.random() < 0.15:
                pool.append(self.axiom())
                continue
            new = self.step(pool)
            if new is not None and new.height <= self.max_height and len(new.antecedent) <= 6:
                pool.append(new)
        return pool


class _Skip(Exception):
    pass


def random_cutfree_proof(rng: random.Random, profile: str = "ML", max_height: int = 6,
                         quantifiers: bool = False, steps: int = 40) -> ProofTree:
    """A random cut-free proof valid in ``profile`` (``ML`` or ``MLplus``)."""
    g = _Grower(rng, profile == "MLplus", quantifiers, max_height)
    pool = g.grow(steps)
    tallest = max(p.height for p in pool)
    return rng.choice([p for p in pool if p.height >= min(tallest, 3)])


def random_cut_proof(rng: random.Random, profile: str = "ML", max_height: int = 8,
                     quantifiers: bool = False, cuts: int = 2) -> ProofTree:
    """A random proof with at least one cut and height at most ``max_height``.

    Cuts come from two sources: detours against identity proofs at random
    nodes, and genuine compositions of a proof of ``G |- C`` with a proof
    that uses ``C`` on the left.
    """
    from .cutelim import insert_detour_cut

    g = _Grower(rng, profile == "MLplus", quantifiers, max_height - 2)
    while True:
        pool = g.grow(40)
        p = rng.choice(sorted(pool, key=lambda t: -t.height)[:8])
        composed = _compose(rng, pool, max_height)
        if composed is not None and rng.random() < 0.5:
            p = composed
        for _ in range(cuts):
            paths = [path for path, node in node_paths(p) if node.succedent]
            if not paths:
                break
            cand = insert_detour_cut(p, rng.choice(paths), expand=rng.random() < 0.5)
            if cand.height <= max_height:
                p = cand
        if p.degree > 0:
            return p


def _compose(rng, pool, max_height) -> Optional[ProofTree]:
    lefts = [t for t in pool if t.succedent]
    rng.shuffle(lefts)
    for left in lefts[:10]:
        c = left.succedent[0]
        users = [t for t in pool if c in t.antecedent]
        if not users:
            continue
        right = rng.choice(users)
        rest = list(right.antecedent)
        rest.remove(c)
        right = rearrange(right, (c,) + tuple(rest))
        out = apply_rule(Rule.Cut, premises=[left, right])
        if out.height <= max_height:
            return out
    return None
