"""First-order formulas with primitive negation.

Surface syntax (ASCII, with a few unicode aliases accepted on input)::

    ~A        negation           (binds tightest)
    A & B     conjunction        (left associative)
    A | B     disjunction        (left associative)
    A -> B    implication        (right associative, binds loosest)
    forall x. A / exists x. A    (scope extends as far right as possible)

Atoms are ``p`` or ``p(t1, ..., tn)``.  Inside an argument list a bare
identifier is a variable and ``c()`` is a constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

__all__ = [
    "Var", "App", "Term", "Atom", "Neg", "And", "Or", "Imp", "ForAll", "Exists",
    "Formula", "SchemeInstance", "ParseError", "PreconditionViolation",
    "parse_formula", "parse_term", "parse_formula_list", "print_formula", "print_term",
    "degree", "free_variables", "term_variables", "all_variables", "substitute",
    "alpha_equivalent", "fresh_name", "has_positive_occurrence", "positive_occurrences",
    "subformula_at", "subformulas", "atoms_of", "is_propositional",
    "efq", "tnd", "dne", "match_scheme", "SCHEMES",
]

RESERVED = frozenset({"forall", "exists"})
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"at position {position}: expected {expected}")


class PreconditionViolation(ValueError):
    """An operation was called outside its documented domain."""


def _cache_hash(cls):
    # formulas are hashed constantly (sequents, memo tables); compute once
    field_hash = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = field_hash(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@_cache_hash
@dataclass(frozen=True)
class App:
    function: str
    arguments: tuple = ()

    def __str__(self):
        return print_term(self)


Term = Union[Var, App]


# ---------------------------------------------------------------------------
# formulas

@_cache_hash
@dataclass(frozen=True)
class Atom:
    predicate: str
    arguments: tuple = ()

    def __str__(self):
        return print_formula(self)


@_cache_hash
@dataclass(frozen=True)
class Neg:
    body: "Formula"

    def __str__(self):
        return print_formula(self)


@_cache_hash
@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return print_formula(self)


@_cache_hash
@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return print_formula(self)


@_cache_hash
@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return print_formula(self)


@_cache_hash
@dataclass(frozen=True)
class ForAll:
    variable: str
    body: "Formula"

    def __str__(self):
        return print_formula(self)


@_cache_hash
@dataclass(frozen=True)
class Exists:
    variable: str
    body: "Formula"

    def __str__(self):
        return print_formula(self)


Formula = Union[Atom, Neg, And, Or, Imp, ForAll, Exists]
Binary = (And, Or, Imp)
Quantifier = (ForAll, Exists)


def children(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, (Neg, ForAll, Exists)):
        return (f.body,)
    return (f.left, f.right)


# ---------------------------------------------------------------------------
# lexing and parsing

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<turnstile>\|-|⊢)
  | (?P<imp>->|⊃)
  | (?P<neg>~|¬)
  | (?P<and>&|∧)
  | (?P<or>\||∨)
  | (?P<forall>∀)
  | (?P<exists>∃)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<dot>\.)
""", re.VERBOSE)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, "a token", text)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "ident" and value in RESERVED:
                kind = value
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def kind(self):
        return self.tokens[self.i][0]

    def fail(self, expected: str):
        raise ParseError(self.tokens[self.i][2], expected, self.text)

    def take(self, kind: str, expected: Optional[str] = None) -> str:
        if self.kind != kind:
            self.fail(expected or kind)
        value = self.tokens[self.i][1]
        self.i += 1
        return value

    def identifier(self) -> str:
        if self.kind in RESERVED:
            self.fail("an identifier (reserved word used as a name)")
        return self.take("ident", "an identifier")

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.kind == "imp":
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.kind == "or":
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.kind == "and":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.kind
        if kind == "neg":
            self.i += 1
            return Neg(self.unary())
        if kind in ("forall", "exists"):
            self.i += 1
            var = self.identifier()
            self.take("dot", "'.' after quantified variable")
            body = self.formula()
            return ForAll(var, body) if kind == "forall" else Exists(var, body)
        if kind == "lpar":
            self.i += 1
            f = self.formula()
            self.take("rpar", "')'")
            return f
        if kind in RESERVED:
            self.fail("a formula (reserved word used as a name)")
        if kind != "ident":
            self.fail("a formula")
        name = self.take("ident")
        return Atom(name, self.arguments())

    def arguments(self) -> tuple:
        if self.kind != "lpar":
            return ()
        self.i += 1
        args = []
        if self.kind != "rpar":
            args.append(self.term())
            while self.kind == "comma":
                self.i += 1
                args.append(self.term())
        self.take("rpar", "')' or ','")
        return tuple(args)

    def term(self) -> Term:
        name = self.identifier()
        if self.kind == "lpar":
            return App(name, self.arguments())
        return Var(name)

    def formula_list(self, stop: Sequence[str]) -> list:
        items = []
        if self.kind in stop:
            return items
        items.append(self.formula())
        while self.kind == "comma":
            self.i += 1
            items.append(self.formula())
        return items

    def end(self):
        if self.kind != "eof":
            self.fail("end of input")


def parse_formula(text: str) -> Formula:
    """Parse one formula; raises :class:`ParseError` on malformed input."""
    p = _Parser(text)
    f = p.formula()
    p.end()
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t


def parse_formula_list(text: str) -> list:
    p = _Parser(text)
    items = p.formula_list(("eof",))
    p.end()
    return items


def parse_sequent_parts(text: str) -> tuple:
    """Split ``"A, B |- C"`` into ``([A, B], [C])``."""
    p = _Parser(text)
    ante = p.formula_list(("turnstile",))
    p.take("turnstile", "'|-'")
    succ = p.formula_list(("eof",))
    p.end()
    return ante, succ


# ---------------------------------------------------------------------------
# printing

_PREC = {Imp: 1, Or: 2, And: 3}
_OP = {Imp: "->", Or: "|", And: "&"}


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    return f"{t.function}({', '.join(print_term(a) for a in t.arguments)})"


def _fmt(f: Formula, ctx: int, open_right: bool) -> str:
    if isinstance(f, Atom):
        if not f.arguments:
            return f.predicate
        return f"{f.predicate}({', '.join(print_term(a) for a in f.arguments)})"
    if isinstance(f, Neg):
        return "~" + _fmt(f.body, 4, open_right)
    if isinstance(f, Quantifier):
        kw = "forall" if isinstance(f, ForAll) else "exists"
        s = f"{kw} {f.variable}. {_fmt(f.body, 0, True)}"
        return s if open_right else f"({s})"
    prec = _PREC[type(f)]
    wrap = prec < ctx
    inner_open = True if wrap else open_right
    if isinstance(f, Imp):
        left = _fmt(f.left, prec + 1, False)
        right = _fmt(f.right, prec, inner_open)
    else:
        left = _fmt(f.left, prec, False)
        right = _fmt(f.right, prec + 1, inner_open)
    s = f"{left} {_OP[type(f)]} {right}"
    return f"({s})" if wrap else s


def print_formula(f: Formula) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    return _fmt(f, 0, True)


# ---------------------------------------------------------------------------
# measures and variables

def degree(f: Formula) -> int:
    """Connective depth: atoms have degree 1, each connective or quantifier adds one."""
    if isinstance(f, Atom):
        return 1
    if isinstance(f, (Neg, ForAll, Exists)):
        return degree(f.body) + 1
    return max(degree(f.left), degree(f.right)) + 1


def term_variables(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    out = set()
    for a in t.arguments:
        out |= term_variables(a)
    return out


def free_variables(f: Formula) -> set:
    if isinstance(f, Atom):
        out = set()
        for a in f.arguments:
            out |= term_variables(a)
        return out
    if isinstance(f, Quantifier):
        return free_variables(f.body) - {f.variable}
    out = set()
    for c in children(f):
        out |= free_variables(c)
    return out


def all_variables(f: Formula) -> set:
    """Every variable name occurring in ``f``, free or bound."""
    if isinstance(f, Atom):
        out = set()
        for a in f.arguments:
            out |= term_variables(a)
        return out
    out = {f.variable} if isinstance(f, Quantifier) else set()
    for c in children(f):
        out |= all_variables(c)
    return out


def fresh_name(base: str, avoid) -> str:
    stem = base.rstrip("0123456789") or base
    k = 1
    while f"{stem}{k}" in avoid:
        k += 1
    return f"{stem}{k}"


def _subst_term(t: Term, v: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == v else t
    return App(t.function, tuple(_subst_term(a, v, s) for a in t.arguments))


def substitute(f: Formula, v: str, t: Term) -> Formula:
    """Replace the free occurrences of variable ``v`` by ``t``, renaming bound
    variables that ``t`` would otherwise be captured by."""
    if v not in free_variables(f):
        return f
    if isinstance(f, Atom):
        return Atom(f.predicate, tuple(_subst_term(a, v, t) for a in f.arguments))
    if isinstance(f, Neg):
        return Neg(substitute(f.body, v, t))
    if isinstance(f, Binary):
        return type(f)(substitute(f.left, v, t), substitute(f.right, v, t))
    x, body = f.variable, f.body
    tvars = term_variables(t)
    if x in tvars:
        y = fresh_name(x, tvars | all_variables(body))
        body = substitute(body, x, Var(y))
        x = y
    return type(f)(x, substitute(body, v, t))


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    return _alpha(f, g, {}, {})


def _alpha_term(s: Term, t: Term, left: dict, right: dict) -> bool:
    if isinstance(s, Var) and isinstance(t, Var):
        ls, rt = left.get(s.name), right.get(t.name)
        if ls is None and rt is None:
            return s.name == t.name
        return ls == rt
    if isinstance(s, App) and isinstance(t, App):
        return (s.function == t.function and len(s.arguments) == len(t.arguments)
                and all(_alpha_term(a, b, left, right) for a, b in zip(s.arguments, t.arguments)))
    return False


def _alpha(f, g, left: dict, right: dict) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, Atom):
        return (f.predicate == g.predicate and len(f.arguments) == len(g.arguments)
                and all(_alpha_term(a, b, left, right) for a, b in zip(f.arguments, g.arguments)))
    if isinstance(f, Quantifier):
        level = object()
        return _alpha(f.body, g.body, {**left, f.variable: level}, {**right, g.variable: level})
    return all(_alpha(a, b, left, right) for a, b in zip(children(f), children(g)))


# ---------------------------------------------------------------------------
# occurrences

def subformula_at(f: Formula, path: Sequence[int]) -> Formula:
    for i in path:
        f = children(f)[i]
    return f


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for c in children(f):
        yield from subformulas(c)


def atoms_of(f: Formula) -> set:
    return {g for g in subformulas(f) if isinstance(g, Atom)}


def is_propositional(f: Formula) -> bool:
    return not any(isinstance(g, Quantifier) for g in subformulas(f))


def positive_occurrences(f: Formula, b: Formula) -> Iterator[tuple]:
    """Paths to the occurrences of atom ``b`` in ``f`` with no negation above them.

    Only negation nodes count as scope: an occurrence in an implication
    antecedent is still positive here.
    """
    if not isinstance(b, Atom):
        raise PreconditionViolation(f"{print_formula(b)} is not atomic")

    def walk(g, path):
        if g == b:
            yield path
        if isinstance(g, Neg):
            return
        for i, c in enumerate(children(g)):
            yield from walk(c, path + (i,))

    return walk(f, ())


def has_positive_occurrence(f: Formula, b: Formula) -> bool:
    return next(positive_occurrences(f, b), None) is not None


# ---------------------------------------------------------------------------
# principle schemas

SCHEMES = ("EFQ", "TND", "DNE")
_ARITY = {"EFQ": 2, "TND": 1, "DNE": 1}


@dataclass(frozen=True)
class SchemeInstance:
    """An instance of ex falso (EFQ), excluded middle (TND) or double
    negation elimination (DNE)."""

    scheme: str
    parameters: tuple

    def __post_init__(self):
        if self.scheme not in _ARITY:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if len(self.parameters) != _ARITY[self.scheme]:
            raise ValueError(f"{self.scheme} takes {_ARITY[self.scheme]} parameter(s)")

    @property
    def formula(self) -> Formula:
        if self.scheme == "EFQ":
            a, b = self.parameters
            return Imp(Neg(a), Imp(a, b))
        (a,) = self.parameters
        if self.scheme == "TND":
            return Or(a, Neg(a))
        return Imp(Neg(Neg(a)), a)

    def __str__(self):
        return f"{self.scheme}({', '.join(print_formula(p) for p in self.parameters)})"


def efq(a: Formula, b: Formula) -> SchemeInstance:
    return SchemeInstance("EFQ", (a, b))


def tnd(a: Formula) -> SchemeInstance:
    return SchemeInstance("TND", (a,))


def dne(a: Formula) -> SchemeInstance:
    return SchemeInstance("DNE", (a,))


def match_scheme(scheme: str, f: Formula) -> Optional[SchemeInstance]:
    """Return the instance of ``scheme`` whose rendering is ``f``, if any."""
    if scheme == "EFQ":
        if isinstance(f, Imp) and isinstance(f.left, Neg) and isinstance(f.right, Imp):
            if f.left.body == f.right.left:
                return efq(f.right.left, f.right.right)
    elif scheme == "TND":
        if isinstance(f, Or) and f.right == Neg(f.left):
            return tnd(f.left)
    elif scheme == "DNE":
        if isinstance(f, Imp) and f.left == Neg(Neg(f.right)):
            return dne(f.right)
    return None
