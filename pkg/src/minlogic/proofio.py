"""Text format for proof trees.

A proof file holds one parenthesized tree, optionally preceded by the
sequents it assumes::

    # comment lines start with '#'
    (assume (seq "p |-"))
    (rule NegRight [~p] (seq "|- ~p")
      (rule Hypothesis [] (seq "p |-")))

Each node is ``(rule NAME [META] (seq "SEQUENT") PREMISE*)``.  ``META`` is a
``;``-separated list whose items are either a bare formula (the principal
formula) or ``key=value`` with key ``index``, ``term``, ``eigen`` or
``scheme`` (e.g. ``scheme=EFQ(p, q)``).  Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .formula import (
    ParseError, SchemeInstance, parse_formula, parse_formula_list, parse_term, print_formula,
    print_term,
)
from .kernel import Meta, ProofTree, Rule, Sequent, parse_sequent

__all__ = ["ProofFile", "format_proof", "parse_proof", "parse_proof_file", "format_proof_file",
           "proof_to_latex"]

_SEXP = re.compile(r'\s+|#[^\n]*|(?P<open>\()|(?P<close>\))|(?P<str>"[^"]*")|(?P<meta>\[[^\]]*\])'
                   r'|(?P<word>[^\s()\[\]"]+)')


@dataclass(frozen=True)
class ProofFile:
    proof: ProofTree
    hypotheses: tuple = ()


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _SEXP.match(text, pos)
        if m is None:
            raise ParseError(pos, "a proof-file token", text)
        if m.lastgroup:
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


def _format_meta(meta: Meta, rule: Rule) -> str:
    items = []
    if meta.formula is not None:
        items.append(print_formula(meta.formula))
    if meta.index is not None:
        items.append(f"index={meta.index}")
    if meta.term is not None:
        items.append(f"term={print_term(meta.term)}")
    if meta.eigen is not None:
        items.append(f"eigen={meta.eigen}")
    if meta.scheme is not None:
        params = ", ".join(print_formula(p) for p in meta.scheme.parameters)
        items.append(f"scheme={meta.scheme.scheme}({params})")
    return "[" + "; ".join(items) + "]"


def _parse_meta(text: str, pos: int) -> Meta:
    body = text[1:-1].strip()
    fields = {}
    if not body:
        return Meta()
    for item in body.split(";"):
        item = item.strip()
        key, eq, value = item.partition("=")
        key = key.strip()
        try:
            if not eq:
                fields["formula"] = parse_formula(item)
            elif key == "index":
                fields["index"] = int(value)
            elif key == "term":
                fields["term"] = parse_term(value.strip())
            elif key == "eigen":
                fields["eigen"] = value.strip()
            elif key == "scheme":
                m = re.fullmatch(r"\s*(\w+)\s*\((.*)\)\s*", value, re.S)
                if m is None:
                    raise ParseError(pos, "scheme=NAME(formulas)", text)
                fields["scheme"] = SchemeInstance(m.group(1), tuple(parse_formula_list(m.group(2))))
            else:
                raise ParseError(pos, f"a metadata key (got {key!r})", text)
        except ParseError as exc:
            raise ParseError(pos, f"metadata item {item!r}: {exc.expected}", text) from None
        except ValueError as exc:
            raise ParseError(pos, f"metadata item {item!r}: {exc}", text) from None
    return Meta(**fields)


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, offset=0):
        return self.toks[self.i + offset]

    def take(self, kind, value=None):
        k, v, pos = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            raise ParseError(pos, value or kind, self.text)
        self.i += 1
        return v

    def seq(self) -> Sequent:
        self.take("open")
        self.take("word", "seq")
        _, raw, pos = self.toks[self.i]
        self.take("str")
        self.take("close")
        try:
            return parse_sequent(raw[1:-1])
        except ParseError as exc:
            raise ParseError(pos, f"a sequent ({exc.expected})", self.text) from None

    def node(self) -> ProofTree:
        self.take("open")
        self.take("word", "rule")
        _, name, pos = self.toks[self.i]
        self.take("word")
        try:
            rule = Rule(name)
        except ValueError:
            raise ParseError(pos, f"a rule name (got {name!r})", self.text) from None
        meta = Meta()
        if self.peek()[0] == "meta":
            _, raw, mpos = self.peek()
            self.i += 1
            meta = _parse_meta(raw, mpos)
        conclusion = self.seq()
        premises = []
        while self.peek()[0] == "open":
            premises.append(self.node())
        self.take("close")
        if rule is Rule.Hypothesis:
            meta = Meta(sequent=conclusion)
        if rule is Rule.Cut and meta.formula is None and premises and premises[0].succedent:
            meta = Meta(formula=premises[0].succedent[-1])
        return ProofTree(conclusion, rule, meta, tuple(premises))

    def file(self) -> ProofFile:
        hyps = []
        if self.peek()[0] == "open" and self.peek(1)[1] == "assume":
            self.take("open")
            self.take("word", "assume")
            while self.peek()[0] == "open":
                hyps.append(self.seq())
            self.take("close")
        proof = self.node()
        self.take("eof")
        return ProofFile(proof, tuple(hyps))


def parse_proof_file(text: str) -> ProofFile:
    """Parse a proof file.  Nodes are not validated here; use ``check_proof``."""
    return _Reader(text).file()


def parse_proof(text: str) -> ProofTree:
    return parse_proof_file(text).proof


def format_proof(p: ProofTree, indent: int = 0) -> str:
    pad = "  " * indent
    meta = "[]" if p.rule is Rule.Hypothesis else _format_meta(p.meta, p.rule)
    head = f'{pad}(rule {p.rule.value} {meta} (seq "{p.conclusion}")'
    if not p.premises:
        return head + ")"
    inner = "\n".join(format_proof(q, indent + 1) for q in p.premises)
    return f"{head}\n{inner})"


def format_proof_file(p: ProofTree, hypotheses=(), comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    if hypotheses:
        lines.append("(assume " + " ".join(f'(seq "{h}")' for h in hypotheses) + ")")
    lines.append(format_proof(p))
    return "\n".join(lines) + "\n"


_LATEX = [(re.compile(r"~"), r"\\neg "), (re.compile(r" & "), r" \\land "),
          (re.compile(r" \| "), r" \\lor "), (re.compile(r" -> "), r" \\supset "),
          (re.compile(r"forall (\w+)\. "), r"\\forall \1\\, "),
          (re.compile(r"exists (\w+)\. "), r"\\exists \1\\, ")]

_LABEL = {
    Rule.WeakeningLeft: "w:l", Rule.WeakeningRight: "w:r", Rule.ContractionLeft: "c:l",
    Rule.ContractionRight: "c:r", Rule.ExchangeLeft: "e:l", Rule.ExchangeRight: "e:r",
    Rule.Cut: "Cut", Rule.Tnd: "TND",
}


def _latex_seq(s: Sequent) -> str:
    def one(f):
        out = print_formula(f)
        for pat, rep in _LATEX:
            out = pat.sub(rep, out)
        return out
    return (", ".join(one(f) for f in s.antecedent) + r"\rightarrow "
            + ", ".join(one(f) for f in s.succedent)).strip()


def proof_to_latex(p: ProofTree) -> str:
    """Render as a bussproofs ``prooftree`` environment."""
    lines = []

    def emit(node):
        for q in node.premises:
            emit(q)
        label = _LABEL.get(node.rule)
        if label and node.premises:
            lines.append(rf"\RightLabel{{{label}}}")
        cmd = {0: "AXC", 1: "UIC", 2: "BIC"}[len(node.premises)]
        lines.append(rf"\{cmd}{{${_latex_seq(node.conclusion)}$}}")

    emit(p)
    return "\\begin{prooftree}\n" + "\n".join(lines) + "\n\\end{prooftree}\n"
