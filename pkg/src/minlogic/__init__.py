"""Sequent calculus for minimal logic and its extensions by ex falso,
excluded middle and double negation elimination."""

from .formula import (
    And, App, Atom, Exists, ForAll, Formula, Imp, Neg, Or, ParseError, PreconditionViolation,
    SchemeInstance, Var, degree, parse_formula, print_formula, substitute,
)
from .kernel import (
    PROFILES, CalculusProfile, CheckReport, EigenvariableViolation, Meta, ProofTree, Rule,
    SchemaMismatch, Sequent, apply_rule, check_proof, get_profile, parse_sequent,
)
from .cutelim import cut_reduce, eliminate_cuts, insert_detour_cut, reduce_principal
from .analysis import (
    Certificate, backward_search, enumerate_cutfree_proofs, lemma4_unprovability,
    positivity_witness,
)
from .corpus import load_corpus, run_corpus
from .proofio import format_proof, parse_proof, parse_proof_file

__version__ = "0.1.0"

__all__ = [
    "And", "App", "Atom", "Exists", "ForAll", "Formula", "Imp", "Neg", "Or", "ParseError",
    "PreconditionViolation", "SchemeInstance", "Var", "degree", "parse_formula", "print_formula",
    "substitute",
    "PROFILES", "CalculusProfile", "CheckReport", "EigenvariableViolation", "Meta", "ProofTree",
    "Rule", "SchemaMismatch", "Sequent", "apply_rule", "check_proof", "get_profile",
    "parse_sequent",
    "cut_reduce", "eliminate_cuts", "insert_detour_cut", "reduce_principal",
    "Certificate", "backward_search", "enumerate_cutfree_proofs", "lemma4_unprovability",
    "positivity_witness",
    "load_corpus", "run_corpus",
    "format_proof", "parse_proof", "parse_proof_file",
]
