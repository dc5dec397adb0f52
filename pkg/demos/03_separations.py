"""Telling the calculi apart.

Each extension of minimal logic proves something the others cannot.  Two kinds
of evidence are used here.  For an atomic succedent, a cut-free MLplus proof
needs the atom somewhere in the antecedent outside every negation, so its
absence is a certificate.  Elsewhere we fall back on exhaustive cut-free search.
"""

from minlogic.analysis import backward_search, lemma4_unprovability
from minlogic.kernel import check_proof, parse_sequent
from minlogic.proofio import format_proof

CASES = [
    ("~p, p |- q", "LJ"),
    ("~p, p |- q", "MLplus"),
    ("|- p | ~p", "MLplus"),
    ("|- p | ~p", "ML_EFQ"),
    ("~~p |- p", "MLplus"),
    ("~~p |- p", "MLplus_WR"),
    ("|- ((p -> q) -> p) -> p", "LJ"),
    ("|- ((p -> q) -> p) -> p", "MLplus_WR"),
]


def main():
    cert = lemma4_unprovability(parse_sequent("~p, p |- q"))
    print(cert.to_text())

    for text, profile in CASES:
        s = parse_sequent(text)
        cert = backward_search(s, profile)
        line = f"{text:28} {profile:10} {cert.kind:24} nodes={cert.stats.nodes}"
        if cert.proof is not None:
            line += f"  (checks: {check_proof(cert.proof, profile).valid})"
        print(line)

    print("\nthe excluded-middle proof found in MLplus:")
    print(format_proof(backward_search(parse_sequent("|- p | ~p"), "MLplus").proof))


if __name__ == "__main__":
    main()
