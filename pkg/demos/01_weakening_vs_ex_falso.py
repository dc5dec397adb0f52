"""Ex falso needs weakening on the right.

We take the cut-free derivation of ~p -> p -> q from the corpus, confirm that
intuitionistic LJ accepts it, and watch the minimal-logic checker reject it at
the one step that weakens an empty succedent.  Then we go the other way: with
ex falso available as an initial sequent, the right-weakening step becomes
derivable, and the translated proof checks without the scheme.
"""

from minlogic.corpus import efq_to_weakening_translation, get_entry
from minlogic.kernel import check_proof, node_at
from minlogic.proofio import format_proof


def main():
    fwd = get_entry("L1-fwd")
    print(f"end-sequent: {fwd.proof.conclusion}\n")
    print(format_proof(fwd.proof))

    for profile in ("LJ", "ML"):
        print(f"\n{profile}: {check_proof(fwd.proof, profile)}")
    report = check_proof(fwd.proof, "ML")
    print(f"the offending node concludes {node_at(fwd.proof, report.path).conclusion}")

    conv = get_entry("L1-conv")
    print(f"\nconverse: from {conv.hypotheses[0]} derive {conv.proof.conclusion} using the scheme")
    print(f"ML_EFQ with the hypothesis declared: {check_proof(conv.proof, 'ML_EFQ', conv.hypotheses)}")
    print(f"cut degree {conv.proof.degree}, {conv.proof.cuts} cuts")

    plain = efq_to_weakening_translation(conv)
    print("\nafter replacing each scheme leaf by its weakening derivation:")
    print(f"MLplus_WR: {check_proof(plain, 'MLplus_WR', conv.hypotheses)}")


if __name__ == "__main__":
    main()
