"""Removing cuts, one degree at a time.

Start from a cut-free proof, splice in a detour (prove a formula, then use it
through a cut), and hand the result to the eliminator.  The trace records each
mix-style reduction call: the cut formula's degree bounds every cut it leaves
behind, and the combined height of the two premises shrinks at each nested
call.
"""

import random
from collections import Counter

from minlogic.cutelim import eliminate_cuts, insert_detour_cut
from minlogic.formula import degree, parse_formula
from minlogic.generate import random_cutfree_proof
from minlogic.kernel import check_proof, identity_proof, node_at, node_paths
from minlogic.proofio import format_proof


def show(label, t):
    print(f"{label}: {t.conclusion}  height={t.height} degree={t.degree} cuts={t.cuts}")


def main():
    base = identity_proof(parse_formula("p -> q"))
    detoured = insert_detour_cut(base, expand=True)
    show("with detour", detoured)
    print(format_proof(detoured))

    clean, trace = eliminate_cuts(detoured, "ML")
    show("\nafter elimination", clean)
    print(format_proof(clean))
    print("\n" + trace.to_text())

    # the same on something larger and less tidy
    rng = random.Random(42)
    t = random_cutfree_proof(rng, "MLplus", max_height=7, quantifiers=True)
    # detour through the most complex succedent formula in the tree
    path = max((path for path, node in node_paths(t) if node.succedent),
               key=lambda path: degree(node_at(t, path).succedent[-1]))
    t = insert_detour_cut(t, path, expand=True)
    show("random proof with detour", t)
    out, trace = eliminate_cuts(t, "MLplus")
    show("eliminated", out)
    print(f"valid: {check_proof(out, 'MLplus').valid}, trace steps: {len(trace)}, "
          f"violations: {len(trace.violations())}")
    print("reduction kinds:", dict(Counter(s.kind for s in trace.steps)))


if __name__ == "__main__":
    main()
