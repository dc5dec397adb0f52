"""A census of small cut-free proofs.

Enumerate every end-sequent with a cut-free MLplus proof of height at most 5
over two atoms, keep those whose succedent is a single atom, and look for that
atom outside negation in the antecedent.  Every one has it.
"""

import time
from collections import Counter

from minlogic.analysis import enumerate_cutfree_proofs, positivity_witness
from minlogic.formula import Atom, print_formula


def main():
    start = time.perf_counter()
    by_height = Counter()
    atomic = witnessed = 0
    example = None
    for t in enumerate_cutfree_proofs("MLplus", ["p", "q"], 5):
        by_height[t.height] += 1
        if len(t.succedent) == 1 and isinstance(t.succedent[0], Atom):
            atomic += 1
            w = positivity_witness(t.antecedent, t.succedent[0])
            witnessed += w is not None
            if w and t.height == 5 and example is None:
                example = (t.conclusion, w)
    print("end-sequents by shortest proof height:", dict(sorted(by_height.items())))
    print(f"atomic succedents: {atomic}, with a positive occurrence: {witnessed}")
    if example:
        seq, (f, path) = example
        print(f"e.g. {seq}: witness {print_formula(f)} at {'.'.join(map(str, path)) or 'root'}")
    print(f"{time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
