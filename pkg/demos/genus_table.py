"""Print the minimal genera of QA_n for the six kinds, n = 4 and 5.

Run: python demos/genus_table.py   (about a minute and a half, dominated by
the pure symmetric search at n = 5)
"""

import time

from qagenus import GenusKind, minimal_genus, qa
from qagenus.families import qa_subgroups


def main():
    for n in (4, 5):
        G = qa(n)
        subs = qa_subgroups(G)
        kinds = [("strong symmetric", GenusKind.strong_symmetric()),
                 ("pure symmetric", GenusKind.pure_symmetric()),
                 ("hyperbolic, plus part H1", GenusKind.symmetric_hyperbolic(subs["H1"])),
                 ("hyperbolic, plus part H2", GenusKind.symmetric_hyperbolic(subs["H2"])),
                 ("strong pseudo-real", GenusKind.strong_pseudo_real()),
                 ("symmetric crosscap", GenusKind.crosscap())]
        print(f"QA_{n} (order {G.order})")
        for label, kind in kinds:
            t = time.perf_counter()
            r = minimal_genus(G, kind)
            sigs = ", ".join(str(s) for s in r.witness_signatures)
            print(f"  {label:<26} {r.value:>3}   {sigs}   [{time.perf_counter() - t:.1f}s]")


if __name__ == "__main__":
    main()
