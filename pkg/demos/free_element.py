"""Show why the triangular action of QA_n is not purely non-free.

Lists fixed-point counts per conjugacy class and the genus of each cyclic
quotient; y*x^2 is the first element with no fixed point.
"""

import sys

from qagenus.groups import conjugacy_classes, subgroup_generated
from qagenus.quotients import fixed_point_ledger, quotient_signature
from qagenus.witnesses import verify_witness


def main(n: int = 4):
    act = verify_witness("strong", n)
    G = act.epimorphism.target
    led = fixed_point_ledger(act)
    print(f"triangular action of QA_{n}: {act.signature}, genus {act.genus}")
    for cls in conjugacy_classes(G):
        h = cls[0]
        if h == G.identity:
            continue
        q = quotient_signature(act, subgroup_generated(G, [h]))
        mark = "  <- acts freely" if led[h] == 0 else ""
        print(f"  {G.name_of(h):<10} order {G.element_orders[h]:>2}  class size {len(cls)}  "
              f"fixed points {led[h]:>2}  S/<h> = {q.signature}{mark}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
