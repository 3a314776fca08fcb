"""Count epimorphism orbits on a few minimal signatures, with and without moves."""

from qagenus.epimorphisms import plus_part_must_equal, smooth_epimorphisms
from qagenus.equivalence import MoveSet, classify_orbits
from qagenus.families import qa, qa_subgroups
from qagenus.signatures import parse_signature

CASES = [
    ("(0;+;[2,8,8];{-})", None, MoveSet()),
    ("(0;+;[2,8,8];{-})", None, MoveSet(fuchsian_braids=True)),
    ("(1;-;[2,4];{-})", "H1", MoveSet()),
    ("(1;-;[2,4];{-})", "H1", MoveSet.named(["L"])),
    ("(1;-;[2,2,4];{-})", "H1", MoveSet()),
    ("(1;-;[2,2,4];{-})", "H1", MoveSet.named(["Q"])),
]


def main():
    G = qa(4)
    subs = qa_subgroups(G)
    for text, key, moves in CASES:
        sig = parse_signature(text)
        epis = smooth_epimorphisms(sig, G, plus_part_must_equal(subs[key])) if key else smooth_epimorphisms(sig, G)
        rep = classify_orbits(epis, moves=moves)
        where = f"plus part {key}" if key else "conformal"
        print(f"{text:<22} {where:<14} moves {rep.move_set_used:<9} {len(epis):>3} epis -> {rep.orbit_count} orbit(s)")


if __name__ == "__main__":
    main()
