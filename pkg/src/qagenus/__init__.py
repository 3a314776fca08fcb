"""Finite group actions on compact Riemann and Klein surfaces.

The quasi-abelian 2-groups QA_n, the groups K_n and a sporadic group G_1
are built in, but every routine accepts any finite group table.
"""

from .epimorphisms import ActionRecord, Epimorphism, classify_action, smooth_epimorphisms
from .equivalence import MoveSet, classify_orbits
from .families import g1, kn, qa
from .genus import GenusKind, minimal_genus
from .groups import GroupTable, automorphism_group, materialize_group, parse_group_spec
from .signatures import Signature, parse_signature, reduced_area

__version__ = "0.1.0"

__all__ = [
    "ActionRecord", "Epimorphism", "GenusKind", "GroupTable", "MoveSet", "Signature",
    "automorphism_group", "classify_action", "classify_orbits", "g1", "kn", "materialize_group",
    "minimal_genus", "parse_group_spec", "parse_signature", "qa", "reduced_area", "smooth_epimorphisms",
]
