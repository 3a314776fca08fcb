"""Orbits of epimorphisms under Aut(G) and mapping-class moves.

Two epimorphisms are identified when one is obtained from the other by
post-composing with an automorphism of the target or pre-composing with a
move on the source group.  Moves are braid moves for genus-0 Fuchsian
signatures and a small data-driven library for NEC signatures.  Orbit
counts are exact for the given moves and hence upper bounds on the number
of topological classes.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .epimorphisms import Epimorphism, check_epimorphism, smooth_epimorphisms
from .groups import Automorphism, GroupTable, automorphism_group, conjugacy_classes, materialize_group
from .signatures import ELLIPTIC, REFLECTION, Signature, parse_signature
from .words import Letter, parse_word


class MixedInputs(ValueError):
    pass


class WrongSignatureShape(ValueError):
    pass


class MoveFails(AssertionError):
    pass


@dataclass
class NecMove:
    name: str
    shape: dict
    images: dict[str, list[Letter]]
    probe: dict | None = None

    def fits(self, sig: Signature) -> bool:
        s = self.shape
        if sig.genus != s["genus"] or sig.orientable != s["orientable"] or len(sig.cycles) != s["cycles"]:
            return False
        if len(sig.periods) != len(s["periods"]):
            return False
        bound: dict[str, int] = {}
        for want, got in zip(s["periods"], sig.periods):
            if isinstance(want, int):
                if want != got:
                    return False
            elif bound.setdefault(want, got) != got:
                return False
        return True

    def apply(self, epi: Epimorphism) -> Epimorphism:
        G = epi.target
        imgs = epi.image_map()
        new = tuple(G.evaluate(self.images[g], imgs) if g in self.images else imgs[g] for g in epi.labels)
        problem = check_epimorphism(epi.presentation, G, new)
        if problem:
            raise MoveFails(f"move {self.name} breaks {epi.describe()}: {problem}")
        return Epimorphism(epi.presentation, G, new)

    def to_json(self) -> dict:
        from .words import format_word
        return {"shape": self.shape, "images": {g: format_word(w) for g, w in self.images.items()}}


def verify_move(move: NecMove) -> int:
    """Apply ``move`` to every smooth epimorphism of its probe; return the count checked."""
    if not move.probe:
        return 0
    G = materialize_group(move.probe["group"])
    sig = parse_signature(move.probe["signature"])
    if not move.fits(sig):
        raise MoveFails(f"probe signature {sig} does not fit move {move.name}")
    epis = smooth_epimorphisms(sig, G)
    seen = set()
    for e in epis:
        seen.add(move.apply(e).images)
    if len(seen) != len(epis):
        raise MoveFails(f"move {move.name} is not injective on its probe")
    return len(epis)


def move_from_json(name: str, obj: dict) -> NecMove:
    return NecMove(name, obj["shape"], {g: parse_word(w) for g, w in obj["images"].items()}, obj.get("probe"))


@lru_cache(maxsize=1)
def builtin_moves() -> dict[str, NecMove]:
    obj = json.loads(resources.files("qagenus").joinpath("data/moves.json").read_text())
    moves = {k: move_from_json(k, v) for k, v in obj["moves"].items()}
    for m in moves.values():
        verify_move(m)
    return moves


@dataclass
class MoveSet:
    fuchsian_braids: bool = False
    nec_moves: list[NecMove] = field(default_factory=list)

    @classmethod
    def named(cls, names, braids: bool = False) -> "MoveSet":
        lib = builtin_moves()
        return cls(braids, [lib[n] for n in names])

    @classmethod
    def from_file(cls, path: str) -> "MoveSet":
        with open(path) as fh:
            obj = json.load(fh)
        moves = [move_from_json(k, v) for k, v in obj.get("moves", {}).items()]
        for m in moves:
            verify_move(m)
        return cls(bool(obj.get("fuchsian_braids", False)), moves)

    def label(self) -> str:
        parts = [m.name for m in self.nec_moves]
        if self.fuchsian_braids:
            parts.append("braids")
        return "{" + ",".join(parts) + "}"


# --------------------------------------------------------------------------
# braids


def _braid_moves(sig: Signature):
    """Permutations of the genus-0 Fuchsian generating vector, as functions."""
    r = len(sig.periods)
    moves = []
    for i in range(r - 1):
        same = sig.periods[i] == sig.periods[i + 1]
        moves.append((i, same))
    return moves


def _apply_braid(G: GroupTable, images: tuple[int, ...], i: int, same: bool) -> tuple[int, ...]:
    out = list(images)
    a, b = images[i], images[i + 1]
    mul, inv = G.mul, G.inv
    if same:
        out[i], out[i + 1] = mul[mul[a][b]][inv[a]], a
    else:
        ab = mul[a][b]
        out[i] = mul[mul[ab][a]][inv[ab]]
        out[i + 1] = mul[mul[ab][b]][inv[ab]]
    return tuple(out)


# --------------------------------------------------------------------------
# orbits


@dataclass
class OrbitReport:
    orbit_count: int
    representatives: list[Epimorphism]
    orbit_sizes: list[int]
    move_set_used: str
    invariant_separators: list[str]
    escaped: int = 0

    @property
    def bound_label(self) -> str:
        return f"upper bound on topological classes given moves {self.move_set_used} and Aut(G)"

    def to_json(self) -> dict:
        return {
            "orbit_count": self.orbit_count,
            "orbit_sizes": self.orbit_sizes,
            "representatives": [r.describe() for r in self.representatives],
            "move_set": self.move_set_used,
            "bound": self.bound_label,
            "invariant_separators": self.invariant_separators,
            "outside_input": self.escaped,
        }


def _aut_classes(G: GroupTable, auts: list[Automorphism]) -> list[int]:
    """Class id of each element under conjugation and automorphisms."""
    cid = [-1] * G.order
    for k, cls in enumerate(conjugacy_classes(G)):
        for a in cls:
            cid[a] = k
    changed = True
    while changed:
        changed = False
        for f in auts:
            for a in range(G.order):
                b = f(a)
                if cid[b] != cid[a]:
                    lo = min(cid[a], cid[b])
                    hi = max(cid[a], cid[b])
                    cid = [lo if c == hi else c for c in cid]
                    changed = True
    return cid


def _invariant(epi: Epimorphism, cid: list[int]) -> tuple:
    pres = epi.presentation
    tors = sorted((m, cid[epi[f"beta{i}"]]) for i, m in enumerate(epi.signature.periods, 1))
    refl = sorted(cid[epi[g]] for g in pres.labels_of(REFLECTION))
    return (tuple(tors), tuple(refl))


def classify_orbits(epis: list[Epimorphism], auts: list[Automorphism] | None = None,
                    moves: MoveSet | None = None) -> OrbitReport:
    """Orbits of ``epis`` under automorphisms of the target and source moves."""
    moves = moves or MoveSet()
    if not epis:
        return OrbitReport(0, [], [], moves.label(), [])
    sig = epis[0].signature
    G = epis[0].target
    if any(e.signature != sig or e.target is not G for e in epis):
        raise MixedInputs("all epimorphisms must share signature and target")
    if auts is None:
        auts = automorphism_group(G)
    braid = []
    if moves.fuchsian_braids:
        if not (sig.is_fuchsian and sig.genus == 0):
            raise WrongSignatureShape(f"braid moves need a genus-0 Fuchsian signature, got {sig}")
        braid = _braid_moves(sig)
    nec = [m for m in moves.nec_moves if m.fits(sig)]
    unused = [m.name for m in moves.nec_moves if not m.fits(sig)]
    if unused:
        raise WrongSignatureShape(f"moves {unused} do not apply to {sig}")
    pres = epis[0].presentation
    inputs = {e.images for e in epis}
    visited: dict[tuple[int, ...], int] = {}
    reps, sizes = [], []
    escaped = 0
    for start in sorted(inputs):
        if start in visited:
            continue
        k = len(reps)
        visited[start] = k
        todo = deque([start])
        members = [start]
        while todo:
            cur = todo.popleft()
            nbrs = [tuple(f(v) for v in cur) for f in auts]
            nbrs += [_apply_braid(G, cur, i, same) for i, same in braid]
            if nec:
                e = Epimorphism(pres, G, cur)
                nbrs += [m.apply(e).images for m in nec]
            for nb in nbrs:
                if nb not in visited:
                    visited[nb] = k
                    members.append(nb)
                    todo.append(nb)
        inside = [m for m in members if m in inputs]
        escaped += len(members) - len(inside)
        reps.append(Epimorphism(pres, G, min(inside)))
        sizes.append(len(inside))
    cid = _aut_classes(G, auts)
    invs = [_invariant(r, cid) for r in reps]
    seps = []
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if invs[i] != invs[j]:
                seps.append(f"orbits {i} and {j} differ in the multiset of Aut-classes of torsion/reflection images")
    return OrbitReport(len(reps), reps, sizes, moves.label(), seps, escaped)


def hurwitz_braid_closure(epis: list[Epimorphism], auts: list[Automorphism] | None = None) -> OrbitReport:
    if epis and not (epis[0].signature.is_fuchsian and epis[0].signature.genus == 0):
        raise WrongSignatureShape(f"braid moves need a genus-0 Fuchsian signature, got {epis[0].signature}")
    return classify_orbits(epis, auts, MoveSet(fuchsian_braids=True))
