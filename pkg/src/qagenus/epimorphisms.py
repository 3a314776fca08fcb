"""Exhaustive search for surface-kernel epimorphisms from NEC groups.

A smooth epimorphism sends every elliptic generator to an element of exactly
its period, every reflection to an involution and every product of
consecutive reflections to an element of exactly the cycle period.  These
three conditions are what torsion-freeness of the kernel amounts to for a
canonically presented NEC group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .groups import (
    GroupTable,
    Subgroup,
    _closure,
    _small_generating_set,
    index_two_subgroups,
    subgroup_generated,
)
from .signatures import (
    BOUNDARY,
    ELLIPTIC,
    GLIDE,
    HYPERBOLIC,
    REFLECTION,
    Presentation,
    Signature,
    genus_from_action,
    presentation_of,
)
from .words import Letter

DEFAULT_BUDGET = 20_000_000

RIEMANN_CONFORMAL = "riemann_conformal"
RIEMANN_ANTICONFORMAL = "riemann_with_anticonformal"
KLEIN = "klein_nonorientable"


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, nodes: int, found: int):
        super().__init__(message)
        self.nodes = nodes
        self.found = found


class InconsistentConstraint(ValueError):
    pass


class WitnessFails(AssertionError):
    pass


# --------------------------------------------------------------------------
# orientation constraints


@dataclass(frozen=True)
class OrientationConstraint:
    """What the image of the canonical Fuchsian subgroup must be.

    ``mode`` is one of ``none``, ``equal`` (with ``subgroup``), ``proper`` or
    ``full``.
    """

    mode: str = "none"
    subgroup: Subgroup | None = None

    def __post_init__(self):
        if self.mode not in ("none", "equal", "proper", "full"):
            raise InconsistentConstraint(f"unknown constraint {self.mode!r}")
        if (self.mode == "equal") != (self.subgroup is not None):
            raise InconsistentConstraint("a subgroup is required exactly for mode 'equal'")

    def key(self) -> str:
        if self.mode == "equal":
            return "equal:" + ",".join(map(str, self.subgroup.elements))
        return self.mode


NO_CONSTRAINT = OrientationConstraint()


def plus_part_must_equal(H: Subgroup) -> OrientationConstraint:
    return OrientationConstraint("equal", H)


PLUS_PART_PROPER = OrientationConstraint("proper")
PLUS_PART_FULL = OrientationConstraint("full")


# --------------------------------------------------------------------------
# epimorphisms


@dataclass(frozen=True)
class Epimorphism:
    presentation: Presentation = field(compare=False, hash=False, repr=False)
    target: GroupTable = field(compare=False, hash=False, repr=False)
    images: tuple[int, ...]

    @property
    def labels(self) -> list[str]:
        return self.presentation.labels

    @property
    def signature(self) -> Signature:
        return self.presentation.signature

    def image_map(self) -> dict[str, int]:
        return dict(zip(self.presentation.labels, self.images))

    def __getitem__(self, label: str) -> int:
        return self.images[self.presentation.labels.index(label)]

    def evaluate(self, word: list[Letter]) -> int:
        return self.target.evaluate(word, self.image_map())

    @cached_property
    def plus_part(self) -> Subgroup:
        return plus_part_of(self.presentation, self.target, self.images)

    def describe(self) -> dict[str, str]:
        names = self.target.element_names
        return {g: names[v] for g, v in zip(self.labels, self.images)}

    def to_json(self, group_label: str = "") -> dict:
        return {
            "signature": str(self.signature),
            "group": group_label or self.target.name,
            "images": self.describe(),
        }


def plus_part_of(pres: Presentation, G: GroupTable, images: Sequence[int]) -> Subgroup:
    """Image of the canonical Fuchsian subgroup.

    Walks ``G x C_2`` from ``(1, +)`` multiplying by generator images and
    flipping the sign on orientation-reversing ones; the plus part is what is
    reached with sign ``+``.
    """
    steps = [(v, pres.orientation_character[g] < 0) for g, v in zip(pres.labels, images)]
    seen = {(G.identity, False)}
    todo = [(G.identity, False)]
    mul = G.mul
    while todo:
        a, p = todo.pop()
        for v, flip in steps:
            nxt = (mul[a][v], p ^ flip)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    elems = sorted(a for a, p in seen if not p)
    return Subgroup(G, tuple(elems), _small_generating_set(G, elems))


def plus_part_reidemeister(pres: Presentation, G: GroupTable, images: Sequence[int]) -> Subgroup:
    """Same subgroup via Reidemeister-Schreier generators for the transversal
    ``{1, t}``; kept as a cross-check."""
    pos = [v for g, v in zip(pres.labels, images) if pres.orientation_character[g] > 0]
    neg = [v for g, v in zip(pres.labels, images) if pres.orientation_character[g] < 0]
    if not neg:
        return subgroup_generated(G, list(images))
    t = neg[0]
    tinv = G.inv[t]
    gens = pos + [G.conj(t, p) for p in pos]
    gens += [G.mul[r][tinv] for r in neg] + [G.mul[t][r] for r in neg]
    return subgroup_generated(G, gens)


def check_epimorphism(pres: Presentation, G: GroupTable, images: Sequence[int]) -> str | None:
    """Independent re-check of every smoothness condition; returns the first
    violated condition or ``None``."""
    imap = dict(zip(pres.labels, images))
    for rel in pres.relations:
        if G.evaluate(rel, imap) != G.identity:
            return "relation " + " ".join(f"{g}^{e}" for g, e in rel) + " fails"
    for word, m in pres.torsion_constraints:
        v = G.evaluate(word, imap)
        if G.element_orders[v] != m:
            return f"order of image of {word} is {G.element_orders[v]}, expected {m}"
    if len(_closure(G, list(images))) != G.order:
        return "images do not generate the target"
    return None


# --------------------------------------------------------------------------
# search


class _Search:
    def __init__(self, pres: Presentation, G: GroupTable, H: Subgroup | None, want_full: bool, budget: int):
        self.pres = pres
        self.G = G
        self.H = H
        self.want_full = want_full
        self.budget = budget
        self.nodes = 0
        self.results: list[tuple[int, ...]] = []
        self.labels = pres.labels
        self.kind = dict(pres.generators)
        sig = pres.signature
        orders = G.element_orders
        inH = (lambda v: True) if H is None else (lambda v: v in H)
        self.allowed = {}
        for g, k in pres.generators:
            sign = pres.orientation_character[g]
            if H is None:
                self.allowed[g] = lambda v: True
            elif sign > 0:
                self.allowed[g] = inH
            else:
                self.allowed[g] = lambda v, inH=inH: not inH(v)
        base = {}
        for i, m in enumerate(sig.periods, 1):
            base[f"beta{i}"] = [v for v in range(G.order) if orders[v] == m]
        invols = [v for v in range(G.order) if orders[v] == 2]
        for g, k in pres.generators:
            if k == REFLECTION:
                base[g] = invols
            elif k in (BOUNDARY, HYPERBOLIC, GLIDE):
                base[g] = list(range(G.order))
        self.pools = {g: [v for v in base[g] if self.allowed[g](v)] for g in self.labels}

        # search order and the solved block
        self.cycle_steps = []  # (label, previous reflection label or None, required order)
        for i, cyc in enumerate(sig.cycles, 1):
            refl = [g for g in self.labels if self.kind[g] == REFLECTION and self._cycle_of(g) == i]
            for j, g in enumerate(refl):
                self.cycle_steps.append((g, refl[j - 1] if j else None, cyc[j - 1] if j else None))
        ell = sorted(range(len(sig.periods)), key=lambda i: (-sig.periods[i], i))
        ell_labels = [f"beta{i + 1}" for i in ell]
        bnd = [f"e{i}" for i in range(1, len(sig.cycles) + 1)]
        handles = [g for g in self.labels if self.kind[g] in (HYPERBOLIC, GLIDE)]
        self.solved: str | None = None
        self.solve_mode = None
        if sig.genus >= 1 and not sig.orientable:
            self.solved, self.solve_mode = handles[-1], "sqrt"
            handles = handles[:-1]
        elif sig.genus >= 1:
            self.solved, self.solve_mode = handles[-1], "comm"
            handles = handles[:-1]
        elif bnd:
            self.solved, self.solve_mode = bnd[-1], "direct"
            bnd = bnd[:-1]
        elif ell_labels:
            self.solved, self.solve_mode = ell_labels[-1], "direct"
            ell_labels = ell_labels[:-1]
        self.free_order = ell_labels + bnd + handles
        self.boundary_refl = {}
        for i, cyc in enumerate(sig.cycles, 1):
            refl = [g for g in self.labels if self.kind[g] == REFLECTION and self._cycle_of(g) == i]
            self.boundary_refl[f"e{i}"] = (refl[0], refl[-1])
        # long relation split around the solved block
        lr = pres.long_relation
        if self.solved is None:
            self.left, self.right = lr, []
        else:
            idx = [i for i, (g, _) in enumerate(lr) if g == self.solved]
            if self.solve_mode == "comm":
                a = self.solved.replace("b", "a", 1)
                start = [i for i, (g, _) in enumerate(lr) if g == a][0]
                self.left, self.right = lr[:start], lr[start + 4:]
                self.comm_partner = a
            else:
                self.left, self.right = lr[: idx[0]], lr[idx[-1] + 1:]
        if self.solve_mode == "sqrt":
            roots: dict[int, list[int]] = {}
            for v in range(G.order):
                roots.setdefault(G.mul[v][v], []).append(v)
            self.roots = roots
        if self.solve_mode == "comm":
            self._comm_cache: dict[int, dict[int, list[int]]] = {}
        self.index = {g: i for i, g in enumerate(self.labels)}

    @staticmethod
    def _cycle_of(label: str) -> int:
        body = label[1:]
        return int(body.split("_")[0]) if "_" in body else int(body[0])

    def _comm_table(self, a: int) -> dict[int, list[int]]:
        tab = self._comm_cache.get(a)
        if tab is None:
            G = self.G
            tab = {}
            ainv = G.inv[a]
            for b in range(G.order):
                v = G.mul[G.mul[G.mul[a][b]][ainv]][G.inv[b]]
                tab.setdefault(v, []).append(b)
            self._comm_cache[a] = tab
        return tab

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                f"search budget of {self.budget} nodes exhausted on {self.pres.signature}",
                self.nodes, len(self.results))

    def run(self) -> list[tuple[int, ...]]:
        assign: dict[str, int] = {}
        self._reflections(0, assign)
        return self.results

    def _reflections(self, step: int, assign: dict[str, int]):
        if step == len(self.cycle_steps):
            self._free(0, assign)
            return
        G = self.G
        g, prev, period = self.cycle_steps[step]
        for v in self.pools[g]:
            self.tick()
            if prev is not None and G.element_orders[G.mul[assign[prev]][v]] != period:
                continue
            assign[g] = v
            self._reflections(step + 1, assign)
        assign.pop(g, None)

    def _free(self, i: int, assign: dict[str, int]):
        if i == len(self.free_order):
            self._solve(assign)
            return
        g = self.free_order[i]
        G = self.G
        pool = self.pools[g]
        if self.kind[g] == BOUNDARY:
            c0, cs = self.boundary_refl[g]
            x, y = assign[c0], assign[cs]
            # e c0 e^-1 = cs^-1 = cs
            pool = [v for v in pool if G.mul[v][x] == G.mul[y][v]]
        for v in pool:
            self.tick()
            assign[g] = v
            self._free(i + 1, assign)
        assign.pop(g, None)

    def _product(self, word: list[Letter], assign: dict[str, int]) -> int:
        G = self.G
        x = G.identity
        for g, e in word:
            v = assign[g]
            x = G.mul[x][v if e > 0 else G.inv[v]]
        return x

    def _solve(self, assign: dict[str, int]):
        G = self.G
        if self.solved is None:
            self._leaf(assign)
            return
        L = self._product(self.left, assign)
        R = self._product(self.right, assign)
        target = G.inv[G.mul[R][L]]  # block = L^-1 R^-1
        g = self.solved
        if self.solve_mode == "direct":
            cands = [target]
        elif self.solve_mode == "sqrt":
            cands = self.roots.get(target, [])
        else:
            cands = self._comm_table(assign[self.comm_partner]).get(target, [])
        kind = self.kind[g]
        orders = G.element_orders
        for v in cands:
            self.tick()
            if not self.allowed[g](v):
                continue
            if kind == ELLIPTIC:
                idx = int(g[4:]) - 1
                if orders[v] != self.pres.signature.periods[idx]:
                    continue
            elif kind == BOUNDARY:
                c0, cs = self.boundary_refl[g]
                if G.mul[v][assign[c0]] != G.mul[assign[cs]][v]:
                    continue
            assign[g] = v
            self._leaf(assign)
        assign.pop(g, None)

    def _leaf(self, assign: dict[str, int]):
        images = tuple(assign[g] for g in self.labels)
        if len(_closure(self.G, images)) != self.G.order:
            return
        if self.want_full:
            if plus_part_of(self.pres, self.G, images).order != self.G.order:
                return
        self.results.append(images)


def smooth_epimorphisms(
    pres: Presentation | Signature,
    G: GroupTable,
    constraint: OrientationConstraint = NO_CONSTRAINT,
    budget: int = DEFAULT_BUDGET,
) -> list[Epimorphism]:
    """All smooth epimorphisms from the NEC group of ``pres`` onto ``G``.

    The list is complete and sorted by image tuple (generator order of the
    presentation).  Raises :class:`BudgetExceeded` rather than truncating.
    """
    if isinstance(pres, Signature):
        pres = presentation_of(pres)
    sig = pres.signature
    if constraint.mode == "equal":
        H = constraint.subgroup
        if H.parent is not G and H.parent.order != G.order:
            raise InconsistentConstraint("subgroup belongs to a different group")
        if H.index != 2:
            raise InconsistentConstraint("plus part must have index 2")
        if sig.is_fuchsian:
            return []
        subgroups = [H]
        want_full = False
    elif constraint.mode == "proper":
        if sig.is_fuchsian:
            return []
        subgroups = index_two_subgroups(G)
        want_full = False
    elif constraint.mode == "full":
        subgroups = [None]
        want_full = True
    else:
        subgroups = [None]
        want_full = False
    found: list[tuple[int, ...]] = []
    spent = 0
    for H in subgroups:
        s = _Search(pres, G, H, want_full, budget - spent)
        found.extend(s.run())
        spent += s.nodes
    found = sorted(set(found))
    return [Epimorphism(pres, G, imgs) for imgs in found]


def brute_force_epimorphisms(pres: Presentation, G: GroupTable, constraint: OrientationConstraint = NO_CONSTRAINT,
                             max_tuples: int = 2_000_000) -> list[tuple[int, ...]]:
    """Unpruned scan over every generator-image tuple (vectorized with numpy).

    Used as an oracle for :func:`smooth_epimorphisms`; shares no search code
    with it.
    """
    import numpy as np

    ngen = len(pres.labels)
    n = G.order
    if n ** ngen > max_tuples:
        raise BudgetExceeded(f"{n}^{ngen} tuples exceed the brute-force limit", 0, 0)
    T = G.table
    inv = np.asarray(G.inv)
    orders = np.asarray(G.element_orders)
    grids = np.indices((n,) * ngen).reshape(ngen, -1) if ngen else np.zeros((0, 1), dtype=np.int64)
    cols = {g: grids[i] for i, g in enumerate(pres.labels)}
    ok = np.ones(grids.shape[1], dtype=bool)

    def ev(word):
        x = np.full(grids.shape[1], G.identity)
        for g, e in word:
            v = cols[g] if e > 0 else inv[cols[g]]
            x = T[x, v]
        return x

    for rel in pres.relations:
        ok &= ev(rel) == G.identity
    for word, m in pres.torsion_constraints:
        ok &= orders[ev(word)] == m
    out = []
    for idx in np.flatnonzero(ok):
        images = tuple(int(grids[i, idx]) for i in range(ngen))
        if len(_closure(G, images)) != n:
            continue
        plus = plus_part_of(pres, G, images)
        if constraint.mode == "equal" and set(plus.elements) != set(constraint.subgroup.elements):
            continue
        if constraint.mode == "proper" and plus.order == n:
            continue
        if constraint.mode == "full" and plus.order != n:
            continue
        out.append(images)
    return sorted(out)


# --------------------------------------------------------------------------
# classification


@dataclass
class ActionRecord:
    signature: Signature
    epimorphism: Epimorphism
    genus: int
    kernel_class: str
    plus_part: Subgroup
    pseudo_real_admissible: bool
    purely_non_free: bool | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        G = self.epimorphism.target
        return {
            "signature": str(self.signature),
            "genus": self.genus,
            "kernel_class": self.kernel_class,
            "images": self.epimorphism.describe(),
            "plus_part_order": self.plus_part.order,
            "plus_part_generators": [G.element_names[g] for g in self.plus_part.generators],
            "pseudo_real_admissible": self.pseudo_real_admissible,
            "purely_non_free": self.purely_non_free,
            "notes": list(self.notes),
        }


def classify_action(epi: Epimorphism, G_order: int | None = None) -> ActionRecord:
    G = epi.target
    order = G.order if G_order is None else G_order
    sig = epi.signature
    plus = epi.plus_part
    if sig.is_fuchsian:
        kclass = RIEMANN_CONFORMAL
    elif plus.order * 2 == G.order:
        kclass = RIEMANN_ANTICONFORMAL
    elif plus.order == G.order:
        kclass = KLEIN
    else:
        raise AssertionError(f"plus part of index {G.order // plus.order}")
    genus = genus_from_action(sig, order, "klein" if kclass == KLEIN else "riemann")
    admissible = kclass == RIEMANN_ANTICONFORMAL and all(v in plus for v in G.involutions())
    return ActionRecord(sig, epi, genus, kclass, plus, admissible)


def make_epimorphism(sig: Signature, G: GroupTable, images: dict[str, int | str]) -> Epimorphism:
    """Build an :class:`Epimorphism` from explicit images and verify it."""
    pres = presentation_of(sig)
    vals = []
    for g in pres.labels:
        if g not in images:
            raise WitnessFails(f"no image given for generator {g}")
        v = images[g]
        vals.append(G.element(v) if isinstance(v, str) else v)
    problem = check_epimorphism(pres, G, vals)
    if problem:
        raise WitnessFails(f"{sig} onto {G.name}: {problem}")
    return Epimorphism(pres, G, tuple(vals))
