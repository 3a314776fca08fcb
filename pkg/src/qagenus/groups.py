"""Finite groups as dense multiplication tables.

Elements are the integers ``0 .. order-1``; ``G.mul[a][b]`` is the product
``a*b``.  Everything here is exhaustive and meant for groups of order at most
a few hundred.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .coset_enum import CosetCapExceeded, enumerate_cosets
from .words import Letter, parse_word

__all__ = [
    "CapExceeded",
    "CosetCapExceeded",
    "InvalidSpec",
    "NotGenerating",
    "GroupTable",
    "Subgroup",
    "Automorphism",
    "GroupProfile",
    "MetacyclicNormalForm",
    "FinitePresentation",
    "PermutationGenerators",
    "DirectProduct",
    "CyclicOrder",
    "materialize_group",
    "parse_group_spec",
    "spec_from_json",
    "spec_to_json",
    "group_profile",
    "index_two_subgroups",
    "automorphism_group",
    "is_isomorphic",
    "has_inverting_automorphism",
    "subgroup_generated",
    "check_axioms",
    "extends_to_automorphism",
    "embedding",
]

AUT_CAP = 256
ISO_CAP = 256


class InvalidSpec(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class NotGenerating(ValueError):
    pass


# --------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class MetacyclicNormalForm:
    """``<a, b | a^m = 1, b^s = a^t, b a b^-1 = a^r>`` with elements ``a^i b^j``.

    ``names`` relabels ``a`` and ``b``; ``style`` picks the display form of
    elements (``"ab"`` prints ``a^i b^j``, ``"qa"`` prints ``y^j x^i``).
    """

    m: int
    s: int
    t: int
    r: int
    names: tuple[str, str] = ("a", "b")
    style: str = "ab"
    label: str = ""

    @classmethod
    def quasi_abelian(cls, n: int) -> "MetacyclicNormalForm":
        if n < 4:
            raise InvalidSpec(f"QA_n needs n >= 4, got {n}")
        half = 2 ** (n - 1)
        # y x y^-1 = x^(2^(n-2)+1)
        return cls(half, 2, 0, 2 ** (n - 2) + 1, ("x", "y"), "qa", f"QA_{n}")

    @classmethod
    def k_group(cls, n: int) -> "MetacyclicNormalForm":
        if n < 4:
            raise InvalidSpec(f"K_n needs n >= 4, got {n}")
        alpha = 7 if n % 2 == 0 else 3
        return cls(8, 2 ** (n - 2), 4, alpha, ("a", "b"), "ab", f"K_{n}")


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[str, ...]
    relators: tuple[str, ...]
    label: str = ""
    max_cosets: int = 100_000


@dataclass(frozen=True)
class PermutationGenerators:
    """Generators as 0-based image tuples on ``degree`` points."""

    perms: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()
    label: str = ""


@dataclass(frozen=True)
class DirectProduct:
    left: object
    right: object
    label: str = ""


@dataclass(frozen=True)
class CyclicOrder:
    m: int
    label: str = ""


G1_PRESENTATION = FinitePresentation(
    ("a", "b", "c"),
    ("a^4", "b^4*a^-2", "c^2*a", "b*a*b^-1*a", "[a,c]", "c*b*c^-1*b^-3*a"),
    "G_1",
)
Q8_PRESENTATION = FinitePresentation(("i", "j"), ("i^4", "i^2*j^-2", "j*i*j^-1*i"), "Q_8")


def parse_group_spec(text: str):
    """Resolve a built-in spec name such as ``QA:4``, ``K:5``, ``G1``, ``C:8``
    or ``CxC:4,2``.  JSON objects with a ``kind`` tag are accepted too."""
    text = text.strip()
    if text.startswith("{"):
        return spec_from_json(json.loads(text))
    head, _, arg = text.partition(":")
    head = head.upper()
    try:
        if head == "QA":
            return MetacyclicNormalForm.quasi_abelian(int(arg))
        if head == "K":
            return MetacyclicNormalForm.k_group(int(arg))
        if head == "G1":
            return G1_PRESENTATION
        if head == "Q8":
            return Q8_PRESENTATION
        if head == "C":
            return CyclicOrder(int(arg), f"C_{int(arg)}")
        if head == "CXC":
            m, k = (int(v) for v in arg.split(","))
            return DirectProduct(CyclicOrder(m), CyclicOrder(k), f"C_{m}xC_{k}")
        if head == "C2XQ8":
            return DirectProduct(CyclicOrder(2), Q8_PRESENTATION, "C_2xQ_8")
    except ValueError as exc:
        raise InvalidSpec(f"bad group spec {text!r}: {exc}") from None
    raise InvalidSpec(f"unknown group spec {text!r}")


def spec_from_json(obj: dict):
    kind = obj.get("kind")
    if kind == "named":
        return parse_group_spec(obj["name"])
    if kind == "metacyclic":
        return MetacyclicNormalForm(
            obj["m"], obj["s"], obj["t"], obj["r"], tuple(obj.get("names", ("a", "b"))),
            obj.get("style", "ab"), obj.get("label", ""),
        )
    if kind == "presentation":
        return FinitePresentation(
            tuple(obj["generators"]), tuple(obj["relators"]), obj.get("label", ""),
            obj.get("max_cosets", 100_000),
        )
    if kind == "permutations":
        return PermutationGenerators(
            tuple(tuple(p) for p in obj["perms"]), tuple(obj.get("names", ())), obj.get("label", "")
        )
    if kind == "direct_product":
        return DirectProduct(spec_from_json(obj["left"]), spec_from_json(obj["right"]), obj.get("label", ""))
    if kind == "cyclic":
        return CyclicOrder(obj["m"], obj.get("label", ""))
    raise InvalidSpec(f"unknown spec kind {kind!r}")


def spec_to_json(spec) -> dict:
    if isinstance(spec, MetacyclicNormalForm):
        return {"kind": "metacyclic", "m": spec.m, "s": spec.s, "t": spec.t, "r": spec.r,
                "names": list(spec.names), "style": spec.style, "label": spec.label}
    if isinstance(spec, FinitePresentation):
        return {"kind": "presentation", "generators": list(spec.generators),
                "relators": list(spec.relators), "label": spec.label, "max_cosets": spec.max_cosets}
    if isinstance(spec, PermutationGenerators):
        return {"kind": "permutations", "perms": [list(p) for p in spec.perms],
                "names": list(spec.names), "label": spec.label}
    if isinstance(spec, DirectProduct):
        return {"kind": "direct_product", "left": spec_to_json(spec.left),
                "right": spec_to_json(spec.right), "label": spec.label}
    if isinstance(spec, CyclicOrder):
        return {"kind": "cyclic", "m": spec.m, "label": spec.label}
    raise InvalidSpec(f"not a group spec: {spec!r}")


# --------------------------------------------------------------------------
# tables


class GroupTable:
    """A fully materialized finite group.

    ``mul`` is a list of lists (fast scalar access); ``table`` is the same
    data as a numpy array for vectorized work.
    """

    def __init__(self, table, identity: int, generators: dict[str, int],
                 element_names: Sequence[str] | None = None, name: str = ""):
        self.table = np.asarray(table, dtype=np.int64)
        self.order = self.table.shape[0]
        self.mul: list[list[int]] = self.table.tolist()
        self.identity = identity
        self.generators = dict(generators)
        self.name = name
        inv = [0] * self.order
        for a in range(self.order):
            inv[a] = int(np.flatnonzero(self.table[a] == identity)[0])
        self.inv = inv
        if element_names is None:
            element_names = _shortest_words(self)
        self.element_names = list(element_names)

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.order})"

    def __len__(self):
        return self.order

    @cached_property
    def element_orders(self) -> list[int]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.mul[x][a]
                k += 1
            orders.append(k)
        return orders

    @cached_property
    def name_index(self) -> dict[str, int]:
        return {nm: i for i, nm in enumerate(self.element_names)}

    def power(self, a: int, k: int) -> int:
        k %= self.element_orders[a]
        x = self.identity
        for _ in range(k):
            x = self.mul[x][a]
        return x

    def product(self, elems: Iterable[int]) -> int:
        x = self.identity
        for e in elems:
            x = self.mul[x][e]
        return x

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return self.mul[self.mul[g][h]][self.inv[g]]

    def evaluate(self, word: list[Letter] | str, images: dict[str, int] | None = None) -> int:
        """Evaluate a word; letters are looked up in ``images`` (default: the
        named generators of the group)."""
        if isinstance(word, str):
            word = parse_word(word)
        images = self.generators if images is None else images
        x = self.identity
        for g, e in word:
            v = images[g]
            x = self.mul[x][v if e > 0 else self.inv[v]]
        return x

    def element(self, text: str) -> int:
        """Element from a word in the named generators, e.g. ``"y*x^3"``."""
        if text in self.name_index:
            return self.name_index[text]
        return self.evaluate(text)

    def name_of(self, a: int) -> str:
        return self.element_names[a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def order_spectrum(self) -> list[int]:
        return sorted(self.element_orders)

    def elements_of_order(self, m: int) -> list[int]:
        return [a for a in range(self.order) if self.element_orders[a] == m]

    def involutions(self) -> list[int]:
        return self.elements_of_order(2)


def _shortest_words(G: GroupTable) -> list[str]:
    names: list[str | None] = [None] * G.order
    names[G.identity] = "1"
    words: dict[int, list[str]] = {G.identity: []}
    queue = deque([G.identity])
    gens = sorted(G.generators.items())
    while queue:
        a = queue.popleft()
        for label, g in gens:
            b = G.mul[a][g]
            if b not in words:
                words[b] = words[a] + [label]
                queue.append(b)
    out = []
    for a in range(G.order):
        w = words.get(a)
        if w is None:
            out.append(f"e{a}")
            continue
        parts = []
        for label, grp in itertools.groupby(w):
            k = len(list(grp))
            parts.append(label if k == 1 else f"{label}^{k}")
        out.append("*".join(parts) if parts else "1")
    return out


def _table_from_actions(actions: np.ndarray, base: int = 0) -> tuple[np.ndarray, int]:
    """Build the multiplication table of a regular permutation action.

    ``actions[p, g]`` is the point ``p * g``; the point ``base`` is the
    identity and point ``p`` is the element reaching it.
    """
    npts, ngens = actions.shape
    reps: list[np.ndarray | None] = [None] * npts
    reps[base] = np.arange(npts)
    queue = deque([base])
    while queue:
        p = queue.popleft()
        for g in range(ngens):
            q = int(actions[p, g])
            if reps[q] is None:
                reps[q] = actions[reps[p], g]
                queue.append(q)
    if any(r is None for r in reps):
        raise InvalidSpec("generators do not act transitively")
    table = np.empty((npts, npts), dtype=np.int64)
    for j, rj in enumerate(reps):
        table[:, j] = rj
    return table, base


def _metacyclic(spec: MetacyclicNormalForm) -> GroupTable:
    m, s, t, r = spec.m, spec.s, spec.t, spec.r
    if min(m, s) < 1:
        raise InvalidSpec("orders must be positive")
    if pow(r, s, m) != 1 % m or (t * r - t) % m or gcd(r, m) != 1:
        raise InvalidSpec(f"inconsistent metacyclic parameters {spec}")
    # a^i b^j -> index j*m + i
    rpow = [pow(r, j, m) for j in range(s)]
    order = m * s
    table = np.empty((order, order), dtype=np.int64)
    for j1 in range(s):
        for i1 in range(m):
            row = table[j1 * m + i1]
            for j2 in range(s):
                jj = j1 + j2
                shift = 0
                if jj >= s:
                    jj -= s
                    shift = t
                for i2 in range(m):
                    row[j2 * m + i2] = jj * m + (i1 + rpow[j1] * i2 + shift) % m
    an, bn = spec.names
    gens = {an: 1 % order if m > 1 else 0, bn: m % order if s > 1 else 0}
    names = []
    for j in range(s):
        for i in range(m):
            parts = ([an if i == 1 else f"{an}^{i}"] if i else []) + ([bn if j == 1 else f"{bn}^{j}"] if j else [])
            names.append("*".join(parts) if parts else "1")
    if spec.style == "qa":
        # y^j x^i differs from x^i y^j: rename by actual products
        x, y = gens[an], gens[bn]
        names = [""] * order
        for j in range(s):
            for i in range(m):
                e = 0
                for _ in range(j):
                    e = int(table[e, y])
                for _ in range(i):
                    e = int(table[e, x])
                parts = ([bn if j == 1 else f"{bn}^{j}"] if j else []) + ([an if i == 1 else f"{an}^{i}"] if i else [])
                names[e] = "*".join(parts) if parts else "1"
    return GroupTable(table, 0, gens, names, spec.label)


def _from_presentation(spec: FinitePresentation) -> GroupTable:
    rels = [parse_word(r) for r in spec.relators]
    actions = enumerate_cosets(list(spec.generators), rels, max_cosets=spec.max_cosets)
    table, e = _table_from_actions(actions)
    gens = {g: int(actions[e, i]) for i, g in enumerate(spec.generators)}
    G = GroupTable(table, e, gens, None, spec.label)
    for r in rels:
        if G.evaluate(r) != G.identity:
            raise InvalidSpec(f"relator {r} fails after enumeration")
    return G


def _from_perms(spec: PermutationGenerators) -> GroupTable:
    if not spec.perms:
        return GroupTable([[0]], 0, {}, ["1"], spec.label)
    deg = len(spec.perms[0])
    ident = tuple(range(deg))
    elems = {ident: 0}
    order = [ident]
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in spec.perms:
            q = tuple(g[p[i]] for i in range(deg))  # apply p then g
            if q not in elems:
                elems[q] = len(order)
                order.append(q)
                queue.append(q)
    n = len(order)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(order):
        for j, q in enumerate(order):
            table[i, j] = elems[tuple(q[p[k]] for k in range(deg))]
    names = spec.names or tuple(f"g{i + 1}" for i in range(len(spec.perms)))
    gens = {nm: elems[tuple(g)] for nm, g in zip(names, spec.perms)}
    return GroupTable(table, 0, gens, None, spec.label)


def _direct_product(spec: DirectProduct) -> GroupTable:
    A = materialize_group(spec.left)
    B = materialize_group(spec.right)
    nb = B.order
    ia = np.repeat(np.arange(A.order), nb)
    ib = np.tile(np.arange(nb), A.order)
    table = A.table[ia][:, ia] * nb + B.table[ib][:, ib]
    gens = {}
    for k, v in A.generators.items():
        gens[k if k not in B.generators else f"{k}1"] = v * nb + B.identity
    for k, v in B.generators.items():
        gens[k if k not in A.generators else f"{k}2"] = A.identity * nb + v
    names = [f"({A.element_names[i]},{B.element_names[j]})" for i in range(A.order) for j in range(nb)]
    return GroupTable(table, A.identity * nb + B.identity, gens, names,
                      spec.label or f"{A.name}x{B.name}")


def materialize_group(spec) -> GroupTable:
    """Build the :class:`GroupTable` described by ``spec``.

    Accepts spec objects or the textual names understood by
    :func:`parse_group_spec`.
    """
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if isinstance(spec, MetacyclicNormalForm):
        return _metacyclic(spec)
    if isinstance(spec, FinitePresentation):
        return _from_presentation(spec)
    if isinstance(spec, PermutationGenerators):
        return _from_perms(spec)
    if isinstance(spec, DirectProduct):
        return _direct_product(spec)
    if isinstance(spec, CyclicOrder):
        if spec.m < 1:
            raise InvalidSpec("cyclic order must be positive")
        m = spec.m
        idx = np.arange(m)
        table = (idx[:, None] + idx[None, :]) % m
        names = ["1"] + [("c" if i == 1 else f"c^{i}") for i in range(1, m)]
        gens = {"c": 1 % m} if m > 1 else {}
        return GroupTable(table, 0, gens, names, spec.label or f"C_{m}")
    raise InvalidSpec(f"not a group spec: {spec!r}")


def check_axioms(G: GroupTable) -> bool:
    """Exhaustive associativity, identity, inverse and generation check."""
    T = G.table
    n = G.order
    if T.shape != (n, n):
        return False
    ar = np.arange(n)
    for row in T:
        if not np.array_equal(np.sort(row), ar):
            return False
    if not (np.array_equal(T[G.identity], ar) and np.array_equal(T[:, G.identity], ar)):
        return False
    if not np.all(T[ar, G.inv] == G.identity):
        return False
    # left[a,b,c] = (ab)c, right[a,b,c] = a(bc)
    left = T[T.reshape(-1)].reshape(n, n, n)
    right = np.take(T, T, axis=1)
    if not np.array_equal(left, right):
        return False
    return len(subgroup_generated(G, list(G.generators.values())).elements) == n


# --------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: GroupTable = field(repr=False, compare=False, hash=False)
    elements: tuple[int, ...]
    generators: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self._members

    def __len__(self):
        return len(self.elements)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def as_group(self, name: str = "") -> GroupTable:
        """The subgroup re-indexed as a standalone table."""
        pos = {a: i for i, a in enumerate(self.elements)}
        mul = self.parent.mul
        table = [[pos[mul[a][b]] for b in self.elements] for a in self.elements]
        gens = {f"g{i + 1}": pos[g] for i, g in enumerate(self.generators)}
        names = [self.parent.element_names[a] for a in self.elements]
        return GroupTable(table, pos[self.parent.identity], gens, names, name)

    def describe(self) -> str:
        G = self.parent
        return "<" + ", ".join(G.element_names[g] for g in self.generators) + ">"


def _closure(G: GroupTable, gens: Sequence[int]) -> set[int]:
    seen = {G.identity}
    frontier = [G.identity]
    mul = G.mul
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def subgroup_generated(G: GroupTable, gens: Sequence[int]) -> Subgroup:
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"element {g} out of range")
    return Subgroup(G, tuple(sorted(_closure(G, gens))), tuple(gens))


def generates(G: GroupTable, gens: Sequence[int]) -> bool:
    return len(_closure(G, gens)) == G.order


# --------------------------------------------------------------------------
# profile


@dataclass
class GroupProfile:
    order: int
    exponent: int
    order_spectrum: dict[int, int]
    involution_count: int
    center: Subgroup
    conjugacy_class_count: int
    conjugacy_classes: list[tuple[int, ...]]


def conjugacy_classes(G: GroupTable) -> list[tuple[int, ...]]:
    seen = [False] * G.order
    classes = []
    for a in range(G.order):
        if seen[a]:
            continue
        cls = sorted({G.conj(g, a) for g in range(G.order)})
        for c in cls:
            seen[c] = True
        classes.append(tuple(cls))
    return classes


def group_profile(G: GroupTable) -> GroupProfile:
    orders = G.element_orders
    spectrum: dict[int, int] = {}
    for o in orders:
        spectrum[o] = spectrum.get(o, 0) + 1
    exponent = 1
    for o in spectrum:
        exponent = exponent * o // gcd(exponent, o)
    T = G.table
    center = [a for a in range(G.order) if np.array_equal(T[a], T[:, a])]
    classes = conjugacy_classes(G)
    return GroupProfile(
        order=G.order,
        exponent=exponent,
        order_spectrum=dict(sorted(spectrum.items())),
        involution_count=spectrum.get(2, 0),
        center=Subgroup(G, tuple(center), tuple(center)),
        conjugacy_class_count=len(classes),
        conjugacy_classes=classes,
    )


def index_two_subgroups(G: GroupTable) -> list[Subgroup]:
    """Kernels of all surjections onto C_2, via G / G^2 (an F_2-vector space)."""
    if G.order % 2:
        return []
    squares = {G.mul[a][a] for a in range(G.order)}
    frattini = _closure(G, sorted(squares))
    # coset labels of G/G^2 as bit vectors over a greedy basis
    label = {a: 0 for a in frattini}
    basis: list[int] = []
    for a in range(G.order):
        if a in label:
            continue
        bit = 1 << len(basis)
        basis.append(a)
        new = {}
        for b, v in label.items():
            new[G.mul[b][a]] = v | bit
        label.update(new)
    dim = len(basis)
    out = []
    for f in range(1, 2 ** dim):
        kernel = tuple(sorted(a for a, v in label.items() if bin(v & f).count("1") % 2 == 0))
        H = Subgroup(G, kernel, _small_generating_set(G, kernel))
        assert len(kernel) * 2 == G.order and _closure(G, H.generators) == set(kernel)
        out.append(H)
    out.sort(key=lambda H: H.elements)
    return out


def _small_generating_set(G: GroupTable, elements: Sequence[int]) -> tuple[int, ...]:
    target = set(elements)
    gens: list[int] = []
    span = {G.identity}
    for a in sorted(target, key=lambda a: (-G.element_orders[a], a)):
        if a not in span:
            gens.append(a)
            span = _closure(G, gens)
            if span == target:
                break
    return tuple(sorted(gens))


# --------------------------------------------------------------------------
# homomorphisms


def minimal_generating_set(G: GroupTable) -> tuple[int, ...]:
    """Lexicographically least generating tuple of minimal size."""
    if G.order == 1:
        return ()
    for k in range(1, G.order + 1):
        for combo in itertools.combinations(range(G.order), k):
            if G.identity in combo:
                continue
            if generates(G, combo):
                return combo
    raise AssertionError("unreachable")


def _extend(G: GroupTable, gens: Sequence[int], H: GroupTable, images: Sequence[int]) -> list[int] | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism G -> H, or None."""
    phi = [-1] * G.order
    phi[G.identity] = H.identity
    queue = deque([G.identity])
    gmul, hmul = G.mul, H.mul
    while queue:
        a = queue.popleft()
        pa = phi[a]
        for g, h in zip(gens, images):
            b = gmul[a][g]
            v = hmul[pa][h]
            if phi[b] == -1:
                phi[b] = v
                queue.append(b)
            elif phi[b] != v:
                return None
    if -1 in phi:
        raise NotGenerating("source tuple does not generate")
    return phi


@dataclass(frozen=True)
class Automorphism:
    images: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.images[a]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other``."""
        return Automorphism(tuple(self.images[other.images[a]] for a in range(len(self.images))))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.images)
        for a, b in enumerate(self.images):
            inv[b] = a
        return Automorphism(tuple(inv))


def automorphism_group(G: GroupTable, cap: int = AUT_CAP) -> list[Automorphism]:
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds automorphism cap {cap}")
    gens = minimal_generating_set(G)
    orders = G.element_orders
    pools = [[b for b in range(G.order) if orders[b] == orders[g]] for g in gens]
    out = []
    for images in itertools.product(*pools):
        phi = _extend(G, gens, G, images)
        if phi is not None and len(set(phi)) == G.order:
            out.append(Automorphism(tuple(phi)))
    out.sort(key=lambda a: a.images)
    return out


def isomorphism(G: GroupTable, H: GroupTable, cap: int = ISO_CAP) -> list[int] | None:
    """An isomorphism G -> H as an image list, or None."""
    if max(G.order, H.order) > cap:
        raise CapExceeded(f"isomorphism test limited to order {cap}")
    if G.order != H.order or G.order_spectrum() != H.order_spectrum():
        return None
    if G.is_abelian() != H.is_abelian():
        return None
    gens = minimal_generating_set(G)
    horders = H.element_orders
    pools = [[b for b in range(H.order) if horders[b] == G.element_orders[g]] for g in gens]

    def search(k: int, chosen: list[int]):
        if k == len(gens):
            phi = _extend(G, gens, H, chosen)
            if phi is not None and len(set(phi)) == H.order:
                return phi
            return None
        for b in pools[k]:
            chosen.append(b)
            # prune on partial tuples: the prefix must define a homomorphism on its span
            ok = True
            if k >= 1:
                sub = gens[: k + 1]
                span = _closure(G, sub)
                hspan = _closure(H, chosen)
                ok = len(hspan) == len(span)
            if ok:
                found = search(k + 1, chosen)
                if found is not None:
                    return found
            chosen.pop()
        return None

    return search(0, [])


def is_isomorphic(G: GroupTable, H: GroupTable, cap: int = ISO_CAP) -> bool:
    return isomorphism(G, H, cap) is not None


def has_inverting_automorphism(G: GroupTable, pair: tuple[int, int]) -> bool:
    """Whether some automorphism sends ``(g, h)`` to ``(g^-1, h^-1)``."""
    g, h = pair
    if not generates(G, [g, h]):
        raise NotGenerating(f"{G.name_of(g)}, {G.name_of(h)} do not generate {G.name}")
    phi = _extend(G, [g, h], G, [G.inv[g], G.inv[h]])
    return phi is not None and len(set(phi)) == G.order


def extends_to_automorphism(G: GroupTable, sources: Sequence[int], targets: Sequence[int]) -> bool:
    """Whether ``sources[i] -> targets[i]`` extends to an automorphism of G."""
    if not generates(G, sources):
        raise NotGenerating("source tuple does not generate")
    phi = _extend(G, sources, G, targets)
    return phi is not None and len(set(phi)) == G.order


def embedding(G: GroupTable, H: GroupTable, cap: int = ISO_CAP) -> list[int] | None:
    """An injective homomorphism G -> H as an image list, or None."""
    if max(G.order, H.order) > cap:
        raise CapExceeded(f"embedding search limited to order {cap}")
    if H.order % G.order:
        return None
    gens = minimal_generating_set(G)
    horders = H.element_orders
    pools = [[b for b in range(H.order) if horders[b] == G.element_orders[g]] for g in gens]
    for images in itertools.product(*pools):
        phi = _extend(G, gens, H, images)
        if phi is not None and len(set(phi)) == G.order:
            return phi
    return None
