"""Fixed points, quotient orbifolds and the Kani-Rosen genus identity.

Everything works from the branch data of a conformal action: the group
acting, the genus of the quotient orbifold, and one stabilizer generator per
cone point.  The conformal part of an action with anticonformal elements is
obtained by restricting to the canonical Fuchsian subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .epimorphisms import KLEIN, RIEMANN_CONFORMAL, ActionRecord
from .groups import GroupTable, Subgroup, subgroup_generated
from .signatures import GLIDE, REFLECTION, Signature


class NotConformalAction(ValueError):
    pass


class MissingSubgroupStructure(ValueError):
    pass


@dataclass
class ConformalAction:
    """A group ``acting`` (a subgroup of ``group``) on a Riemann surface.

    ``branch`` lists ``(g, m)`` with ``g`` generating the stabilizer of a
    cone point of order ``m``; ``orbifold_genus`` is the genus of the
    quotient surface.
    """

    group: GroupTable
    acting: Subgroup
    orbifold_genus: int
    branch: list[tuple[int, int]]
    genus: int
    source: str = ""

    def __post_init__(self):
        n = self.acting.order
        rhs = Fraction(n) * (2 * self.orbifold_genus - 2 + sum(1 - Fraction(1, m) for _, m in self.branch))
        if 2 * self.genus - 2 != rhs:
            raise ValueError(f"Riemann-Hurwitz fails: 2g-2={2 * self.genus - 2}, |G|*area={rhs}")


def conformal_part(act: ActionRecord) -> ConformalAction:
    """The action of the conformal subgroup on the same surface."""
    epi = act.epimorphism
    G = epi.target
    sig = act.signature
    if act.kernel_class == KLEIN:
        raise NotConformalAction("the surface is non-orientable")
    pres = epi.presentation
    imgs = epi.image_map()
    if act.kernel_class == RIEMANN_CONFORMAL:
        branch = [(imgs[f"beta{i}"], m) for i, m in enumerate(sig.periods, 1)]
        whole = Subgroup(G, tuple(range(G.order)), tuple(sorted(G.generators.values())))
        return ConformalAction(G, whole, sig.genus, branch, act.genus, str(sig))
    # Every proper period gives two cone points upstairs, with stabilizers
    # conjugate under any orientation-reversing element t.
    t = next(imgs[g] for g, k in pres.generators if k in (REFLECTION, GLIDE))
    branch = []
    for i, m in enumerate(sig.periods, 1):
        b = imgs[f"beta{i}"]
        branch += [(b, m), (G.conj(t, b), m)]
    for i, cyc in enumerate(sig.cycles, 1):
        for j, n in enumerate(cyc, 1):
            c0 = imgs[_refl(i, j - 1)]
            c1 = imgs[_refl(i, j)]
            branch.append((G.mul[c0][c1], n))
    eta = 2 if sig.orientable else 1
    h0 = eta * sig.genus + len(sig.cycles) - 1
    return ConformalAction(G, act.plus_part, h0, branch, act.genus, f"{sig} restricted to the conformal part")


def _refl(i: int, j: int) -> str:
    return f"c{i}{j}" if i < 10 and j < 10 else f"c{i}_{j}"


def _as_conformal(act) -> ConformalAction:
    if isinstance(act, ConformalAction):
        return act
    if act.kernel_class != RIEMANN_CONFORMAL:
        raise NotConformalAction(
            f"{act.signature} is not a Fuchsian source; pass conformal_part(act) to study its conformal part")
    return conformal_part(act)


# --------------------------------------------------------------------------
# fixed points


@dataclass
class FixedPointLedger:
    counts: dict[int, int]
    names: dict[int, str] = field(default_factory=dict)

    def __getitem__(self, h: int) -> int:
        return self.counts[h]

    def to_json(self) -> dict:
        return {self.names.get(h, str(h)): c for h, c in sorted(self.counts.items())}


def _cyclic(G: GroupTable, g: int) -> set[int]:
    out = {G.identity}
    x = g
    while x != G.identity:
        out.add(x)
        x = G.mul[x][g]
    return out


def fixed_point_ledger(act) -> FixedPointLedger:
    """Number of fixed points on the surface of every non-trivial element.

    A point over the i-th branch value has stabilizer ``k <g_i> k^-1`` for a
    coset ``k <g_i>``; ``h`` fixes it iff ``k^-1 h k`` lies in ``<g_i>``.
    """
    ca = _as_conformal(act)
    G = ca.group
    elems = ca.acting.elements
    counts = {h: 0 for h in elems if h != G.identity}
    for g, m in ca.branch:
        cyc = _cyclic(G, g)
        for h in counts:
            hits = sum(1 for k in elems if G.mul[G.mul[G.inv[k]][h]][k] in cyc)
            # every coset k<g> is met m times
            counts[h] += hits // m
    return FixedPointLedger(counts, {h: G.element_names[h] for h in counts})


def is_purely_non_free(act) -> bool:
    return all(c >= 1 for c in fixed_point_ledger(act).counts.values())


# --------------------------------------------------------------------------
# quotients


@dataclass
class QuotientSignature:
    subgroup: Subgroup
    signature: Signature
    genus: int

    def to_json(self) -> dict:
        return {"subgroup": self.subgroup.describe(), "order": self.subgroup.order,
                "signature": str(self.signature), "genus": self.genus}


def quotient_signature(act, H: Subgroup) -> QuotientSignature:
    """Signature of ``S/H`` by the coset-permutation method.

    Each ``<g_i>`` permutes the right cosets ``H k``; an orbit of length
    ``l`` gives a cone point of order ``m_i / l`` (dropped when 1).  The
    genus comes from the branched cover ``S/H -> S/G`` and is cross-checked
    against Riemann-Hurwitz for ``S -> S/H``.
    """
    ca = _as_conformal(act)
    G = ca.group
    if not set(H.elements) <= set(ca.acting.elements):
        raise ValueError("H must lie in the acting group")
    elems = ca.acting.elements
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for k in elems:
        if k in coset_of:
            continue
        idx = len(reps)
        reps.append(k)
        for h in H.elements:
            coset_of[G.mul[h][k]] = idx
    degree = len(reps)
    periods: list[int] = []
    ramification = 0
    for g, m in ca.branch:
        seen = set()
        for c in range(degree):
            if c in seen:
                continue
            length = 0
            x = c
            while x not in seen:
                seen.add(x)
                length += 1
                x = coset_of[G.mul[reps[x]][g]]
            ramification += length - 1
            if m // length > 1:
                periods.append(m // length)
    twice = degree * (2 * ca.orbifold_genus - 2) + ramification
    assert twice % 2 == 0
    gq = twice // 2 + 1
    sig = Signature(gq, True, tuple(periods))
    # Riemann-Hurwitz for S -> S/H
    lhs = 2 * ca.genus - 2
    rhs = H.order * (2 * gq - 2 + sum(1 - Fraction(1, p) for p in periods))
    if lhs != rhs:
        raise AssertionError(f"Riemann-Hurwitz does not close for {H.describe()}: {lhs} != {rhs}")
    return QuotientSignature(H, sig, gq)


def hyperelliptic_within_group(act) -> bool:
    """True iff some involution of the acting group has a genus-0 quotient."""
    ca = _as_conformal(act)
    G = ca.group
    for t in ca.acting.elements:
        if t != G.identity and G.mul[t][t] == G.identity:
            if quotient_signature(ca, subgroup_generated(G, [t])).genus == 0:
                return True
    return False


@dataclass
class KaniRosenResult:
    holds: bool
    genus: int
    g_z: int
    g_y: int
    g_yz: int
    g_v: int

    @property
    def genus_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.genus, self.g_z, self.g_y, self.g_yz, self.g_v)

    def to_json(self) -> dict:
        return {"holds": self.holds, "genus": self.genus, "g_z": self.g_z, "g_y": self.g_y,
                "g_yz": self.g_yz, "g_V": self.g_v}


def kani_rosen_check(act, z: int | None = None, y: int | None = None) -> KaniRosenResult:
    """Genus identity for the four-group ``<z, y>``.

    By default ``z`` is the involution in ``<x>`` and ``y`` the generator
    named ``y`` of the target.
    """
    ca = _as_conformal(act)
    G = ca.group
    if z is None or y is None:
        if "x" not in G.generators or "y" not in G.generators:
            raise MissingSubgroupStructure("target has no generators named x and y")
        x = G.generators["x"]
        z = G.power(x, G.element_orders[x] // 2) if z is None else z
        y = G.generators["y"] if y is None else y
    yz = G.mul[y][z]
    if len({z, y, yz, G.identity}) != 4 or any(G.element_orders[v] != 2 for v in (z, y, yz)) \
            or G.mul[z][y] != yz:
        raise MissingSubgroupStructure("z and y do not span a Klein four-group")
    if not all(v in ca.acting for v in (z, y)):
        raise MissingSubgroupStructure("the four-group is not inside the acting group")
    gen = lambda gens: quotient_signature(ca, subgroup_generated(G, gens)).genus
    gz, gy, gyz, gv = gen([z]), gen([y]), gen([yz]), gen([z, y])
    g = ca.genus
    holds = (g + 2 * gv == gz + gy + gyz) and (g == gz + 2 * gy) and gv == 0 and gy == gyz
    return KaniRosenResult(holds, g, gz, gy, gyz, gv)
