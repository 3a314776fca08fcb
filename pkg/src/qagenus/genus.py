"""Minimal genera of group actions, with exhaustive certificates.

The search walks candidate genera upward from a floor.  A candidate ``c``
corresponds to one exact reduced area (``2(c-1)/|G|`` for Riemann surfaces,
``(c-2)/|G|`` for Klein surfaces), so every signature of smaller area is
examined before a value is accepted.  Signatures are enumerated under a bound
that doubles whenever the walk passes it.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .epimorphisms import (
    DEFAULT_BUDGET,
    NO_CONSTRAINT,
    PLUS_PART_FULL,
    PLUS_PART_PROPER,
    ActionRecord,
    Epimorphism,
    OrientationConstraint,
    classify_action,
    plus_part_must_equal,
    smooth_epimorphisms,
)
from .groups import (
    GroupTable,
    NotGenerating,
    Subgroup,
    embedding,
    extends_to_automorphism,
    index_two_subgroups,
    materialize_group,
)
from .quotients import is_purely_non_free
from .signatures import Signature, SignatureConstraints, canonical_fuchsian_signature, enumerate_signatures, \
    presentation_of, reduced_area

NO_EPI = "no_smooth_epimorphism"
FAILS_FILTER = "fails_kind_filter"
NONINTEGRAL = "nonintegral_genus"

MAXIMALITY_NOTE = "full-group claim requires maximality choice"


class GenusNotFound(RuntimeError):
    pass


class EmbeddingFails(ValueError):
    pass


class UnsupportedGenus(ValueError):
    pass


# --------------------------------------------------------------------------
# kinds


@dataclass(frozen=True)
class GenusKind:
    tag: str
    subgroup: Subgroup | None = None

    TAGS = ("strong_symmetric", "pure_symmetric", "symmetric_hyperbolic", "strong_pseudo_real", "crosscap",
            "sigma_ps")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown genus kind {self.tag!r}")
        if self.tag == "sigma_ps" and self.subgroup is None:
            raise ValueError("sigma_ps needs an index-2 subgroup")
        if self.subgroup is not None:
            if self.tag not in ("sigma_ps", "symmetric_hyperbolic"):
                raise ValueError(f"{self.tag} takes no subgroup")
            if self.subgroup.index != 2:
                raise ValueError("the subgroup parameter must have index 2")

    @classmethod
    def strong_symmetric(cls):
        return cls("strong_symmetric")

    @classmethod
    def pure_symmetric(cls):
        return cls("pure_symmetric")

    @classmethod
    def symmetric_hyperbolic(cls, H: Subgroup | None = None):
        return cls("symmetric_hyperbolic", H)

    @classmethod
    def strong_pseudo_real(cls):
        return cls("strong_pseudo_real")

    @classmethod
    def crosscap(cls):
        return cls("crosscap")

    @classmethod
    def sigma_ps(cls, H: Subgroup):
        return cls("sigma_ps", H)

    @property
    def surface(self) -> str:
        return "klein" if self.tag == "crosscap" else "riemann"

    @property
    def floor(self) -> int:
        return 3 if self.surface == "klein" else 2

    @property
    def pseudo_real(self) -> bool:
        return self.tag in ("strong_pseudo_real", "sigma_ps")

    def sign_filter(self) -> str:
        if self.tag in ("strong_symmetric", "pure_symmetric"):
            return "fuchsian"
        if self.pseudo_real:
            return "-"
        return "proper"

    def constraint(self) -> OrientationConstraint:
        if self.tag == "crosscap":
            return PLUS_PART_FULL
        if self.subgroup is not None:
            return plus_part_must_equal(self.subgroup)
        if self.tag in ("symmetric_hyperbolic", "strong_pseudo_real"):
            return PLUS_PART_PROPER
        return NO_CONSTRAINT

    def label(self) -> str:
        if self.subgroup is None:
            return self.tag
        return f"{self.tag}({self.subgroup.describe()})"


# --------------------------------------------------------------------------
# filters


def _inverse_pair(G: GroupTable, srcs) -> list[int]:
    return [G.inv[s] for s in srcs]


def reflection_extension(epi: Epimorphism) -> str | None:
    """Name of the rule showing the action extends to a group with a reflection.

    Three signature shapes with sign '-' and no boundary are normal of index
    2 in a proper NEC group whose extra generator induces a known outer
    action; the action extends iff that outer action is realized by an
    automorphism of the target.
    """
    sig = epi.signature
    G = epi.target
    if sig.orientable or sig.cycles:
        return None
    try:
        if sig.genus == 1 and len(sig.periods) == 2:
            src = [epi["d1"], epi["beta1"]]
            if extends_to_automorphism(G, src, _inverse_pair(G, src)):
                return "inverts (d1, beta1)"
        elif sig.genus == 2 and len(sig.periods) == 1:
            src = [epi["d1"], epi["d2"]]
            if extends_to_automorphism(G, src, _inverse_pair(G, src)):
                return "inverts (d1, d2)"
        elif sig.genus == 3 and not sig.periods:
            d1, d2, d3 = epi["d1"], epi["d2"], epi["d3"]
            sq = G.mul[d2][d2]
            tgt = [G.mul[G.mul[G.inv[sq]][G.inv[d1]]][sq], G.inv[d2], G.inv[d3]]
            if extends_to_automorphism(G, [d1, d2, d3], tgt):
                return "d1 -> d2^-2 d1^-1 d2^2, d2 -> d2^-1, d3 -> d3^-1"
    except NotGenerating:
        return None
    return None


def passes(kind: GenusKind, rec: ActionRecord) -> bool:
    if kind.tag == "pure_symmetric":
        rec.purely_non_free = is_purely_non_free(rec)
        return rec.purely_non_free
    if kind.pseudo_real:
        if not rec.pseudo_real_admissible:
            return False
        rule = reflection_extension(rec.epimorphism)
        if rule:
            rec.notes.append(f"extends to a reflection overgroup ({rule})")
            return False
    return True


# --------------------------------------------------------------------------
# maximality flag


def _hyperbolic(periods, genus=0) -> bool:
    return reduced_area(Signature(genus, True, tuple(sorted(periods)))) > 0


def _triangle_overgroups(t: tuple[int, int, int]) -> list[tuple[int, ...]]:
    a, b, c = t
    out = []
    if b == c:
        out.append((2, a, 2 * b))
    if a == b == c:
        out += [(3, 3, a), (2, 3, 2 * a)]
    table = {(7, 7, 7): (2, 3, 7), (2, 7, 7): (2, 3, 7), (3, 3, 7): (2, 3, 7), (4, 8, 8): (2, 3, 8),
             (3, 8, 8): (2, 3, 8), (9, 9, 9): (2, 3, 9), (4, 4, 5): (2, 4, 5)}
    if t in table:
        out.append(table[t])
    for x, y, z in itertools.permutations(t):
        if y == z and z == 4 * x:
            out.append((2, 3, 4 * x))
        if y == z and z == 2 * x:
            out.append((2, 4, 2 * x))
        if x == 3 and z == 3 * y:
            out.append((2, 3, 3 * y))
        if x == 2 and z == 2 * y:
            out.append((2, 3, 2 * y))
    return out


def proper_extension(sig: Signature) -> Signature | None:
    """A hyperbolic Fuchsian signature properly containing ``sig``'s group, if listed."""
    f = sig if sig.is_fuchsian else canonical_fuchsian_signature(sig)
    p = tuple(sorted(f.periods))
    cands: list[tuple[int, ...]] = []
    if f.genus == 2 and not p:
        cands.append((2,) * 6)
    elif f.genus == 1 and len(p) == 2 and p[0] == p[1]:
        cands.append((2, 2, 2, 2, p[0]))
    elif f.genus == 1 and len(p) == 1:
        cands.append((2, 2, 2, 2 * p[0]))
    elif f.genus == 0 and len(p) == 4:
        for w, x, y, z in itertools.permutations(p):
            if w == x and y == z:
                cands.append((2, 2, w, y))
        if len(set(p)) == 1:
            cands.append((2, 2, 2, p[0]))
    elif f.genus == 0 and len(p) == 3:
        cands += _triangle_overgroups(p)
    for c in cands:
        if _hyperbolic(c):
            return Signature(0, True, tuple(sorted(c)))
    return None


# --------------------------------------------------------------------------
# search


def _search(args):
    sig, G, constraint, budget = args
    return [e.images for e in smooth_epimorphisms(sig, G, constraint, budget)]


def _genus_of(area: Fraction, order: int, surface: str) -> Fraction:
    return 1 + order * area / 2 if surface == "riemann" else 2 + order * area


def _area_of(c: int, order: int, surface: str) -> Fraction:
    return Fraction(2 * (c - 1), order) if surface == "riemann" else Fraction(c - 2, order)


@dataclass
class ExcludedSignature:
    signature: Signature
    genus: Fraction
    reason: str

    def to_json(self) -> dict:
        g = self.genus
        return {"signature": str(self.signature), "genus": int(g) if g.denominator == 1 else str(g),
                "reason": self.reason}


@dataclass
class GenusReport:
    kind: GenusKind
    group_name: str
    value: int
    witnesses: list[ActionRecord]
    certificate: dict
    excluded_minima: list[ExcludedSignature] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def witness_signatures(self) -> list[Signature]:
        seen = []
        for w in self.witnesses:
            if w.signature not in seen:
                seen.append(w.signature)
        return seen

    def witnesses_at(self, sig: Signature) -> list[ActionRecord]:
        return [w for w in self.witnesses if w.signature == sig]

    def to_json(self, certify: bool = False) -> dict:
        out = {
            "group": self.group_name,
            "kind": self.kind.label(),
            "value": self.value,
            "witnesses": [
                {"signature": str(s), "count": len(self.witnesses_at(s)),
                 "first": self.witnesses_at(s)[0].to_json()}
                for s in self.witness_signatures
            ],
            "certificate": dict(self.certificate),
            "notes": list(self.notes),
        }
        if certify:
            out["excluded_minima"] = [e.to_json() for e in self.excluded_minima]
        return out

    def to_table(self, certify: bool = False) -> str:
        lines = [f"{self.kind.label()} of {self.group_name} = {self.value}"]
        for s in self.witness_signatures:
            ws = self.witnesses_at(s)
            lines.append(f"  witness {s}: {len(ws)} epimorphism(s), e.g. "
                         + ", ".join(f"{k}={v}" for k, v in ws[0].epimorphism.describe().items()))
            for note in ws[0].notes:
                lines.append(f"    note: {note}")
        c = self.certificate
        lines.append(f"  certificate: area bound {c['area_bound_used']}, {c['signatures_examined']} signatures "
                     f"examined, {c['signatures_with_actions']} with actions")
        if certify:
            for e in self.excluded_minima:
                lines.append(f"  excluded {e.signature} (genus {e.genus}): {e.reason}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def minimal_genus(G: GroupTable, kind: GenusKind, genus_floor: int | None = None,
                  budget: int = DEFAULT_BUDGET, max_genus: int | None = None, workers: int = 1,
                  cache=None) -> GenusReport:
    """Least genus at which ``G`` acts in the manner described by ``kind``."""
    if kind.tag == "symmetric_hyperbolic" and kind.subgroup is None:
        subs = index_two_subgroups(G)
        if not subs:
            raise GenusNotFound(f"{G.name} has no index-2 subgroup")
        reports = [minimal_genus(G, GenusKind.symmetric_hyperbolic(H), genus_floor, budget, max_genus,
                                 workers, cache) for H in subs]
        best = min(r.value for r in reports)
        wins = [r for r in reports if r.value == best]
        cert = {"area_bound_used": str(max(Fraction(r.certificate["area_bound_used"]) for r in reports)),
                "signatures_examined": sum(r.certificate["signatures_examined"] for r in reports),
                "signatures_with_actions": sum(r.certificate["signatures_with_actions"] for r in reports),
                "per_subgroup": {r.kind.subgroup.describe(): r.value for r in reports}}
        excl = [e for r in reports for e in r.excluded_minima]
        return GenusReport(kind, G.name, best, [w for r in wins for w in r.witnesses], cert, excl)

    floor = kind.floor if genus_floor is None else max(genus_floor, kind.floor)
    order = G.order
    surface = kind.surface
    constraint = kind.constraint()
    periods = frozenset(G.order_spectrum()) - {1}

    def enumerate_upto(bound):
        cons = SignatureConstraints(bound, periods, kind.sign_filter(),
                                    require_empty_boundary_quotient=kind.pseudo_real)
        return enumerate_signatures(cons)

    bound = _area_of(floor, order, surface)
    sigs = enumerate_upto(bound)
    done: set[Signature] = set()
    excluded: list[ExcludedSignature] = []
    with_actions = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        c = floor
        while True:
            if max_genus is not None and c > max_genus:
                raise GenusNotFound(f"no {kind.label()} action of {G.name} up to genus {max_genus}")
            area = _area_of(c, order, surface)
            if area > bound:
                bound = max(2 * bound, area)
                sigs = enumerate_upto(bound)
            level = []
            for s in sigs:
                a = reduced_area(s)
                if a > area:
                    break
                if s in done:
                    continue
                done.add(s)
                if a < area:
                    g = _genus_of(a, order, surface)
                    if g.denominator != 1:
                        excluded.append(ExcludedSignature(s, g, NONINTEGRAL))
                    continue
                level.append(s)
            results = _run_level(level, G, constraint, budget, pool, cache)
            witnesses = []
            for s, imgs in zip(level, results):
                if not imgs:
                    excluded.append(ExcludedSignature(s, Fraction(c), NO_EPI))
                    continue
                with_actions += 1
                pres = presentation_of(s)
                recs = [classify_action(Epimorphism(pres, G, t)) for t in imgs]
                good = [r for r in recs if passes(kind, r)]
                if not good:
                    excluded.append(ExcludedSignature(s, Fraction(c), FAILS_FILTER))
                    continue
                ext = proper_extension(s)
                for r in good:
                    if ext is not None:
                        r.notes.append(f"{MAXIMALITY_NOTE}: {s} may extend to {ext}")
                witnesses += good
            if witnesses:
                cert = {"area_bound_used": str(area), "signatures_examined": len(done),
                        "signatures_with_actions": with_actions, "enumeration_bound": str(bound)}
                excluded = [e for e in excluded if e.genus < c]
                excluded.sort(key=lambda e: (e.genus, reduced_area(e.signature), str(e.signature)))
                return GenusReport(kind, G.name, c, witnesses, cert, excluded)
            c += 1
    finally:
        if pool is not None:
            pool.shutdown()


def _run_level(level, G, constraint, budget, pool, cache) -> list[list[tuple[int, ...]]]:
    out: list = [None] * len(level)
    todo = []
    for i, s in enumerate(level):
        hit = cache.get(G, s, constraint.key()) if cache is not None else None
        if hit is not None:
            out[i] = hit
        else:
            todo.append(i)
    args = [(level[i], G, constraint, budget) for i in todo]
    found = list(pool.map(_search, args)) if pool is not None and len(args) > 1 else [_search(a) for a in args]
    for i, imgs in zip(todo, found):
        out[i] = imgs
        if cache is not None:
            cache.put(G, level[i], constraint.key(), imgs)
    return out


# --------------------------------------------------------------------------
# pseudo-real variants


def pseudo_real_genus_with_catalog(G: GroupTable, overgroups=(), budget: int = DEFAULT_BUDGET,
                                   cache=None) -> dict:
    """Least pseudo-real genus of ``G`` relative to a finite catalog of overgroups.

    Branch (a) lets ``G`` itself contain anticonformal elements.  Branch (b)
    lets ``G`` act conformally inside an index-2 subgroup ``L+`` of a
    catalogued ``L`` that carries the anticonformal part.
    """
    base = minimal_genus(G, GenusKind.strong_pseudo_real(), budget=budget, cache=cache)
    branches = [{"via": G.name, "kind": "strong_pseudo_real", "value": base.value}]
    best, attained = base.value, "anticonformal"
    for spec in overgroups:
        L = spec if isinstance(spec, GroupTable) else materialize_group(spec)
        hits = []
        for H in index_two_subgroups(L):
            if embedding(G, H.as_group()) is not None:
                hits.append(H)
        if not hits:
            raise EmbeddingFails(f"{G.name} embeds in no index-2 subgroup of {L.name}")
        for H in hits:
            r = minimal_genus(L, GenusKind.sigma_ps(H), budget=budget, cache=cache)
            branches.append({"via": L.name, "plus_part": H.describe(), "kind": "sigma_ps", "value": r.value})
            if r.value < best:
                best, attained = r.value, "conformal_only"
    return {"value": best, "attained_by": attained, "catalog_relative": True,
            "certificate": {"branches": branches}}


def max_pseudo_real_order_check(family, g: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Check that ``family(n)`` of order ``2g+2`` acts pseudo-really at genus ``g``.

    ``forced_signature`` is the unique signature carrying a pseudo-real action
    of that group with ``|G| > 2(g-1)`` (reduced area below 1), or None.
    """
    if g % 2 == 0 or g < 3:
        raise UnsupportedGenus(f"genus {g} is not of the form 2^(n-1)-1")
    n = (g + 1).bit_length()
    if 2 ** (n - 1) - 1 != g:
        raise UnsupportedGenus(f"genus {g} is not of the form 2^(n-1)-1")
    G = family(n)
    if G.order != 2 * g + 2:
        raise UnsupportedGenus(f"family member of order {G.order}, expected {2 * g + 2}")
    kind = GenusKind.strong_pseudo_real()
    periods = frozenset(G.order_spectrum()) - {1}
    cons = SignatureConstraints(Fraction(1), periods, "-", require_empty_boundary_quotient=True)
    carrying = []
    attained = False
    target_area = Fraction(2 * (g - 1), G.order)
    for s in enumerate_signatures(cons):
        a = reduced_area(s)
        if a >= 1 or (1 + G.order * a / 2).denominator != 1:
            continue
        recs = [classify_action(e) for e in smooth_epimorphisms(s, G, PLUS_PART_PROPER, budget)]
        if any(passes(kind, r) for r in recs):
            carrying.append(s)
            if a == target_area:
                attained = True
    forced = carrying[0] if len(carrying) == 1 else None
    return {"n": n, "genus": g, "order": G.order, "attained": attained, "forced_signature": forced,
            "carrying_signatures": carrying}
