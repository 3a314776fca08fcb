"""NEC and Fuchsian signatures: canonical form, areas, presentations, enumeration."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .words import Letter

REFLECTION = "reflection"
ELLIPTIC = "elliptic"
BOUNDARY = "boundary"
HYPERBOLIC = "hyperbolic_pair_member"
GLIDE = "glide"


class NotProperNEC(ValueError):
    pass


class NonexistentSignature(ValueError):
    pass


class NonIntegralGenus(ValueError):
    pass


class SignatureSyntaxError(ValueError):
    pass


def _canonical_cycle(cycle: Iterable[int]) -> tuple[int, ...]:
    c = tuple(cycle)
    if not c:
        return c
    variants = []
    for seq in (c, c[::-1]):
        for i in range(len(seq)):
            variants.append(seq[i:] + seq[:i])
    return min(variants)


@dataclass(frozen=True, order=True)
class Signature:
    """``(h; ±; [m_1, ..., m_r]; {(n_11, ...), ...})`` in canonical form.

    Construction canonicalizes: periods are sorted, every cycle is replaced by
    its least rotation/reversal and the cycles are sorted.
    """

    genus: int
    orientable: bool = True
    periods: tuple[int, ...] = ()
    cycles: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if not self.orientable and self.genus < 1:
            raise ValueError("non-orientable signatures need genus >= 1")
        periods = tuple(sorted(int(m) for m in self.periods))
        cycles = tuple(sorted(_canonical_cycle(int(n) for n in c) for c in self.cycles))
        if any(m < 2 for m in periods) or any(n < 2 for c in cycles for n in c):
            raise ValueError("periods must be >= 2")
        object.__setattr__(self, "periods", periods)
        object.__setattr__(self, "cycles", cycles)

    @property
    def sign(self) -> str:
        return "+" if self.orientable else "-"

    @property
    def is_fuchsian(self) -> bool:
        return self.orientable and not self.cycles

    @property
    def is_proper(self) -> bool:
        return not self.is_fuchsian

    @property
    def boundary_count(self) -> int:
        return len(self.cycles)

    def __str__(self) -> str:
        periods = ",".join(map(str, self.periods)) if self.periods else "-"
        if self.cycles:
            cyc = ",".join("(" + (",".join(map(str, c)) if c else "-") + ")" for c in self.cycles)
        else:
            cyc = "-"
        return f"({self.genus};{self.sign};[{periods}];{{{cyc}}})"

    def to_json(self) -> dict:
        return {"sign": self.sign, "genus": self.genus, "periods": list(self.periods),
                "cycles": [list(c) for c in self.cycles]}

    @classmethod
    def from_json(cls, obj: dict) -> "Signature":
        return cls(obj["genus"], obj["sign"] == "+", tuple(obj["periods"]),
                   tuple(tuple(c) for c in obj["cycles"]))


_SIG_RE = re.compile(r"^\(\s*(\d+)\s*;\s*([+-])\s*;\s*\[(.*?)\]\s*;\s*\{(.*)\}\s*\)$")


def parse_signature(text: str) -> Signature:
    """Parse ``"(h;+|-;[m1,...];{(n11,...),(...)})"``."""
    t = text.strip().replace("−", "-").replace(" ", "")
    m = _SIG_RE.match(t)
    if not m:
        raise SignatureSyntaxError(f"cannot parse signature {text!r}")
    genus, sign, periods, cycles = m.groups()

    def ints(s: str) -> tuple[int, ...]:
        s = s.strip()
        if s in ("", "-"):
            return ()
        return tuple(int(v) for v in s.split(","))

    cyc: list[tuple[int, ...]] = []
    cycles = cycles.strip()
    if cycles not in ("", "-"):
        if not re.fullmatch(r"\([^()]*\)(,\([^()]*\))*", cycles):
            raise SignatureSyntaxError(f"bad period cycles in {text!r}")
        parts = re.findall(r"\(([^()]*)\)", cycles)
        cyc = [ints(p) for p in parts]
    try:
        return Signature(int(genus), sign == "+", ints(periods), tuple(cyc))
    except ValueError as exc:
        raise SignatureSyntaxError(f"{text!r}: {exc}") from None


def reduced_area(sig: Signature) -> Fraction:
    eta = 2 if sig.orientable else 1
    area = Fraction(eta * sig.genus + len(sig.cycles) - 2)
    for m in sig.periods:
        area += 1 - Fraction(1, m)
    for c in sig.cycles:
        for n in c:
            area += Fraction(1 - Fraction(1, n), 2)
    return area


def exists(sig: Signature) -> bool:
    return reduced_area(sig) > 0


def canonical_fuchsian_signature(sig: Signature) -> Signature:
    if sig.is_fuchsian:
        raise NotProperNEC(f"{sig} is already Fuchsian")
    eta = 2 if sig.orientable else 1
    g = eta * sig.genus + len(sig.cycles) - 1
    periods = [m for m in sig.periods for _ in (0, 1)] + [n for c in sig.cycles for n in c]
    out = Signature(g, True, tuple(periods))
    assert reduced_area(out) == 2 * reduced_area(sig)
    return out


def genus_from_action(sig: Signature, group_order: int, kind: str = "riemann") -> int:
    """Genus of the surface uniformized by a surface-kernel of index ``group_order``.

    ``riemann``: ``1 + |G| A / 2``; ``klein``: topological genus ``2 + |G| A``
    of a closed non-orientable surface.
    """
    area = reduced_area(sig)
    if area <= 0:
        raise NonexistentSignature(str(sig))
    if kind == "riemann":
        g = 1 + Fraction(group_order) * area / 2
    elif kind == "klein":
        g = 2 + Fraction(group_order) * area
    else:
        raise ValueError(f"unknown genus kind {kind!r}")
    if g.denominator != 1:
        raise NonIntegralGenus(f"{sig} with |G|={group_order} gives {kind} genus {g}")
    return int(g)


# --------------------------------------------------------------------------
# presentations


@dataclass
class Presentation:
    signature: Signature
    generators: list[tuple[str, str]]
    relations: list[list[Letter]]
    torsion_constraints: list[tuple[list[Letter], int]]
    orientation_character: dict[str, int]
    long_relation: list[Letter] = field(default_factory=list)

    @property
    def labels(self) -> list[str]:
        return [g for g, _ in self.generators]

    def kind_of(self, label: str) -> str:
        return dict(self.generators)[label]

    def labels_of(self, kind: str) -> list[str]:
        return [g for g, k in self.generators if k == kind]


def presentation_of(sig: Signature) -> Presentation:
    """The canonical NEC presentation attached to ``sig``.

    Labels: ``beta{i}`` elliptic, ``c{i}{j}`` (``c{i}_{j}`` when an index
    exceeds 9) reflections, ``e{i}`` boundary, ``a{i}``/``b{i}`` hyperbolic
    pairs, ``d{i}`` glides.
    """
    if not exists(sig):
        raise NonexistentSignature(f"{sig} has non-positive area")
    gens: list[tuple[str, str]] = []
    rels: list[list[Letter]] = []
    torsion: list[tuple[list[Letter], int]] = []

    def c(i, j):
        return f"c{i}{j}" if i < 10 and j < 10 else f"c{i}_{j}"

    for i, m in enumerate(sig.periods, 1):
        b = f"beta{i}"
        gens.append((b, ELLIPTIC))
        rels.append([(b, 1)] * m)
        torsion.append(([(b, 1)], m))
    for i, cyc in enumerate(sig.cycles, 1):
        s = len(cyc)
        for j in range(s + 1):
            gens.append((c(i, j), REFLECTION))
            rels.append([(c(i, j), 1), (c(i, j), 1)])
            torsion.append(([(c(i, j), 1)], 2))
        for j in range(1, s + 1):
            w = [(c(i, j - 1), 1), (c(i, j), 1)]
            rels.append(w * cyc[j - 1])
            torsion.append((w, cyc[j - 1]))
        e = f"e{i}"
        gens.append((e, BOUNDARY))
        rels.append([(e, 1), (c(i, 0), 1), (e, -1), (c(i, s), 1)])
    long_rel: list[Letter] = [(f"beta{i}", 1) for i in range(1, len(sig.periods) + 1)]
    long_rel += [(f"e{i}", 1) for i in range(1, len(sig.cycles) + 1)]
    for i in range(1, sig.genus + 1):
        if sig.orientable:
            a, b = f"a{i}", f"b{i}"
            gens += [(a, HYPERBOLIC), (b, HYPERBOLIC)]
            long_rel += [(a, 1), (b, 1), (a, -1), (b, -1)]
        else:
            d = f"d{i}"
            gens.append((d, GLIDE))
            long_rel += [(d, 1), (d, 1)]
    rels.append(long_rel)
    orient = {g: (-1 if k in (REFLECTION, GLIDE) else 1) for g, k in gens}
    return Presentation(sig, gens, rels, torsion, orient, long_rel)


# --------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class SignatureConstraints:
    max_reduced_area: Fraction
    allowed_periods: frozenset[int]
    sign_filter: str | None = None  # None, "+", "-", "fuchsian", "proper"
    allow_period_cycles: bool = True
    require_empty_boundary_quotient: bool = False


def _multisets(values: list[int], weight, budget: Fraction) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples over ``values`` (sorted) with total weight <= budget."""

    def rec(start: int, prefix: list[int], used: Fraction):
        yield tuple(prefix)
        for i in range(start, len(values)):
            w = weight(values[i])
            if used + w > budget:
                break
            prefix.append(values[i])
            yield from rec(i, prefix, used + w)
            prefix.pop()

    yield from rec(0, [], Fraction(0))


def _cycle_weight(c: tuple[int, ...]) -> Fraction:
    return sum((Fraction(1 - Fraction(1, n), 2) for n in c), Fraction(0))


def _cycles_within(periods: list[int], budget: Fraction, allow_periods: bool) -> list[tuple[int, ...]]:
    """Canonical period cycles of weight <= budget (each period weighs >= 1/4)."""
    if not allow_periods:
        return [()]
    out = {()}
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        nxt = []
        for c in frontier:
            for n in periods:
                d = c + (n,)
                if _cycle_weight(d) <= budget:
                    nxt.append(d)
                    out.add(_canonical_cycle(d))
        frontier = nxt
    return sorted(out, key=lambda c: (len(c), c))


def enumerate_signatures(constraints: SignatureConstraints) -> list[Signature]:
    """Every canonical signature with ``0 < area <= bound`` meeting the filters.

    Sorted by area, then by the signature's canonical ordering.
    """
    bound = Fraction(constraints.max_reduced_area)
    if bound <= 0:
        return []
    periods = sorted(p for p in constraints.allowed_periods if p >= 2)
    sf = constraints.sign_filter
    out = set()
    for orientable in (True, False):
        if sf == "-" and orientable:
            continue
        if sf in ("+", "fuchsian") and not orientable:
            continue
        eta = 2 if orientable else 1
        h = 0 if orientable else 1
        while eta * h - 2 <= bound:
            max_k = 0 if (constraints.require_empty_boundary_quotient or sf == "fuchsian") else int(bound + 2 - eta * h)
            for k in range(max_k + 1):
                if sf == "proper" and orientable and k == 0:
                    continue
                base = Fraction(eta * h + k - 2)
                rem = bound - base
                if rem < 0:
                    continue
                for per in _multisets(periods, lambda m: 1 - Fraction(1, m), rem):
                    rem2 = rem - sum((1 - Fraction(1, m) for m in per), Fraction(0))
                    if k == 0:
                        cycle_sets = [()]
                    else:
                        pool = _cycles_within(periods, rem2, constraints.allow_period_cycles)
                        cycle_sets = _cycle_multisets(pool, k, rem2)
                    for cyc in cycle_sets:
                        sig = Signature(h, orientable, per, cyc)
                        a = reduced_area(sig)
                        if 0 < a <= bound:
                            out.add(sig)
            h += 1
    return sorted(out, key=lambda s: (reduced_area(s), s))


def _cycle_multisets(pool: list[tuple[int, ...]], k: int, budget: Fraction) -> list[tuple[tuple[int, ...], ...]]:
    out = []
    weights = [_cycle_weight(c) for c in pool]

    def rec(start: int, prefix: list[int], used: Fraction):
        if len(prefix) == k:
            out.append(tuple(pool[i] for i in prefix))
            return
        for i in range(start, len(pool)):
            if used + weights[i] > budget:
                continue
            prefix.append(i)
            rec(i, prefix, used + weights[i])
            prefix.pop()

    rec(0, [], Fraction(0))
    return out


def signature_stream(constraints: SignatureConstraints) -> Iterator[Signature]:
    yield from enumerate_signatures(constraints)
