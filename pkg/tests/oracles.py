"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from qagenus.groups import Subgroup
from qagenus.signatures import Signature


def closure(G, gens) -> set[int]:
    out = {G.identity}
    frontier = [G.identity]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = G.mul[a][g]
            if b not in out:
                out.add(b)
                frontier.append(b)
    return out


def _domain(G, pres, label) -> list[int]:
    """Elements allowed by a relation ``label^k = 1`` if there is one."""
    for rel in pres.relations:
        if rel and all(g == label and e == 1 for g, e in rel):
            k = len(rel)
            return [a for a in range(G.order) if G.power(a, k) == G.identity]
    return list(range(G.order))


def brute_epimorphisms(pres, G, want_plus: Subgroup | None = None, chunk: int = 200_000) -> list[tuple[int, ...]]:
    """Scan every tuple in the product of per-generator domains.

    The plus part is taken as the subgroup generated by all words of even
    orientation length, computed from pairs of generator images.
    """
    labels = pres.labels
    doms = [np.asarray(_domain(G, pres, g)) for g in labels]
    T = np.asarray(G.table)
    inv = np.asarray(G.inv)
    orders = np.asarray(G.element_orders)
    sizes = [len(d) for d in doms]
    total = int(np.prod(sizes)) if sizes else 1
    out = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        cols = {}
        rest = idx
        for g, d, s in zip(reversed(labels), reversed(doms), reversed(sizes)):
            cols[g] = d[rest % s]
            rest = rest // s
        ok = np.ones(len(idx), dtype=bool)

        def ev(word):
            x = np.full(len(idx), G.identity)
            for g, e in word:
                x = T[x, cols[g] if e > 0 else inv[cols[g]]]
            return x

        for rel in pres.relations:
            ok &= ev(rel) == G.identity
        for word, m in pres.torsion_constraints:
            ok &= orders[ev(word)] == m
        for i in np.flatnonzero(ok):
            images = tuple(int(cols[g][i]) for g in labels)
            if len(closure(G, images)) != G.order:
                continue
            if want_plus is not None and plus_part_pairs(pres, G, images) != set(want_plus.elements):
                continue
            out.append(images)
    return sorted(out)


def plus_part_pairs(pres, G, images) -> set[int]:
    """Plus part as the span of the positive images and all products of two negative ones."""
    chi = pres.orientation_character
    pos = [v for g, v in zip(pres.labels, images) if chi[g] > 0]
    neg = [v for g, v in zip(pres.labels, images) if chi[g] < 0]
    gens = pos + [G.mul[a][b] for a in neg for b in neg] + [G.mul[G.mul[a][p]][G.inv[a]] for a in neg for p in pos]
    return closure(G, gens)


def area(sig: Signature) -> Fraction:
    eta = 2 if sig.orientable else 1
    a = Fraction(eta * sig.genus - 2 + len(sig.cycles))
    a += sum(1 - Fraction(1, m) for m in sig.periods)
    a += sum(Fraction(n - 1, 2 * n) for c in sig.cycles for n in c)
    return a


def nested_signatures(bound: Fraction, periods: list[int]) -> set[tuple]:
    """Nested-loop enumeration, as plain tuples (genus, orientable, periods, cycles).

    Cycles are canonicalised by the least rotation or reflection.
    """
    periods = sorted(periods)
    w = {m: 1 - Fraction(1, m) for m in periods}
    cw = {m: Fraction(m - 1, 2 * m) for m in periods}

    def canon(c):
        if not c:
            return ()
        variants = []
        for seq in (c, c[::-1]):
            for i in range(len(seq)):
                variants.append(seq[i:] + seq[:i])
        return min(variants)

    out = set()
    for orientable in (True, False):
        eta = 2 if orientable else 1
        h = 0 if orientable else 1
        while eta * h - 2 <= bound:
            k = 0
            while eta * h + k - 2 <= bound:
                rem = bound - (eta * h + k - 2)
                longest = int(rem / min(cw.values())) if periods else 0
                cycles = {canon(c) for n in range(longest + 1) for c in itertools.product(periods, repeat=n)
                          if sum(cw[m] for m in c) <= rem}
                maxr = int(rem / min(w.values())) if periods else 0
                for r in range(maxr + 1):
                    for per in itertools.combinations_with_replacement(periods, r):
                        pa = eta * h + k - 2 + sum(w[m] for m in per)
                        if pa > bound:
                            continue
                        for cyc in itertools.combinations_with_replacement(sorted(cycles), k):
                            a = pa + sum(cw[m] for c in cyc for m in c)
                            if 0 < a <= bound:
                                out.add((h, orientable, per, tuple(sorted(cyc))))
                k += 1
            h += 1
    return out
