"""Bounded HLT-style Todd-Coxeter coset enumeration.

Coincidences are handled with a union-find over coset labels; table entries
are never rewritten eagerly, every read goes through ``find``.
"""

from __future__ import annotations

import numpy as np

from .words import Letter


class CosetCapExceeded(RuntimeError):
    pass


class _Table:
    def __init__(self, ngens: int, cap: int):
        self.ncols = 2 * ngens
        self.cap = cap
        self.rows: list[list[int]] = []
        self.parent: list[int] = []
        self.new()

    def new(self) -> int:
        if len(self.rows) >= self.cap:
            raise CosetCapExceeded(f"coset enumeration exceeded {self.cap} cosets")
        self.rows.append([-1] * self.ncols)
        self.parent.append(len(self.parent))
        return len(self.rows) - 1

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def follow(self, c: int, col: int) -> int:
        d = self.rows[c][col]
        return -1 if d == -1 else self.find(d)

    def link(self, c: int, col: int, d: int) -> None:
        self.rows[c][col] = d
        self.rows[d][col ^ 1] = c

    def define(self, c: int, col: int) -> int:
        d = self.new()
        self.link(c, col, d)
        return d

    def unify(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            self.parent[b] = a
            for col in range(self.ncols):
                nb = self.rows[b][col]
                if nb == -1:
                    continue
                na = self.rows[a][col]
                if na == -1:
                    self.rows[a][col] = nb
                    nbf = self.find(nb)
                    if self.rows[nbf][col ^ 1] == -1:
                        self.rows[nbf][col ^ 1] = a
                else:
                    pending.append((na, nb))

    def scan_and_fill(self, c: int, word: list[int]) -> None:
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j:
                nxt = self.follow(f, word[i])
                if nxt == -1:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.unify(f, b)
                return
            while j >= i:
                nxt = self.follow(b, word[j] ^ 1)
                if nxt == -1:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.unify(f, b)
                return
            if i == j:
                self.link(f, word[i], b)
                return
            self.define(f, word[i])


def _encode(word: list[Letter], index: dict[str, int]) -> list[int]:
    out = []
    for g, e in word:
        if g not in index:
            raise ValueError(f"unknown generator {g!r}")
        out.append(2 * index[g] + (0 if e > 0 else 1))
    return out


def enumerate_cosets(
    generators: list[str],
    relators: list[list[Letter]],
    subgroup: list[list[Letter]] = (),
    max_cosets: int = 100_000,
) -> np.ndarray:
    """Return the action table of the generators on the cosets of ``subgroup``.

    The result has shape ``(ncosets, ngens)``; entry ``[c, g]`` is the coset
    ``c * g``.  Coset 0 is the subgroup itself.  Raises
    :class:`CosetCapExceeded` once more than ``max_cosets`` cosets are alive
    or dead in the working table.
    """
    index = {g: i for i, g in enumerate(generators)}
    rels = [_encode(r, index) for r in relators if r]
    subs = [_encode(w, index) for w in subgroup if w]
    t = _Table(len(generators), max_cosets)
    for w in subs:
        t.scan_and_fill(0, w)
    c = 0
    while c < len(t.rows):
        if t.find(c) == c:
            for r in rels:
                if t.find(c) != c:
                    break
                t.scan_and_fill(c, r)
            if t.find(c) == c:
                for col in range(t.ncols):
                    if t.follow(c, col) == -1:
                        t.define(c, col)
        c += 1

    live = [c for c in range(len(t.rows)) if t.find(c) == c]
    relabel = {c: i for i, c in enumerate(live)}
    out = np.empty((len(live), len(generators)), dtype=np.int64)
    for c in live:
        for g in range(len(generators)):
            out[relabel[c], g] = relabel[t.follow(c, 2 * g)]
    return out
