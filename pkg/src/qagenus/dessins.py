"""Regular dessins of the triangular action of QA_n.

Permutations act on the right: ``p * q`` applies ``p`` first.  They are
stored 0-based and printed 1-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .groups import (
    MetacyclicNormalForm,
    PermutationGenerators,
    _extend,
    is_isomorphic,
    materialize_group,
)

Perm = tuple[int, ...]


class NoSolution(RuntimeError):
    pass


class NotTransitive(ValueError):
    pass


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` then ``q``."""
    return tuple(q[p[i]] for i in range(len(p)))


def power(p: Perm, k: int) -> Perm:
    out = tuple(range(len(p)))
    base = p
    if k < 0:
        base = inverse(p)
        k = -k
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return out


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_string(p: Perm, keep_fixed: bool = False) -> str:
    parts = ["(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles(p) if keep_fixed or len(c) > 1]
    return "".join(parts) or "()"


def from_cycles(text: str, degree: int) -> Perm:
    """Parse ``(1,9)(2,14)...`` (1-based) into an image tuple."""
    img = list(range(degree))
    for chunk in text.replace(" ", "").strip("()").split(")("):
        if not chunk:
            continue
        pts = [int(v) - 1 for v in chunk.split(",")]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def is_transitive(perms) -> bool:
    perms = list(perms)
    if not perms:
        return True
    n = len(perms[0])
    seen = {0}
    todo = [0]
    while todo:
        i = todo.pop()
        for p in perms:
            if p[i] not in seen:
                seen.add(p[i])
                todo.append(p[i])
    return len(seen) == n


@dataclass
class MonodromyTriple:
    degree: int
    sigma: Perm
    tau: Perm
    eta: Perm

    def __post_init__(self):
        ident = tuple(range(self.degree))
        if compose(compose(self.sigma, self.tau), self.eta) != ident:
            raise ValueError("sigma * tau * eta must be the identity")

    def to_json(self) -> dict:
        return {"degree": self.degree, "sigma": cycle_string(self.sigma), "tau": cycle_string(self.tau),
                "eta": cycle_string(self.eta)}


def _eta(n: int) -> Perm:
    half = 2 ** (n - 1)
    return tuple((i + 1) % half if i < half else half + (i - half + 1) % half for i in range(2 * half))


def _sigma_from_image(eta: Perm, n: int, s0: int) -> Perm | None:
    """The involution with ``sigma(0) = s0`` and ``sigma eta sigma = eta^r``, if any."""
    N = len(eta)
    r = 2 ** (n - 2) + 1
    eta_r = power(eta, r)
    sig = [-1] * N
    # sigma * eta = eta^r * sigma   (right action: i.sigma.eta = i.eta^r.sigma)
    todo = [(0, s0)]
    while todo:
        a, b = todo.pop()
        if sig[a] == -1:
            sig[a] = b
        elif sig[a] != b:
            return None
        if sig[b] == -1:
            todo.append((b, a))
        elif sig[b] != a:
            return None
        # a.eta^r . sigma = a.sigma.eta
        na, nb = eta_r[a], eta[b]
        if sig[na] == -1:
            todo.append((na, nb))
        elif sig[na] != nb:
            return None
    if -1 in sig:
        return None
    p = tuple(sig)
    if compose(p, p) != tuple(range(N)):
        return None
    if compose(compose(p, eta), p) != eta_r:
        return None
    return p


def qan_triangular_monodromy(n: int) -> MonodromyTriple:
    if n < 4:
        raise ValueError("n must be at least 4")
    eta = _eta(n)
    N = len(eta)
    QA = materialize_group(MetacyclicNormalForm.quasi_abelian(n))
    best = None
    for s0 in range(N):
        sig = _sigma_from_image(eta, n, s0)
        if sig is None or not is_transitive([eta, sig]):
            continue
        if best is not None and sig >= best:
            continue
        P = materialize_group(PermutationGenerators((eta, sig), ("eta", "sigma")))
        if P.order != QA.order:
            continue
        phi = _extend(QA, [QA.generators["x"], QA.generators["y"]], P,
                      [P.generators["eta"], P.generators["sigma"]])
        if phi is None or len(set(phi)) != P.order:
            continue
        best = sig
    if best is None:
        raise NoSolution(f"no involution sigma for n={n}")
    tau = compose(best, power(eta, 2 ** (n - 1) - 1))
    return MonodromyTriple(N, best, tau, eta)


def monodromy_group(t: MonodromyTriple):
    return materialize_group(PermutationGenerators((t.eta, t.sigma), ("eta", "sigma")))


def generates_qan(t: MonodromyTriple, n: int) -> bool:
    return is_isomorphic(monodromy_group(t), materialize_group(MetacyclicNormalForm.quasi_abelian(n)))


def dessin_genus(t: MonodromyTriple) -> int:
    if not is_transitive([t.sigma, t.tau, t.eta]):
        raise NotTransitive("the triple does not act transitively")
    chi = len(cycles(t.sigma)) + len(cycles(t.tau)) + len(cycles(t.eta)) - t.degree
    assert chi % 2 == 0
    return (2 - chi) // 2


@dataclass
class BipartiteMultigraph:
    black: list[tuple[int, ...]]
    white: list[tuple[int, ...]]
    edges: Counter

    @property
    def edge_count(self) -> int:
        return sum(self.edges.values())

    def is_k22_power(self, m: int) -> bool:
        if len(self.black) != 2 or len(self.white) != 2:
            return False
        pairs = {(b, w) for b in range(2) for w in range(2)}
        return set(self.edges) == pairs and all(self.edges[p] == m for p in pairs)

    def to_dot(self) -> str:
        lines = ["graph dessin {"]
        for i, c in enumerate(self.black):
            lines.append(f'  b{i} [shape=circle, style=filled, fillcolor=black, label="", tooltip="{len(c)}"];')
        for i, c in enumerate(self.white):
            lines.append(f'  w{i} [shape=circle, label="", tooltip="{len(c)}"];')
        for (b, w), k in sorted(self.edges.items()):
            for _ in range(k):
                lines.append(f"  b{b} -- w{w};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"black": [[i + 1 for i in c] for c in self.black], "white": [[i + 1 for i in c] for c in self.white],
                "edges": [{"black": b, "white": w, "multiplicity": k} for (b, w), k in sorted(self.edges.items())]}


def bipartite_graph(t: MonodromyTriple) -> BipartiteMultigraph:
    """Black vertices are the cycles of eta, white ones the cycles of tau; each point is an edge."""
    if not is_transitive([t.sigma, t.tau, t.eta]):
        raise NotTransitive("the triple does not act transitively")
    black = cycles(t.eta)
    white = cycles(t.tau)
    bof = {i: k for k, c in enumerate(black) for i in c}
    wof = {i: k for k, c in enumerate(white) for i in c}
    edges = Counter((bof[i], wof[i]) for i in range(t.degree))
    return BipartiteMultigraph(black, white, edges)


def printed_sigma_reading(n: int) -> Perm:
    """One reading of the closed-form sigma: k paired with 2^(n-1) + k + 2^(n-2)(1-t), t = k mod 2.

    Only the first product is used; it already defines sigma on every point.
    """
    half, quarter = 2 ** (n - 1), 2 ** (n - 2)
    img = list(range(2 * half))
    for k in range(1, half + 1):
        t = k % 2
        j = half + ((quarter * (1 - t) + k - 1) % half) + 1
        img[k - 1], img[j - 1] = j - 1, k - 1
    return tuple(img)
