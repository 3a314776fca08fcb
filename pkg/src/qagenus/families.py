"""The concrete groups of interest and their named subgroups."""

from __future__ import annotations

from functools import lru_cache

from .groups import (
    G1_PRESENTATION,
    GroupTable,
    MetacyclicNormalForm,
    Subgroup,
    index_two_subgroups,
    is_isomorphic,
    materialize_group,
    parse_group_spec,
    subgroup_generated,
)


@lru_cache(maxsize=None)
def qa(n: int) -> GroupTable:
    return materialize_group(MetacyclicNormalForm.quasi_abelian(n))


@lru_cache(maxsize=None)
def kn(n: int) -> GroupTable:
    return materialize_group(MetacyclicNormalForm.k_group(n))


@lru_cache(maxsize=None)
def g1() -> GroupTable:
    return materialize_group(G1_PRESENTATION)


def group(text: str) -> GroupTable:
    """Materialize a textual group spec, reusing cached family members."""
    t = text.strip()
    if t.startswith("QA:"):
        return qa(int(t[3:]))
    if t.startswith("K:"):
        return kn(int(t[2:]))
    if t == "G1":
        return g1()
    return materialize_group(parse_group_spec(t))


def _family_n(G: GroupTable) -> int:
    return G.order.bit_length() - 1


def _gen(G: GroupTable, words) -> Subgroup:
    return subgroup_generated(G, [G.element(w) for w in words])


def qa_subgroups(G: GroupTable) -> dict[str, Subgroup]:
    """The three index-2 subgroups of QA_n: <x^2, y>, <x>, <yx>."""
    return {"H1": _gen(G, ["x^2", "y"]), "H2": _gen(G, ["x"]), "H3": _gen(G, ["y*x"])}


def kn_subgroups(G: GroupTable) -> dict[str, Subgroup]:
    """Index-2 subgroups of K_n: the abelian one and the two copies of QA_n."""
    n = _family_n(G) - 1
    out = {"Kplus": _gen(G, ["a", "b^2"]), "QA": _gen(G, ["b", f"a^2*b^{2 ** (n - 3)}"])}
    rest = [H for H in index_two_subgroups(G) if H.elements not in {K.elements for K in out.values()}]
    assert len(rest) == 1
    out["QA'"] = rest[0]
    return out


def g1_subgroups(G: GroupTable) -> dict[str, Subgroup]:
    """Index-2 subgroups of G_1 labelled by isomorphism type."""
    out: dict[str, Subgroup] = {}
    qa4 = qa(4)
    for H in index_two_subgroups(G):
        key = "QA" if is_isomorphic(H.as_group(), qa4) else "C2xQ8"
        if key in out:
            key += "'"
        out[key] = H
    return out


def named_subgroups(G: GroupTable) -> dict[str, Subgroup]:
    if G.name.startswith("QA_"):
        return qa_subgroups(G)
    if G.name.startswith("K_"):
        return kn_subgroups(G)
    if G.name == "G_1":
        return g1_subgroups(G)
    return {f"#{i}": H for i, H in enumerate(index_two_subgroups(G), 1)}


def resolve_subgroup(G: GroupTable, text: str) -> Subgroup:
    """A named subgroup (``H1``, ``Kplus``, ``#2`` ...) or one generated by comma-separated words."""
    names = named_subgroups(G)
    if text in names:
        return names[text]
    if text.startswith("#"):
        subs = index_two_subgroups(G)
        return subs[int(text[1:]) - 1]
    return _gen(G, [w for w in text.split(",") if w.strip()])


def _abelian_type(G: GroupTable) -> list[int]:
    orders = G.element_orders
    factors: list[int] = []
    primes = sorted({p for p in range(2, G.order + 1) if G.order % p == 0
                     and all(p % q for q in range(2, int(p ** 0.5) + 1))})
    for p in primes:
        # c_k = log_p #{g : g^(p^k) = 1}
        logs = []
        k = 0
        while True:
            cnt = sum(1 for o in orders if (p ** k) % o == 0)
            c = 0
            while cnt > 1:
                cnt //= p
                c += 1
            logs.append(c)
            if k > 0 and logs[-1] == logs[-2]:
                break
            k += 1
        for k in range(1, len(logs)):
            # cyclic factors of order exactly p^k
            ge_k = logs[k] - logs[k - 1]
            ge_k1 = logs[k + 1] - logs[k] if k + 1 < len(logs) else 0
            factors += [p ** k] * (ge_k - ge_k1)
    return sorted(factors, reverse=True)


def structure_label(G: GroupTable) -> str:
    if G.order == 1:
        return "1"
    if G.is_abelian():
        return "x".join(f"C{m}" for m in _abelian_type(G))
    n = _family_n(G)
    if 2 ** n == G.order and n >= 4 and is_isomorphic(G, qa(n)):
        return f"QA{n}"
    if G.order == 8 and is_isomorphic(G, materialize_group(parse_group_spec("Q8"))):
        return "Q8"
    if G.order == 16 and is_isomorphic(G, materialize_group(parse_group_spec("C2xQ8"))):
        return "C2xQ8"
    return f"nonabelian group of order {G.order}"
