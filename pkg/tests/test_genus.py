import json
from fractions import Fraction

import pytest

from qagenus.cache import EpiCache
from qagenus.families import g1, g1_subgroups, group, kn, kn_subgroups, qa, qa_subgroups
from qagenus.genus import (
    FAILS_FILTER,
    NO_EPI,
    NONINTEGRAL,
    GenusKind,
    GenusNotFound,
    UnsupportedGenus,
    max_pseudo_real_order_check,
    minimal_genus,
    passes,
    proper_extension,
    pseudo_real_genus_with_catalog,
    reflection_extension,
)
from qagenus.epimorphisms import classify_action, plus_part_must_equal, smooth_epimorphisms
from qagenus.signatures import Signature, parse_signature, presentation_of
from qagenus.witnesses import verify_witness

from oracles import area, brute_epimorphisms, nested_signatures, plus_part_pairs


def _oracle_genus(G, kind: str, H=None, top=8):
    """Walk genera upward with the nested-loop enumerator and the brute-force scan."""
    periods = sorted(set(G.order_spectrum()) - {1})
    start = 3 if kind == "crosscap" else 2
    for g in range(start, top + 1):
        a = Fraction(g - 2, G.order) if kind == "crosscap" else Fraction(2 * (g - 1), G.order)
        for h, orientable, per, cyc in nested_signatures(a, periods):
            sig = Signature(h, orientable, per, cyc)
            if area(sig) != a or (kind == "strong") != sig.is_fuchsian:
                continue
            pres = presentation_of(sig)
            for imgs in brute_epimorphisms(pres, G):
                plus = plus_part_pairs(pres, G, imgs)
                if kind == "strong":
                    return g
                if kind == "crosscap" and len(plus) == G.order:
                    return g
                if kind == "hyp" and plus == set(H.elements):
                    return g
    return None


@pytest.mark.parametrize("spec", ["QA:4", "C2xQ8", "CxC:4,2"])
def test_strong_symmetric_against_oracle(spec):
    G = group(spec)
    assert minimal_genus(G, GenusKind.strong_symmetric()).value == _oracle_genus(G, "strong")


@pytest.mark.parametrize("spec", ["QA:4", "CxC:4,2"])
def test_crosscap_against_oracle(spec):
    G = group(spec)
    assert minimal_genus(G, GenusKind.crosscap()).value == _oracle_genus(G, "crosscap")


def test_symmetric_hyperbolic_against_oracle():
    G = qa(4)
    for name, H in qa_subgroups(G).items():
        got = minimal_genus(G, GenusKind.symmetric_hyperbolic(H)).value
        assert got == _oracle_genus(G, "hyp", H), name


@pytest.mark.parametrize("n,s0,hyp,psi,cc", [(4, 3, (3, 2, 2), 7, 6), (5, 7, (7, 4, 4), 15, 10)])
def test_qa_values(n, s0, hyp, psi, cc):
    G = qa(n)
    subs = qa_subgroups(G)
    r = minimal_genus(G, GenusKind.strong_symmetric())
    assert r.value == s0
    assert str(r.witness_signatures[0]) == f"(0;+;[2,{2 ** (n - 1)},{2 ** (n - 1)}];{{-}})"
    got = tuple(minimal_genus(G, GenusKind.symmetric_hyperbolic(subs[k])).value for k in ("H1", "H2", "H3"))
    assert got == hyp
    assert minimal_genus(G, GenusKind.symmetric_hyperbolic()).value == min(hyp)
    p = minimal_genus(G, GenusKind.strong_pseudo_real())
    assert p.value == psi
    assert [str(s) for s in p.witness_signatures] == [f"(1;-;[2,2,{2 ** (n - 2)}];{{-}})"]
    assert minimal_genus(G, GenusKind.crosscap()).value == cc


def test_pure_symmetric_qa4():
    r = minimal_genus(qa(4), GenusKind.pure_symmetric())
    assert r.value == 13
    assert [str(s) for s in r.witness_signatures] == ["(0;+;[2,2,4,8,8];{-})"]
    assert all(w.purely_non_free for w in r.witnesses)


def test_certificate_contents():
    r = minimal_genus(qa(4), GenusKind.strong_pseudo_real())
    c = r.certificate
    assert c["signatures_examined"] >= c["signatures_with_actions"] >= 1
    reasons = {e.reason for e in r.excluded_minima}
    assert reasons <= {NO_EPI, FAILS_FILTER, NONINTEGRAL}
    assert NO_EPI in reasons
    obj = json.loads(json.dumps(r.to_json(certify=True), default=str))
    assert obj["value"] == 7 and obj["excluded_minima"]
    assert "certificate" in r.to_table(certify=True)


def test_k_and_g1_values():
    K = kn(4)
    ks = kn_subgroups(K)
    for name in ("Kplus", "QA", "QA'"):
        assert minimal_genus(K, GenusKind.sigma_ps(ks[name])).value == 17
    assert minimal_genus(K, GenusKind.strong_pseudo_real()).value == 17
    L = g1()
    gs = g1_subgroups(L)
    assert minimal_genus(L, GenusKind.sigma_ps(gs["QA"])).value == 21
    assert minimal_genus(L, GenusKind.sigma_ps(gs["C2xQ8"])).value == 17
    assert minimal_genus(L, GenusKind.strong_pseudo_real()).value == 17


def test_catalog_relative():
    res = pseudo_real_genus_with_catalog(qa(4), [kn(4), g1()])
    assert res["value"] == 7 and res["attained_by"] == "anticonformal" and res["catalog_relative"]
    assert len(res["certificate"]["branches"]) >= 3


def test_max_order_check():
    res = max_pseudo_real_order_check(qa, 7)
    assert res["attained"] and res["order"] == 16
    assert str(res["forced_signature"]) == "(1;-;[2,2,4];{-})"
    for bad in (6, 9):
        with pytest.raises(UnsupportedGenus):
            max_pseudo_real_order_check(qa, bad)


def test_genus_not_found():
    with pytest.raises(GenusNotFound):
        minimal_genus(qa(4), GenusKind.pure_symmetric(), max_genus=5)


def test_kind_validation():
    with pytest.raises(ValueError):
        GenusKind("nonsense")
    with pytest.raises(ValueError):
        GenusKind("sigma_ps")
    with pytest.raises(ValueError):
        GenusKind("crosscap", qa_subgroups(qa(4))["H1"])


def test_pseudo_real_filters():
    G = qa(4)
    H1 = qa_subgroups(G)["H1"]
    kind = GenusKind.strong_pseudo_real()
    # the witness is admissible and not excluded
    rec = verify_witness("Ups0_theta1", 4)
    assert passes(kind, rec) and reflection_extension(rec.epimorphism) is None
    # a symmetric action (with a reflection) never passes
    rec = verify_witness("hyp1_H2", 4)
    assert not passes(kind, rec)
    # genus-3 hyperbolic actions with plus part H1 exist but none is pseudo-real
    epis = smooth_epimorphisms(parse_signature("(1;-;[2,4];{-})"), G, plus_part_must_equal(H1))
    assert epis and not any(passes(kind, classify_action(e)) for e in epis)


def test_proper_extension_of_triangle():
    ext = proper_extension(parse_signature("(0;+;[2,8,8];{-})"))
    assert ext is not None


def test_cache_round_trip(tmp_path):
    cache = EpiCache(tmp_path)
    r1 = minimal_genus(qa(4), GenusKind.strong_pseudo_real(), cache=cache)
    files = list(tmp_path.iterdir())
    assert files
    r2 = minimal_genus(qa(4), GenusKind.strong_pseudo_real(), cache=cache)
    assert r1.value == r2.value and len(r1.witnesses) == len(r2.witnesses)
    # a stale version is ignored
    obj = json.loads(files[0].read_text())
    obj["version"] = -1
    files[0].write_text(json.dumps(obj))
    assert minimal_genus(qa(4), GenusKind.strong_pseudo_real(), cache=cache).value == 7


def test_workers_agree():
    a = minimal_genus(qa(4), GenusKind.strong_pseudo_real(), workers=1)
    b = minimal_genus(qa(4), GenusKind.strong_pseudo_real(), workers=2)
    assert a.value == b.value and len(a.witnesses) == len(b.witnesses)
