from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qagenus.epimorphisms import classify_action, smooth_epimorphisms
from qagenus.families import qa
from qagenus.groups import subgroup_generated
from qagenus.quotients import (
    ConformalAction,
    NotConformalAction,
    conformal_part,
    fixed_point_ledger,
    hyperelliptic_within_group,
    is_purely_non_free,
    kani_rosen_check,
    quotient_signature,
)
from qagenus.signatures import parse_signature
from qagenus.witnesses import verify_witness

from oracles import closure

WITNESSES = [("strong", 4), ("strong", 5), ("strong", 6), ("hyp1_H1", 4), ("hyp1_H2", 5), ("hyp1_H3", 4),
             ("Ups0_theta1", 4), ("Ups0_theta2", 5), ("psrqan", 4), ("psKn_plus", 5), ("psrqan_remark", 5)]


def _action(wid, n) -> ConformalAction:
    return conformal_part(verify_witness(wid, n))


def _fix_by_characters(ca: ConformalAction, h: int) -> int:
    """|C_A(h)| * sum over branch data of #{k : g^k ~ h} / m."""
    G = ca.group
    A = ca.acting.elements
    cent = sum(1 for a in A if G.mul[a][h] == G.mul[h][a])
    cls = {G.mul[G.mul[a][h]][G.inv[a]] for a in A}
    total = Fraction(0)
    for g, m in ca.branch:
        hits = sum(1 for k in range(1, m) if G.power(g, k) in cls)
        total += Fraction(cent * hits, m)
    assert total.denominator == 1
    return int(total)


def _subgroups(ca):
    G = ca.group
    A = ca.acting.elements
    seen = set()
    for a in A:
        for b in A:
            H = frozenset(closure(G, [a, b]))
            if H not in seen:
                seen.add(H)
                yield subgroup_generated(G, sorted(H))


@pytest.mark.parametrize("wid,n", WITNESSES)
def test_fixed_points_match_character_formula(wid, n):
    ca = _action(wid, n)
    led = fixed_point_ledger(ca)
    for h, c in led.counts.items():
        assert c == _fix_by_characters(ca, h)


@pytest.mark.parametrize("wid,n", WITNESSES)
def test_fixed_points_class_function_and_double_count(wid, n):
    ca = _action(wid, n)
    G = ca.group
    A = ca.acting.elements
    led = fixed_point_ledger(ca)
    for h, c in led.counts.items():
        for a in A:
            assert led[G.mul[G.mul[a][h]][G.inv[a]]] == c
    # each branch point with stabilizer of order m is fixed by m - 1 non-trivial elements
    expected = sum(Fraction(len(A), m) * (m - 1) for _, m in ca.branch)
    assert sum(led.counts.values()) == expected


@pytest.mark.parametrize("wid,n", WITNESSES)
def test_riemann_hurwitz_closes_for_every_quotient(wid, n):
    ca = _action(wid, n)
    led = fixed_point_ledger(ca)
    for H in _subgroups(ca):
        q = quotient_signature(ca, H)
        # RH for S -> S/H, written with the fixed-point total of H
        fixed = sum(led[h] for h in H.elements if h != ca.group.identity)
        assert 2 * ca.genus - 2 == H.order * (2 * q.genus - 2) + fixed
        rhs = H.order * (2 * q.genus - 2 + sum(1 - Fraction(1, p) for p in q.signature.periods))
        assert 2 * ca.genus - 2 == rhs


@pytest.mark.parametrize("n", [4, 5, 6])
def test_triangular_fixed_points(n):
    act = verify_witness("strong", n)
    G = act.epimorphism.target
    led = fixed_point_ledger(act)
    assert led[G.element("x")] == 2
    assert led[G.element(f"x^{2 ** (n - 2)}")] == 4
    # y x^2 acts freely, so the action is not purely non-free
    assert led[G.element("y*x^2")] == 0
    assert not is_purely_non_free(act)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_kani_rosen(n):
    kr = kani_rosen_check(verify_witness("strong", n))
    assert kr.holds
    assert (kr.genus, kr.g_z, kr.g_y) == (2 ** (n - 2) - 1, 2 ** (n - 3) - 1, 2 ** (n - 4))
    assert kr.genus == kr.g_z + 2 * kr.g_y


def test_central_quotient():
    act = verify_witness("strong", 4)
    G = act.epimorphism.target
    q = quotient_signature(act, subgroup_generated(G, [G.element("x^4")]))
    assert str(q.signature) == "(1;+;[2,2,2,2];{-})" and q.genus == 1


def test_not_hyperelliptic():
    for n in (4, 5):
        assert not hyperelliptic_within_group(verify_witness("strong", n))
        assert not hyperelliptic_within_group(conformal_part(verify_witness("Ups0_theta1", n)))


def test_klein_has_no_conformal_part():
    with pytest.raises(NotConformalAction):
        conformal_part(verify_witness("ncqa", 4))


def test_nec_action_needs_conformal_part():
    with pytest.raises(NotConformalAction):
        fixed_point_ledger(verify_witness("hyp1_H1", 4))


def test_conformal_part_genus_matches():
    act = verify_witness("Ups0_theta1", 5)
    ca = conformal_part(act)
    assert ca.genus == act.genus and ca.acting.order == act.epimorphism.target.order // 2


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["(0;+;[2,2,4,8,8];{-})", "(0;+;[4,8,8];{-})", "(1;+;[2];{-})", "(0;+;[2,2,2,8];{-})"]),
       st.data())
def test_random_actions_double_count(text, data):
    G = qa(4)
    epis = smooth_epimorphisms(parse_signature(text), G)
    if not epis:
        return
    e = data.draw(st.sampled_from(epis))
    ca = conformal_part(classify_action(e))
    led = fixed_point_ledger(ca)
    assert sum(led.counts.values()) == sum(Fraction(G.order, m) * (m - 1) for _, m in ca.branch)
    for h, c in led.counts.items():
        assert c == _fix_by_characters(ca, h)
