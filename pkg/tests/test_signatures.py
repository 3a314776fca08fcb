from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qagenus.signatures import (
    NonexistentSignature,
    NotProperNEC,
    Signature,
    SignatureConstraints,
    SignatureSyntaxError,
    canonical_fuchsian_signature,
    enumerate_signatures,
    genus_from_action,
    parse_signature,
    presentation_of,
    reduced_area,
)

from oracles import area, nested_signatures

periods_st = st.lists(st.sampled_from([2, 3, 4, 6, 8]), max_size=4).map(lambda p: tuple(sorted(p)))
cycle_st = st.lists(st.sampled_from([2, 4, 8]), max_size=3).map(tuple)


@st.composite
def signatures(draw):
    orientable = draw(st.booleans())
    genus = draw(st.integers(0 if orientable else 1, 3))
    cycles = tuple(draw(st.lists(cycle_st, max_size=2)))
    sig = Signature(genus, orientable, draw(periods_st), cycles)
    if area(sig) <= 0:
        sig = Signature(genus + 2, orientable, sig.periods, sig.cycles)
    return sig


def test_parse_and_print():
    for text in ["(0;+;[2,8,8];{-})", "(1;-;[2,2,4];{-})", "(0;+;[-];{(-),(2)})", "(3;-;[-];{-})"]:
        assert str(parse_signature(text)) == text


def test_syntax_errors():
    for bad in ["", "(0;*;[2];{-})", "0;+;[2]"]:
        with pytest.raises(SignatureSyntaxError):
            parse_signature(bad)


def test_known_areas():
    assert reduced_area(parse_signature("(0;+;[2,8,8];{-})")) == Fraction(1, 4)
    assert reduced_area(parse_signature("(1;-;[2,2,4];{-})")) == Fraction(3, 4)
    assert reduced_area(parse_signature("(0;+;[-];{(-),(2)})")) == Fraction(1, 4)


@settings(max_examples=200, deadline=None)
@given(signatures())
def test_area_matches_oracle(sig):
    assert reduced_area(sig) == area(sig)


@settings(max_examples=200, deadline=None)
@given(signatures())
def test_canonical_fuchsian_area_doubles(sig):
    if sig.is_fuchsian:
        with pytest.raises(NotProperNEC):
            canonical_fuchsian_signature(sig)
        return
    assert reduced_area(canonical_fuchsian_signature(sig)) == 2 * reduced_area(sig)


def test_canonical_fuchsian_over_enumerator_range():
    cons = SignatureConstraints(Fraction(1), frozenset({2, 4, 8}))
    for sig in enumerate_signatures(cons):
        if not sig.is_fuchsian:
            assert reduced_area(canonical_fuchsian_signature(sig)) == 2 * reduced_area(sig)


@settings(max_examples=100, deadline=None)
@given(signatures(), st.sampled_from([16, 32, 64]))
def test_riemann_hurwitz_genus(sig, order):
    a = reduced_area(sig)
    if (order * a / 2).denominator != 1:
        return
    assert genus_from_action(sig, order) == 1 + order * a / 2
    if a.denominator == 1 or (order * a).denominator == 1:
        assert genus_from_action(sig, order, "klein") == 2 + order * a


def test_nonexistent_signature():
    with pytest.raises(NonexistentSignature):
        presentation_of(parse_signature("(1;+;[-];{-})"))


@pytest.mark.parametrize("periods,bound", [
    ([2], Fraction(1)), ([2, 4], Fraction(1)), ([2, 4, 8], Fraction(1, 2)), ([3, 4, 6], Fraction(1)),
    ([2, 3, 7], Fraction(1, 2)),
])
def test_enumeration_matches_nested_loops(periods, bound):
    got = enumerate_signatures(SignatureConstraints(bound, frozenset(periods)))
    assert len(got) == len(set(got))
    as_tuples = {(s.genus, s.orientable, s.periods, tuple(sorted(s.cycles))) for s in got}
    assert as_tuples == nested_signatures(bound, periods)
    areas = [reduced_area(s) for s in got]
    assert areas == sorted(areas)


def test_sign_filters():
    base = enumerate_signatures(SignatureConstraints(Fraction(1), frozenset({2, 4})))
    minus = enumerate_signatures(SignatureConstraints(Fraction(1), frozenset({2, 4}), "-"))
    fuchs = enumerate_signatures(SignatureConstraints(Fraction(1), frozenset({2, 4}), "fuchsian"))
    assert set(minus) == {s for s in base if not s.orientable}
    assert set(fuchs) == {s for s in base if s.is_fuchsian}


@settings(max_examples=60, deadline=None)
@given(signatures())
def test_presentation_shape(sig):
    p = presentation_of(sig)
    chi = p.orientation_character
    assert set(chi) == set(p.labels)
    # orientation-reversing generators exist exactly for proper NEC signatures
    assert any(v < 0 for v in chi.values()) == (not sig.is_fuchsian)
