import pytest

from qagenus.epimorphisms import WitnessFails, smooth_epimorphisms
from qagenus.families import qa
from qagenus.signatures import parse_signature
from qagenus.witnesses import UnknownWitness, _fill, build_witness, catalog_ids, evaluate, verify_witness

PLAIN = ["strong", "hyp1_H1", "hyp1_H1_theta2", "hyp1_H2", "hyp1_H3", "ncqa", "Ups0_theta1", "Ups0_theta2",
         "Ups0_theta3", "psrqan", "psKn_plus"]


@pytest.mark.parametrize("wid", PLAIN)
@pytest.mark.parametrize("n", [4, 5, 6])
def test_catalog_verifies(wid, n):
    rec = verify_witness(wid, n)
    assert rec.genus >= 2


@pytest.mark.parametrize("n", [5, 6])
def test_second_k_witness(n):
    verify_witness("psrqan_remark", n)


@pytest.mark.parametrize("l,r", [(2, 1), (3, 1), (2, 3), (3, 3), (4, 1)])
def test_tps0_family(l, r):
    rec = verify_witness("tps0", 4, l=l, r=r)
    assert rec.pseudo_real_admissible


@pytest.mark.parametrize("n", [4, 5])
def test_strong_family_inside_enumeration(n):
    G = qa(n)
    sig = parse_signature(f"(0;+;[2,{2 ** (n - 1)},{2 ** (n - 1)}];{{-}})")
    found = {e.images for e in smooth_epimorphisms(sig, G)}
    family = {verify_witness("strong", n, k=k, r=r).epimorphism.images
              for k in (0, 2 ** (n - 2)) for r in range(1, 2 ** (n - 1), 2)}
    assert len(family) == 2 ** (n - 1)
    # the two-parameter family is half of the full solution set
    assert family < found and len(found) == 2 ** n


def test_strong_family_rejects_odd_k():
    with pytest.raises(WitnessFails):
        verify_witness("strong", 4, k=1, r=1)


def test_bad_parameters_fail():
    with pytest.raises(WitnessFails):
        verify_witness("strong", 4, k=0, r=2)


def test_unknown_and_catalog():
    assert set(PLAIN) <= set(catalog_ids())
    with pytest.raises(UnknownWitness):
        build_witness("nope", 4)


def test_expression_language():
    assert evaluate("2**(n-1)-1", {"n": 5}) == 15
    assert evaluate("n % 2 == 0 and n > 3", {"n": 4}) is True
    assert evaluate("1 if n == 4 else 2", {"n": 5}) == 2
    assert _fill("[2,${2**(n-2)}]", {"n": 5}) == "[2,8]"
    with pytest.raises(ValueError):
        evaluate("__import__('os')", {})
    with pytest.raises(ValueError):
        evaluate("m + 1", {"n": 1})
