"""The fourteen acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary.
Criteria 2 and 4 contain a statement that the computation refutes (the
triangular action is not purely non-free, so the pure symmetric genus is
larger than the strong symmetric genus); those tests are strict xfails.
"""

import sys
from fractions import Fraction

import pytest

import conftest
from qagenus.dessins import bipartite_graph, dessin_genus, generates_qan, qan_triangular_monodromy
from qagenus.epimorphisms import plus_part_must_equal, smooth_epimorphisms
from qagenus.equivalence import MoveSet, classify_orbits
from qagenus.families import g1, g1_subgroups, kn, kn_subgroups, qa, qa_subgroups, structure_label
from qagenus.genus import GenusKind, max_pseudo_real_order_check
from qagenus.groups import automorphism_group, group_profile, has_inverting_automorphism, index_two_subgroups
from qagenus.quotients import conformal_part, fixed_point_ledger, hyperelliptic_within_group, is_purely_non_free, \
    kani_rosen_check
from qagenus.report import Session, _qago
from qagenus.signatures import parse_signature
from qagenus.witnesses import verify_witness

S = Session()


def genus(G, kind, label):
    return S.genus(G.name, G, kind, label)


def check(k: int, items):
    """``items``: (label, expected, computed).  Records and asserts."""
    bad = [(lab, e, c) for lab, e, c in items if e != c]
    if bad:
        text = "; ".join(f"{lab}: expected {e}, got {c}" for lab, e, c in bad)
    else:
        text = f"{len(items)} checks"
    conftest.ACCEPTANCE[k] = (not bad, text)
    print(f"criterion {k}: {'PASS' if not bad else 'FAIL'} {text}")
    assert not bad, text


def tri_sig(n):
    return parse_signature(f"(0;+;[2,{2 ** (n - 1)},{2 ** (n - 1)}];{{-}})")


def test_01_group_facts():
    items = []
    for n in (4, 5, 6):
        G = qa(n)
        p = group_profile(G)
        items += [
            (f"n={n} order", 2 ** n, p.order),
            (f"n={n} involutions", 3, p.involution_count),
            (f"n={n} index-2 types", sorted([f"C{2 ** (n - 2)}xC2", f"C{2 ** (n - 1)}", f"C{2 ** (n - 1)}"]),
             sorted(structure_label(H.as_group()) for H in index_two_subgroups(G))),
            (f"n={n} classes", 5 * 2 ** (n - 3), p.conjugacy_class_count),
            (f"n={n} |Aut|", 2 ** n, len(automorphism_group(G))),
        ]
    check(1, items)


@pytest.mark.xfail(strict=True, reason="sigma_p(QA_n) exceeds 2^(n-2)-1: the triangular action is not purely "
                                        "non-free (y*x^2 acts freely)")
def test_02_strong_and_pure_symmetric_genus():
    items = []
    for n in (4, 5, 6):
        r = genus(qa(n), GenusKind.strong_symmetric(), "s0")
        items += [(f"n={n} sigma0", 2 ** (n - 2) - 1, r.value),
                  (f"n={n} witness", str(tri_sig(n)), str(r.witness_signatures[0])),
                  (f"n={n} certified", True, r.certificate["signatures_examined"] > 0)]
    for n in (4, 5):
        items.append((f"n={n} sigma_p", 2 ** (n - 2) - 1, genus(qa(n), GenusKind.pure_symmetric(), "sp").value))
    check(2, items)


def test_03_triangular_uniqueness():
    items = []
    for n in (4, 5):
        epis = smooth_epimorphisms(tri_sig(n), qa(n))
        items.append((f"n={n} orbits", 1, classify_orbits(epis, moves=MoveSet(fuchsian_braids=True)).orbit_count))
    check(3, items)


@pytest.mark.xfail(strict=True, reason="y*x^2 has no fixed point under the triangular action")
def test_04_fixed_points():
    items = []
    for n in (4, 5):
        act = verify_witness("strong", n)
        G = act.epimorphism.target
        led = fixed_point_ledger(act)
        items += [(f"n={n} Fix(x)", 2, led[G.element("x")]),
                  (f"n={n} Fix(central)", 4, led[G.element(f"x^{2 ** (n - 2)}")]),
                  (f"n={n} purely non-free", True, is_purely_non_free(act))]
    check(4, items)


def test_05_non_hyperelliptic():
    items = []
    for n in (4, 5):
        items.append((f"n={n} triangular", False, hyperelliptic_within_group(verify_witness("strong", n))))
        psi = genus(qa(n), GenusKind.strong_pseudo_real(), "psi")
        items.append((f"n={n} psi* witnesses", False,
                      any(hyperelliptic_within_group(conformal_part(w)) for w in psi.witnesses)))
    check(5, items)


def _orbits(n, text, H, moves=()):
    epis = smooth_epimorphisms(parse_signature(text), qa(n), plus_part_must_equal(H))
    return classify_orbits(epis, moves=MoveSet.named(moves)).orbit_count


def test_06_symmetric_hyperbolic_genus():
    items = []
    for n in (4, 5):
        G = qa(n)
        subs = qa_subgroups(G)
        vals = {}
        for key in ("H1", "H2", "H3"):
            r = genus(G, GenusKind.symmetric_hyperbolic(subs[key]), "hyp" + key)
            vals[key] = r.value
        items += [(f"n={n} H1", 2 ** (n - 2) - 1, vals["H1"]), (f"n={n} H2", 2 ** (n - 3), vals["H2"]),
                  (f"n={n} H3", 2 ** (n - 3), vals["H3"]),
                  (f"n={n} overall", 2 ** (n - 3), genus(G, GenusKind.symmetric_hyperbolic(), "hyp").value),
                  (f"n={n} H1 orbits {{L}}", 1, _orbits(n, f"(1;-;[2,{2 ** (n - 2)}];{{-}})", subs["H1"], ("L",))),
                  (f"n={n} H2 orbits", 1, _orbits(n, f"(0;+;[{2 ** (n - 1)}];{{(2)}})", subs["H2"])),
                  (f"n={n} H3 orbits", 1, _orbits(n, f"(0;+;[{2 ** (n - 1)}];{{(2)}})", subs["H3"]))]
    check(6, items)


def test_07_strong_pseudo_real_genus():
    items = []
    for n in (4, 5):
        G = qa(n)
        r = genus(G, GenusKind.strong_pseudo_real(), "psi")
        items += [(f"n={n} psi*", 2 ** (n - 1) - 1, r.value),
                  (f"n={n} witness", [f"(1;-;[2,2,{2 ** (n - 2)}];{{-}})"], [str(s) for s in r.witness_signatures]),
                  (f"n={n} orbits Aut+Q", 2,
                   _orbits(n, f"(1;-;[2,2,{2 ** (n - 2)}];{{-}})", qa_subgroups(G)["H1"], ("Q",))),
                  (f"n={n} genera odd", True, _qago(n)),
                  (f"n={n} max order attained", True,
                   max_pseudo_real_order_check(qa, 2 ** (n - 1) - 1)["attained"])]
    check(7, items)


def test_08_zero_epimorphism_certificate():
    items = []
    for n in (4, 5):
        G = qa(n)
        epis = smooth_epimorphisms(parse_signature("(3;-;[-];{-})"), G, plus_part_must_equal(qa_subgroups(G)["H1"]))
        items.append((f"n={n} count", 0, len(epis)))
    check(8, items)


def test_09_k_groups():
    items = []
    for n in (4, 5):
        K = kn(n)
        ks = kn_subgroups(K)
        items += [(f"n={n} psrqan witness", True, verify_witness("psrqan", n).pseudo_real_admissible),
                  (f"n={n} psKn witness", True, verify_witness("psKn_plus", n).pseudo_real_admissible),
                  (f"n={n} sigma_ps(K, K+)", 2 ** n + 1,
                   genus(K, GenusKind.sigma_ps(ks["Kplus"]), "psKplus").value),
                  (f"n={n} inverting automorphism", True,
                   has_inverting_automorphism(K, (K.element("a"), K.element("b"))))]
    items.append(("sigma_ps(K4, QA4)", 17, genus(kn(4), GenusKind.sigma_ps(kn_subgroups(kn(4))["QA"]), "psQA").value))
    items.append(("sigma_ps(K5, QA5)", 45, genus(kn(5), GenusKind.sigma_ps(kn_subgroups(kn(5))["QA"]), "psQA").value))
    items.append(("psi*(K4)", 17, genus(kn(4), GenusKind.strong_pseudo_real(), "psi").value))
    check(9, items)


def test_10_g1_cross_check():
    L = g1()
    gs = g1_subgroups(L)
    check(10, [("sigma_ps(G1, QA4)", 21, genus(L, GenusKind.sigma_ps(gs["QA"]), "psQA").value),
               ("sigma_ps(G1, QA4')", 21, genus(L, GenusKind.sigma_ps(gs["QA'"]), "psQA'").value),
               ("sigma_ps(G1, C2xQ8)", 17, genus(L, GenusKind.sigma_ps(gs["C2xQ8"]), "psC2Q8").value),
               ("psi*(G1)", 17, genus(L, GenusKind.strong_pseudo_real(), "psi").value)])


def test_11_symmetric_crosscap_number():
    items = []
    for n in (4, 5):
        G = qa(n)
        r = genus(G, GenusKind.crosscap(), "cc")
        items.append((f"n={n} crosscap", 2 ** (n - 2) + 2, r.value))
        sigs = r.witness_signatures
        items.append((f"n={n} minimal signatures", 1, len(sigs)))
        epis = smooth_epimorphisms(sigs[0], G, GenusKind.crosscap().constraint())
        items.append((f"n={n} orbits", 1, classify_orbits(epis).orbit_count))
    check(11, items)


def test_12_dessin():
    items = []
    for n in (4, 5, 6):
        t = qan_triangular_monodromy(n)
        items += [(f"n={n} monodromy is QA_n", True, generates_qan(t, n)),
                  (f"n={n} genus", 2 ** (n - 2) - 1, dessin_genus(t)),
                  (f"n={n} K22 power", True, bipartite_graph(t).is_k22_power(2 ** (n - 2)))]
    check(12, items)


def test_13_kani_rosen():
    items = []
    for n in (4, 5, 6):
        kr = kani_rosen_check(verify_witness("strong", n))
        items += [(f"n={n} genera", (2 ** (n - 2) - 1, 2 ** (n - 3) - 1, 2 ** (n - 4)), (kr.genus, kr.g_z, kr.g_y)),
                  (f"n={n} identity", kr.genus, kr.g_z + 2 * kr.g_y), (f"n={n} holds", True, kr.holds)]
    check(13, items)


def test_14_property_suites():
    import test_epimorphisms as te
    import test_quotients as tq
    import test_signatures as ts

    failures = []
    ran = []

    def run(label, fn, *args):
        ran.append(label)
        try:
            fn(*args)
        except AssertionError as exc:
            failures.append(f"{label}: {exc}")

    for t in te.TARGETS:
        run(f"pruned vs brute {t}", te.test_pruned_search_equals_brute_force, t)
    run("area doubling", ts.test_canonical_fuchsian_over_enumerator_range)
    run("area doubling (random)", ts.test_canonical_fuchsian_area_doubles)
    for wid, n in tq.WITNESSES:
        run(f"RH closure {wid}/{n}", tq.test_riemann_hurwitz_closes_for_every_quotient, wid, n)
        run(f"fixed points {wid}/{n}", tq.test_fixed_points_class_function_and_double_count, wid, n)
        run(f"character formula {wid}/{n}", tq.test_fixed_points_match_character_formula, wid, n)
    check(14, [(f, "ok", "failed") for f in failures] or [(lab, "ok", "ok") for lab in ran])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
