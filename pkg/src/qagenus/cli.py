"""Command-line interface.

Exit codes: 0 success, 1 claim mismatch (``paper-report``), 2 usage error,
3 search budget or size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cache import EpiCache
from .coset_enum import CosetCapExceeded
from .dessins import bipartite_graph, dessin_genus, generates_qan, qan_triangular_monodromy
from .epimorphisms import (
    DEFAULT_BUDGET,
    NO_CONSTRAINT,
    PLUS_PART_FULL,
    PLUS_PART_PROPER,
    BudgetExceeded,
    WitnessFails,
    classify_action,
    plus_part_must_equal,
    smooth_epimorphisms,
)
from .equivalence import MoveSet, classify_orbits
from .families import group, named_subgroups, qa, resolve_subgroup, structure_label
from .genus import (
    GenusKind,
    GenusNotFound,
    UnsupportedGenus,
    max_pseudo_real_order_check,
    minimal_genus,
    pseudo_real_genus_with_catalog,
)
from .groups import CapExceeded, automorphism_group, group_profile, index_two_subgroups
from .quotients import conformal_part, fixed_point_ledger, kani_rosen_check, quotient_signature
from .report import Session, run_report
from .signatures import SignatureConstraints, enumerate_signatures, parse_signature, reduced_area
from .witnesses import catalog_ids, verify_witness

KINDS = {
    "strong-symmetric": "strong_symmetric",
    "pure-symmetric": "pure_symmetric",
    "symmetric-hyperbolic": "symmetric_hyperbolic",
    "strong-pseudo-real": "strong_pseudo_real",
    "crosscap": "crosscap",
    "sigma-ps": "sigma_ps",
}


class UsageError(ValueError):
    pass


def _emit(args, obj, text: str):
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _group(args):
    if args.group:
        return group(args.group)
    if args.n:
        return qa(args.n)
    raise UsageError("--group or --n is required")


def _cache(args):
    return EpiCache(args.cache_dir) if args.cache_dir else None


def _constraint(args, G):
    if args.plus_part in (None, "none"):
        return NO_CONSTRAINT
    if args.plus_part == "proper":
        return PLUS_PART_PROPER
    if args.plus_part == "full":
        return PLUS_PART_FULL
    return plus_part_must_equal(resolve_subgroup(G, args.plus_part))


def _signature(args):
    if not args.signature:
        raise UsageError("--signature is required")
    return parse_signature(args.signature)


def _params(items) -> dict:
    out = {}
    for it in items or []:
        k, _, v = it.partition("=")
        if not v:
            raise UsageError(f"bad --param {it!r}, expected name=value")
        out[k] = int(v)
    return out


# --------------------------------------------------------------------------
# commands


def cmd_group(args):
    G = _group(args)
    if args.action == "info":
        p = group_profile(G)
        subs = index_two_subgroups(G)
        obj = {"group": G.name, "order": p.order, "exponent": p.exponent, "involutions": p.involution_count,
               "conjugacy_classes": p.conjugacy_class_count, "automorphisms": len(automorphism_group(G)),
               "order_spectrum": p.order_spectrum, "abelian": G.is_abelian(),
               "index_two_subgroups": [{"generators": H.describe(), "type": structure_label(H.as_group())}
                                       for H in subs]}
        lines = [f"{G.name}: order {p.order}, exponent {p.exponent}, {p.involution_count} involutions, "
                 f"{p.conjugacy_class_count} conjugacy classes, |Aut| = {obj['automorphisms']}",
                 "order spectrum: " + ", ".join(f"{k}:{v}" for k, v in p.order_spectrum.items())]
        lines += [f"index 2: {d['generators']} ({d['type']})" for d in obj["index_two_subgroups"]]
        _emit(args, obj, "\n".join(lines))
    elif args.action == "auts":
        auts = automorphism_group(G)
        gens = sorted(G.generators.items())
        rows = [{k: G.element_names[a(v)] for k, v in gens} for a in auts]
        _emit(args, {"group": G.name, "count": len(auts), "automorphisms": rows},
              f"|Aut({G.name})| = {len(auts)}\n" + "\n".join(
                  ", ".join(f"{k} -> {v}" for k, v in r.items()) for r in rows))
    else:
        names = named_subgroups(G)
        rows = [{"name": k, "generators": H.describe(), "order": H.order, "type": structure_label(H.as_group())}
                for k, H in names.items()]
        _emit(args, {"group": G.name, "index_two_subgroups": rows},
              "\n".join(f"{r['name']}: {r['generators']} order {r['order']} ({r['type']})" for r in rows))
    return 0


def cmd_signatures(args):
    if args.max_area is None:
        raise UsageError("--max-area is required")
    periods = frozenset(int(p) for p in args.periods.split(",")) if args.periods else None
    if periods is None:
        periods = frozenset(_group(args).order_spectrum()) - {1}
    cons = SignatureConstraints(Fraction(args.max_area), periods, args.sign,
                                require_empty_boundary_quotient=args.no_boundary)
    sigs = enumerate_signatures(cons)
    obj = [{"signature": str(s), "area": str(reduced_area(s))} for s in sigs]
    _emit(args, obj, "\n".join(f"{d['signature']}  area {d['area']}" for d in obj))
    return 0


def cmd_epis(args):
    if args.action == "verify-witness":
        if not args.id:
            raise UsageError("--id is required (one of " + ", ".join(catalog_ids()) + ")")
        if not args.n:
            raise UsageError("--n is required")
        try:
            rec = verify_witness(args.id, args.n, **_params(args.param))
        except WitnessFails as exc:
            _emit(args, {"witness": args.id, "valid": False, "reason": str(exc)}, f"FAILED: {exc}")
            return 1
        obj = {"witness": args.id, "valid": True, **rec.to_json()}
        _emit(args, obj, f"{args.id} (n={args.n}) valid: {rec.signature}, genus {rec.genus}, {rec.kernel_class}\n"
              + ", ".join(f"{k}={v}" for k, v in rec.epimorphism.describe().items()))
        return 0
    G = _group(args)
    sig = _signature(args)
    epis = smooth_epimorphisms(sig, G, _constraint(args, G), args.budget)
    recs = [classify_action(e) for e in epis]
    obj = {"group": G.name, "signature": str(sig), "count": len(epis),
           "epimorphisms": [r.to_json() for r in recs[: args.limit]]}
    lines = [f"{len(epis)} smooth epimorphism(s) {sig} -> {G.name}"]
    for r in recs[: args.limit]:
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in r.epimorphism.describe().items())
                     + f"  [{r.kernel_class}, genus {r.genus}]")
    _emit(args, obj, "\n".join(lines))
    return 0


def _moves(args) -> MoveSet:
    if args.moves and os.path.exists(args.moves):
        ms = MoveSet.from_file(args.moves)
    elif args.moves:
        ms = MoveSet.named([m for m in args.moves.split(",") if m])
    else:
        ms = MoveSet()
    if args.braids:
        ms.fuchsian_braids = True
    return ms


def cmd_classify(args):
    G = _group(args)
    sig = _signature(args)
    epis = smooth_epimorphisms(sig, G, _constraint(args, G), args.budget)
    rep = classify_orbits(epis, automorphism_group(G), _moves(args))
    text = [f"{rep.orbit_count} orbit(s) among {len(epis)} epimorphism(s); sizes {rep.orbit_sizes}",
            f"({rep.bound_label})"]
    for r in rep.representatives:
        text.append("  " + ", ".join(f"{k}={v}" for k, v in r.describe().items()))
    text += [f"  separator: {s}" for s in rep.invariant_separators]
    _emit(args, rep.to_json(), "\n".join(text))
    return 0


def _kind(args, G) -> GenusKind:
    if not args.kind:
        raise UsageError("--kind is required (" + ", ".join(KINDS) + ")")
    tag = KINDS.get(args.kind, args.kind)
    if tag not in GenusKind.TAGS:
        raise UsageError(f"unknown kind {args.kind!r}")
    H = resolve_subgroup(G, args.plus_part) if args.plus_part else None
    if tag == "sigma_ps" and H is None:
        raise UsageError("--kind sigma-ps needs --plus-part")
    return GenusKind(tag, H)


def cmd_genus(args):
    G = _group(args)
    kind = _kind(args, G)
    rep = minimal_genus(G, kind, budget=args.budget, workers=args.workers, cache=_cache(args))
    _emit(args, rep.to_json(certify=args.certify), rep.to_table(certify=args.certify))
    return 0


def cmd_pseudoreal(args):
    if args.action == "max-order":
        if args.g is None:
            raise UsageError("--g is required")
        res = max_pseudo_real_order_check(qa, args.g, budget=args.budget)
        obj = dict(res, forced_signature=str(res["forced_signature"]) if res["forced_signature"] else None,
                   carrying_signatures=[str(s) for s in res["carrying_signatures"]])
        _emit(args, obj, f"g = {args.g}: |QA_{res['n']}| = {res['order']} = 2g+2 attained: {res['attained']}; "
                         f"forced signature {obj['forced_signature']}")
        return 0
    G = _group(args)
    over = [o for o in (args.overgroups or "").split(";") if o]
    res = pseudo_real_genus_with_catalog(G, [group(o) for o in over], budget=args.budget, cache=_cache(args))
    lines = [f"catalog-relative pseudo-real genus of {G.name}: {res['value']} ({res['attained_by']})"]
    lines += [f"  via {b['via']} {b.get('plus_part', '')} {b['kind']}: {b['value']}"
              for b in res["certificate"]["branches"]]
    _emit(args, res, "\n".join(lines))
    return 0


def _action(args):
    if args.witness:
        return verify_witness(args.witness, args.n or 4, **_params(args.param))
    G = _group(args)
    sig = _signature(args)
    epis = smooth_epimorphisms(sig, G, _constraint(args, G), args.budget)
    if not epis:
        raise UsageError(f"no smooth epimorphism {sig} -> {G.name}")
    return classify_action(epis[0])


def _conformal(rec):
    return conformal_part(rec)


def cmd_quotients(args):
    rec = _action(args)
    ca = _conformal(rec)
    G = ca.group
    if not args.subgroup:
        raise UsageError("--subgroup is required (comma-separated generator words)")
    H = resolve_subgroup(G, args.subgroup)
    q = quotient_signature(ca, H)
    _emit(args, q.to_json(), f"S/{H.describe()}: {q.signature}, genus {q.genus}")
    return 0


def cmd_fixed_points(args):
    rec = _action(args)
    led = fixed_point_ledger(_conformal(rec))
    obj = {"counts": led.to_json(), "purely_non_free": all(c > 0 for c in led.counts.values())}
    lines = [f"{k}: {v}" for k, v in obj["counts"].items()]
    lines.append(f"purely non-free: {obj['purely_non_free']}")
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_kani_rosen(args):
    rec = _action(args)
    kr = kani_rosen_check(_conformal(rec))
    g, gz, gy, gyz, gv = kr.genus_tuple
    _emit(args, kr.to_json(), f"({g}; {gz}, {gy}, {gyz}; {gv}) holds: {kr.holds}")
    return 0


def cmd_dessin(args):
    if not args.n:
        raise UsageError("--n is required")
    t = qan_triangular_monodromy(args.n)
    g = bipartite_graph(t)
    if args.dot:
        print(g.to_dot())
        return 0
    m = 2 ** (args.n - 2)
    obj = {"triple": t.to_json(), "genus": dessin_genus(t), "graph": g.to_json(),
           "is_k22_power": g.is_k22_power(m), "multiplicity": m, "monodromy_is_qa": generates_qan(t, args.n)}
    _emit(args, obj, f"sigma = {obj['triple']['sigma']}\neta = {obj['triple']['eta']}\ntau = {obj['triple']['tau']}\n"
                     f"genus {obj['genus']}; K_(2,2)^{m}: {obj['is_k22_power']}; <eta, sigma> = QA_{args.n}: "
                     f"{obj['monodromy_is_qa']}")
    return 0


def cmd_report(args):
    if not args.n:
        raise UsageError("--n is required")
    sess = Session(cache=_cache(args), budget=args.budget, workers=args.workers)
    rows = run_report(args.n, sess)
    bad = [r for r in rows if r.status != "match"]
    if args.json:
        print(json.dumps([r.to_json() for r in rows], indent=2, default=str))
    else:
        w = max(len(r.claim_id) for r in rows)
        for r in rows:
            print(f"{r.claim_id:<{w}}  {r.status:<8}  expected {r.expected!s:<24} computed {r.computed!s:<24} "
                  f"{r.runtime_ms} ms")
        print(f"{len(rows) - len(bad)}/{len(rows)} claims match")
    return 1 if bad else 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group spec, e.g. QA:4, K:5, G1, C:8, CxC:4,2, or JSON")
    common.add_argument("--n", type=int, help="family index n (QA_n when --group is absent)")
    common.add_argument("--signature", help='signature text, e.g. "(1;-;[2,2,4];{-})"')
    common.add_argument("--kind", help="genus kind: " + ", ".join(KINDS))
    common.add_argument("--plus-part", help="H1/H2/H3, Kplus, QA, C2xQ8, #k, words 'x^2,y', proper, full")
    common.add_argument("--moves", help="move names (L,Q) or a JSON move file")
    common.add_argument("--cache-dir", help="directory for cached epimorphism searches")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--certify", action="store_true", help="include the excluded-signature ledger")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="worker processes")

    p = argparse.ArgumentParser(prog="qagenus", description="Group actions on Riemann and Klein surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="group facts")
    g.add_argument("action", choices=["info", "auts", "subgroups"])
    g.set_defaults(func=cmd_group)

    s = sub.add_parser("signatures", parents=[common], help="signature enumeration")
    s.add_argument("action", choices=["enumerate"])
    s.add_argument("--max-area", help="bound on the reduced area, e.g. 1/2")
    s.add_argument("--periods", help="allowed periods, comma-separated (default: element orders of --group)")
    s.add_argument("--sign", choices=["+", "-", "fuchsian", "proper"])
    s.add_argument("--no-boundary", action="store_true", help="no period cycles")
    s.set_defaults(func=cmd_signatures)

    e = sub.add_parser("epis", parents=[common], help="epimorphism search and witness checks")
    e.add_argument("action", choices=["search", "verify-witness"])
    e.add_argument("--id", help="witness id")
    e.add_argument("--param", action="append", help="witness parameter name=value")
    e.add_argument("--limit", type=int, default=20, help="how many epimorphisms to print")
    e.set_defaults(func=cmd_epis)

    c = sub.add_parser("classify", parents=[common], help="orbit classification")
    c.add_argument("action", choices=["orbits"])
    c.add_argument("--braids", action="store_true", help="add Hurwitz braid moves")
    c.set_defaults(func=cmd_classify)

    gn = sub.add_parser("genus", parents=[common], help="certified minimal genus")
    gn.set_defaults(func=cmd_genus)

    ps = sub.add_parser("pseudoreal", parents=[common], help="pseudo-real checks")
    ps.add_argument("action", choices=["max-order", "catalog"])
    ps.add_argument("--g", type=int, help="genus for max-order")
    ps.add_argument("--overgroups", help="semicolon-separated group specs for the catalog")
    ps.set_defaults(func=cmd_pseudoreal)

    for name, fn in (("quotients", cmd_quotients), ("fixed-points", cmd_fixed_points),
                     ("kani-rosen", cmd_kani_rosen)):
        q = sub.add_parser(name, parents=[common], help=f"{name} of an action")
        q.add_argument("--witness", help="use a catalog witness as the action")
        q.add_argument("--param", action="append", help="witness parameter name=value")
        if name == "quotients":
            q.add_argument("--subgroup", help="subgroup by name or generator words")
        q.set_defaults(func=fn)

    d = sub.add_parser("dessin", parents=[common], help="dessin of the triangular action")
    d.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    d.set_defaults(func=cmd_dessin)

    r = sub.add_parser("paper-report", parents=[common], help="recompute every catalogued claim")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, CapExceeded, CosetCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, UnsupportedGenus, GenusNotFound, ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
