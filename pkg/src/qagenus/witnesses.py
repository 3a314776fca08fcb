"""Catalog of explicitly constructed epimorphisms and their verification.

Entries live in ``data/witnesses.json``.  Exponents and signature periods
are written as ``${expr}`` with a tiny arithmetic language over the family
index ``n`` and the entry's parameters.
"""

from __future__ import annotations

import ast
import json
import operator
import re
from functools import lru_cache
from importlib import resources

from .epimorphisms import ActionRecord, WitnessFails, classify_action, make_epimorphism
from .groups import GroupTable, MetacyclicNormalForm, materialize_group, subgroup_generated
from .signatures import Signature, parse_signature

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Pow: operator.pow,
           ast.Mod: operator.mod, ast.FloorDiv: operator.floordiv}
_CMPOPS = {ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt, ast.LtE: operator.le,
           ast.Gt: operator.gt, ast.GtE: operator.ge}


class UnknownWitness(KeyError):
    pass


def evaluate(expr: str, env: dict[str, int]):
    """Evaluate integer arithmetic, comparisons and ``and``/``or`` over ``env``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown name {node.id!r} in {expr!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in _CMPOPS:
            return _CMPOPS[type(node.ops[0])](ev(node.left), ev(node.comparators[0]))
        if isinstance(node, ast.IfExp):
            return ev(node.body) if ev(node.test) else ev(node.orelse)
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        raise ValueError(f"unsupported expression {expr!r}")

    return ev(ast.parse(expr, mode="eval"))


def _fill(template: str, env: dict[str, int]) -> str:
    return re.sub(r"\$\{([^{}]*)\}", lambda m: str(evaluate(m.group(1), env)), template)


@lru_cache(maxsize=1)
def load_catalog() -> dict:
    text = resources.files("qagenus").joinpath("data/witnesses.json").read_text()
    return json.loads(text)


def catalog_ids() -> list[str]:
    return sorted(load_catalog()["witnesses"])


def family_group(family: str, n: int) -> GroupTable:
    if family == "QA":
        return materialize_group(MetacyclicNormalForm.quasi_abelian(n))
    if family == "K":
        return materialize_group(MetacyclicNormalForm.k_group(n))
    raise ValueError(f"unknown family {family!r}")


def _resolve(entry: dict, n: int, params: dict) -> tuple[dict, dict]:
    """Merge matching cases into the entry; return (entry view, environment)."""
    env = {"n": n}
    view = {k: v for k, v in entry.items() if k != "cases"}
    view["images"] = dict(entry.get("images", {}))
    view["expect"] = dict(entry.get("expect", {}))
    for k, v in entry.get("params", {}).items():
        env[k] = params.get(k, v)
    for k, v in params.items():
        env[k] = v
    for case in entry.get("cases", []):
        if evaluate(case["when"], env):
            for k, v in case.get("params", {}).items():
                if k not in params:
                    env[k] = evaluate(v, env) if isinstance(v, str) else v
            view["images"].update(case.get("images", {}))
            if "signature" in case:
                view["signature"] = case["signature"]
            if "genus" in case:
                view["expect"]["genus"] = case["genus"]
            break
    return view, env


def _tps0_images(view: dict, env: dict) -> tuple[Signature, dict[str, str]]:
    n, l, r = env["n"], env["l"], env["r"]
    if l < 2 or r < 1 or r % 2 == 0:
        raise WitnessFails("tps0 needs l >= 2 and odd r >= 1")
    imgs = view["images"]
    out = {"d1": _fill(imgs["d1"], env)}
    for j in range(1, l + 1):
        out[f"beta{j}"] = _fill(imgs["a_l"] if j == l else imgs["a_j"], env)
    # b_1 is fixed; the rest come in inverse pairs (b_s, b_{s+1}), s even
    out[f"beta{l + 1}"] = _fill(imgs["b_1"], env)
    for s in range(2, r, 2):
        out[f"beta{l + s}"] = _fill(imgs["b_s"], env)
        out[f"beta{l + s + 1}"] = _fill(imgs["b_s1"], env)
    sig = Signature(1, False, (2,) * l + (2 ** (n - 2),) * r)
    return sig, out


def build_witness(witness_id: str, n: int, **params):
    cat = load_catalog()["witnesses"]
    if witness_id not in cat:
        raise UnknownWitness(witness_id)
    entry = cat[witness_id]
    if n < entry.get("n_min", 4):
        raise WitnessFails(f"{witness_id} is stated for n >= {entry.get('n_min', 4)}")
    view, env = _resolve(entry, n, params)
    G = family_group(entry["group"], n)
    if entry.get("builder") == "tps0":
        sig, images = _tps0_images(view, env)
    else:
        sig = parse_signature(_fill(view["signature"], env))
        images = {k: _fill(v, env) for k, v in view["images"].items()}
    return G, sig, images, view, env


def verify_witness(witness_id: str, n: int, **params) -> ActionRecord:
    """Construct a catalogued epimorphism and check every stated property."""
    G, sig, images, view, env = build_witness(witness_id, n, **params)
    epi = make_epimorphism(sig, G, images)
    rec = classify_action(epi)
    exp = view["expect"]
    problems = []
    if "kernel_class" in exp and rec.kernel_class != exp["kernel_class"]:
        problems.append(f"kernel class {rec.kernel_class}, expected {exp['kernel_class']}")
    if "genus" in exp and rec.genus != evaluate(exp["genus"], env):
        problems.append(f"genus {rec.genus}, expected {evaluate(exp['genus'], env)}")
    if "plus_part" in exp:
        H = subgroup_generated(G, [G.element(_fill(w, env)) for w in exp["plus_part"]])
        if set(H.elements) != set(rec.plus_part.elements):
            problems.append(f"plus part {rec.plus_part.describe()}, expected {H.describe()}")
    if "pseudo_real_admissible" in exp and rec.pseudo_real_admissible != exp["pseudo_real_admissible"]:
        problems.append(f"pseudo_real_admissible is {rec.pseudo_real_admissible}")
    if problems:
        raise WitnessFails(f"{witness_id} (n={n}): " + "; ".join(problems))
    rec.notes.append(f"catalog witness {witness_id}")
    return rec
