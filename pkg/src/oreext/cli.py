"""Command-line interface.

Exit codes: 0 when every check passes (or the question does not apply), 1 when
a checked property fails, 2 when the input is invalid.
"""

from __future__ import annotations

import argparse
import hashlib
import inspect
import json
import sys
import time
from pathlib import Path
from typing import Any

from .core import GroupWithOperators, bracket, generated, stable_closure, sunitality_report
from .errors import AlgebraError, BadParams, ClaimFailed, NotRightIdeal, SchemaError, SemanticError, UnknownId
from .files import dump_item, dumps, from_json, parse_structure_file, to_json, element_key
from .noetherian import NotApplicable, ascending_chain_witness, check_horrible_all
from .ore import DEFAULT_BUDGET, DEFAULT_SEED, EndoPair, check_leibniz_mixed, check_triple_associativity, \
    check_vandermonde, twist_predicates
from .rings import Check, FiniteRing, PropertyReport, module_as_operators, module_property_report, \
    right_ideal_chain, ring_property_report

EXIT = {"pass": 0, "not_applicable": 0, "fail": 1, "error": 2}


class Result:
    def __init__(self, verdict: str, details: dict | None = None, witnesses: list | None = None,
                 inputs: list[str] | None = None):
        self.verdict = verdict
        self.details = details or {}
        self.witnesses = witnesses or []
        self.inputs = inputs or []


# --- helpers ----------------------------------------------------------------

def _load(path, kind: str | tuple, **kw):
    sf = parse_structure_file(path, **kw)
    kinds = (kind,) if isinstance(kind, str) else kind
    if sf.kind not in kinds:
        raise SemanticError(f"expected a {' or '.join(kinds)} file, got {sf.kind}", "$.kind")
    return sf


def _gwo(sf) -> GroupWithOperators:
    if sf.kind == "group_with_operators":
        return sf.structure
    if sf.kind == "ring" and isinstance(sf.structure, FiniteRing):
        from .rings import as_left_module
        return _as_ops(as_left_module(sf.structure))
    if sf.kind == "module":
        return _as_ops(sf.structure)
    raise SemanticError(f"a {sf.kind} file cannot be read as a group with operators", "$.kind")


def _as_ops(M):
    try:
        return module_as_operators(M)
    except AlgebraError as e:
        raise SemanticError(str(e), "$", e.witness) from None


def _parse_set(group, text: str) -> list[int]:
    """Element indices from a JSON list, or from comma-separated identifiers."""
    try:
        items = json.loads(text)
        if not isinstance(items, list):
            items = [items]
    except json.JSONDecodeError:
        items = []
        for tok in (t.strip() for t in text.split(",")):
            if tok:
                try:
                    items.append(json.loads(tok))
                except json.JSONDecodeError:
                    items.append(tok)
    keys = {element_key(l): i for i, l in enumerate(group.labels)}
    out = []
    for it in items:
        k = element_key(from_json(it))
        if k not in keys and isinstance(it, str):
            k = it
        if k not in keys:
            raise SchemaError(f"{it!r} is not an element", "--set")
        out.append(keys[k])
    return out


def _labels(G, items) -> list:
    return [to_json(G.label(i)) for i in items]


def _check_witnesses(checks: dict[str, Check]) -> list:
    return [{"property": k, "witness": to_json(tuple(c.witness))} for k, c in checks.items() if c.value is False]


# --- commands ---------------------------------------------------------------

def cmd_validate(args) -> Result:
    sf = parse_structure_file(args.file)
    s = sf.structure
    d: dict[str, Any] = {"kind": sf.kind, "name": sf.name}
    if sf.kind == "group_with_operators":
        d.update(order=s.group.order, operators=[to_json(o) for o in s.ops.labels],
                 zero_operator=to_json(s.op_label(s.ops.zero)), pair=sf.pair is not None,
                 companions=bool(sf.pair and sf.pair.has_companions))
    elif sf.kind == "ring":
        d.update(order=getattr(s, "order", None), pair=sf.pair is not None)
    elif sf.kind == "module":
        d.update(ring_order=s.ring.order, order=s.group.order)
    else:
        d.update(operators=len(s.B.ops), B_order=s.B.group.order, C_order=s.C_A.group.order)
    return Result("pass", d, inputs=sf.digests)


def cmd_closure(args) -> Result:
    sf = _load(args.file, ("group_with_operators", "ring", "module"))
    G = _gwo(sf)
    S = _parse_set(G.group, args.set)
    try:
        H = bracket(G, S) if args.mode == "bracket" else generated(G, S)
        closure = stable_closure(G, S)
    except AlgebraError as e:
        raise SemanticError(str(e), "--set", e.witness) from None
    d = {"set": _labels(G, sorted(set(S))), "mode": args.mode,
         "stable_closure": _labels(G, sorted(closure)), "subgroup": _labels(G, H), "order": len(H)}
    return Result("pass", d, inputs=sf.digests)


def cmd_sunital(args) -> Result:
    sf = _load(args.file, ("group_with_operators", "ring", "module"))
    rep = sunitality_report(_gwo(sf))
    return Result("pass", to_json(rep.to_dict()), inputs=sf.digests)


def _pair_of(sf) -> EndoPair:
    if sf.pair is None:
        raise SemanticError("the file declares no (sigma, delta) pair", "$.pair")
    return sf.pair


def cmd_identities(args) -> Result:
    sf = _load(args.file, "group_with_operators")
    G, pair = sf.structure, _pair_of(sf)
    van = check_vandermonde(G.group, pair, args.max_index)
    d = {"vandermonde": to_json(van.to_dict())}
    results = list(van.results)
    if pair.has_companions:
        tw = twist_predicates(G, pair)
        d["twists"] = to_json(tw.to_dict())
        if tw.ok:
            lm = check_leibniz_mixed(G, pair, args.max_index)
            d["leibniz_mixed"] = to_json(lm.to_dict())
            results += lm.results
        else:
            d["leibniz_mixed"] = {"status": "not_applicable", "reason": "twist hypotheses fail"}
    else:
        d["leibniz_mixed"] = {"status": "not_applicable", "reason": "no companion maps"}
    bad = [r for r in results if not r.holds]
    wit = [{"identity": r.name, "witness": to_json(tuple(r.witness))} for r in bad]
    return Result("fail" if bad else "pass", d, wit, sf.digests)


def cmd_assoc(args) -> Result:
    sf = _load(args.file, "triple")
    rep = check_triple_associativity(sf.structure, args.max_degree, args.budget, args.seed, args.jobs)
    d = to_json(rep.to_dict())
    d["max_degree"] = args.max_degree
    wit = []
    for k, v in rep.phase1_witnesses.items():
        wit.append({"hypothesis": k, "witness": to_json(tuple(v))})
    if rep.phase2_witness is not None:
        wit.append({"triple": to_json(rep.phase2_witness)})
    return Result("pass" if rep.phase2_ok else "fail", d, wit, sf.digests)


def cmd_chain(args) -> Result:
    sf = _load(args.file, ("group_with_operators", "ring", "module"))
    w = ascending_chain_witness(_gwo(sf), args.length)
    if isinstance(w, NotApplicable):
        return Result("not_applicable", {"reason": w.reason}, inputs=sf.digests)
    return Result("pass", to_json(w.to_dict()), inputs=sf.digests)


def cmd_horrible(args) -> Result:
    sf = _load(args.file, ("group_with_operators", "ring", "module"))
    G = _gwo(sf)
    pair = sf.pair if sf.kind == "group_with_operators" and sf.pair is not None else EndoPair.standard(G.group)
    s = check_horrible_all(G, pair, args.max_index, args.jobs)
    wit = [to_json(f.to_dict()) for f in s.failures[:5]]
    return Result("pass" if s.ok else "fail", to_json(s.to_dict()), wit, sf.digests)


def _algebra_report(cd) -> PropertyReport:
    dist = cd.distributivity()
    w = cd.associator_witness()
    skip = Check("skipped", note="no explicit multiplication table at this size")
    return PropertyReport(
        associative=Check.of(None if w is None else ("basis",) + w, "basis-triple search"),
        left_distributive=Check.of(None if dist.left else dist.witness, dist.method),
        right_distributive=Check.of(None if dist.right else dist.witness, dist.method),
        left_unital=skip, s_unital=skip, weakly_s_unital=skip)


def cmd_ring_report(args) -> Result:
    sf = _load(args.file, "ring")
    rep = ring_property_report(sf.structure) if isinstance(sf.structure, FiniteRing) else _algebra_report(sf.structure)
    return Result("pass", to_json(rep.to_dict()), _check_witnesses(rep.checks()), sf.digests)


def cmd_module_report(args) -> Result:
    ring = _load(args.ring, "ring")
    mod = _load(args.module, "module", ring_path=args.ring)
    ref = json.loads(Path(args.module).read_text()).get("ring")
    if ref is not None:
        ref_path = Path(args.module).parent / ref
        if ref_path.exists() and hashlib.sha256(ref_path.read_bytes()).hexdigest() != ring.digests[0]:
            raise SemanticError("the module file references a different ring", "$.ring")
    rep = module_property_report(mod.structure)
    return Result("pass", to_json(rep.to_dict()), _check_witnesses(rep.checks()), mod.digests)


def cmd_ideal_chain(args) -> Result:
    sf = _load(args.file, "ring")
    R = sf.structure
    if not isinstance(R, FiniteRing):
        raise SemanticError("ideal chains need an explicit multiplication table", "$")
    pair = sf.pair or EndoPair.standard(R.group)
    if args.coeffs is not None:
        coeffs = _parse_set(R.group, args.coeffs)
    else:
        coeffs = sf.meta.get("chain_coefficients")
        if not coeffs:
            raise SemanticError("no chain coefficients: pass --coeffs or set chain_coefficients", "$.chain_coefficients")
    try:
        rep = right_ideal_chain(R, pair.sigma, pair.delta, coeffs, args.depth)
    except NotRightIdeal as e:
        return Result("fail", {"right_ideal": False}, [{"escaping_product": to_json(e.witness)}], sf.digests)
    except AlgebraError as e:
        raise SemanticError(str(e), "$", e.witness) from None
    d = to_json(rep.to_dict(R))
    d["right_ideal"] = True
    wit = [] if rep.strict else [{"sizes": d["sizes"]}]
    return Result("pass" if rep.strict else "fail", d, wit, sf.digests)


def _gallery_params(pairs: list[str]) -> dict:
    out = {}
    for p in pairs:
        if "=" not in p:
            raise BadParams(f"parameter {p!r} is not of the form key=value", (p,))
        k, v = p.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


def cmd_gallery(args) -> Result:
    from .gallery import CATALOG, build, verify_all
    if args.action == "list":
        items = {}
        for gid, fn in CATALOG.items():
            items[gid] = {n: p.default for n, p in inspect.signature(fn).parameters.items()}
        return Result("pass", {"items": items})
    if not args.id:
        raise BadParams("gallery emit/verify needs an item id", ())
    item = build(args.id, **_gallery_params(args.params))
    if args.action == "verify":
        try:
            rep = verify_all(item)
        except ClaimFailed as e:
            return Result("fail", {"id": item.id, "claim": e.claim, "source": e.source},
                          [to_json(tuple(e.witness))])
        return Result("pass", to_json(rep.to_dict()))
    text = dumps(dump_item(item))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return Result("pass", {"id": item.id, "params": to_json(item.params), "path": args.out,
                           "sha256": hashlib.sha256(text.encode()).hexdigest()})


# --- argument parsing and output ------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="record elapsed_ms (otherwise null, keeping reports byte-stable)")

    p = argparse.ArgumentParser(prog="oreext", description="Ore extensions of groups with operators.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "parse and validate a structure file").add_argument("file")
    sp = add("closure", cmd_closure, "stable closure and generated stable subgroup")
    sp.add_argument("file")
    sp.add_argument("--set", required=True, help="JSON list or comma-separated element identifiers")
    sp.add_argument("--mode", choices=("full", "bracket"), default="full")
    add("sunital", cmd_sunital, "s-unitality and weak s-unitality").add_argument("file")
    sp = add("identities", cmd_identities, "pi-map identities")
    sp.add_argument("file")
    sp.add_argument("--max-index", type=int, default=4)
    sp = add("assoc", cmd_assoc, "associativity of a polynomial triple")
    sp.add_argument("file")
    sp.add_argument("--max-degree", type=int, default=1)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp = add("chain", cmd_chain, "strictly ascending chain in B[x] or not_applicable")
    sp.add_argument("file")
    sp.add_argument("--length", type=int, default=8)
    sp = add("horrible", cmd_horrible, "leading-term lemma over all small indices")
    sp.add_argument("file")
    sp.add_argument("--max-index", type=int, default=3)
    add("ring-report", cmd_ring_report, "ring property report").add_argument("file")
    sp = add("module-report", cmd_module_report, "module property report")
    sp.add_argument("ring")
    sp.add_argument("module")
    sp = add("ideal-chain", cmd_ideal_chain, "right-ideal chain in an Ore ring")
    sp.add_argument("file")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--coeffs", default=None)
    sp = add("gallery", cmd_gallery, "built-in example structures")
    sp.add_argument("action", choices=("list", "emit", "verify"))
    sp.add_argument("id", nargs="?")
    sp.add_argument("params", nargs="*", help="key=value, values parsed as JSON when possible")
    sp.add_argument("--out", default=None)
    return p


def _render_text(env: dict) -> str:
    lines = [f"{env['command']}: {env['verdict']}"]
    if "error" in env:
        e = env["error"]
        lines.append(f"  {e['type']}: {e['message']}")
        if e.get("witness"):
            lines.append(f"  witness: {json.dumps(e['witness'])}")
    for k, v in env.get("details", {}).items():
        lines.append(f"  {k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    for w in env.get("witnesses", []):
        lines.append(f"  witness: {json.dumps(w)}")
    return "\n".join(lines) + "\n"


def _validate_sizes(args):
    for name in ("max_index", "max_degree", "length", "depth"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name in ("max_degree", "depth") else 1):
            raise BadParams(f"--{name.replace('_', '-')} is out of range", (v,))
    if args.jobs < 1:
        raise BadParams("--jobs must be at least 1", (args.jobs,))


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        _validate_sizes(args)
        result = args.fn(args)
        env = {"command": args.command, "inputs": result.inputs, "verdict": result.verdict,
               "witnesses": result.witnesses, "details": result.details}
    except (AlgebraError, UnknownId, BadParams) as e:
        env = {"command": args.command, "inputs": [], "verdict": "error", "witnesses": [],
               "error": {"type": type(e).__name__, "message": str(e),
                         "location": getattr(e, "location", ""), "witness": to_json(tuple(e.witness))}}
    env["elapsed_ms"] = round((time.perf_counter() - start) * 1000) if args.timing else None
    text = json.dumps(env, indent=2) + "\n" if args.format == "json" else _render_text(env)
    out.write(text)
    return EXIT[env["verdict"]]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
