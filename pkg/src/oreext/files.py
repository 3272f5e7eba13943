"""JSON structure files: parsing with located errors, and deterministic emission.

Element identifiers are arbitrary JSON values; lists are read as tuples.  Maps
(actions, sigma, delta) are JSON objects keyed by the identifier itself when it
is a string and by its compact JSON text otherwise.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Hashable

import numpy as np

from .core import (
    CyclicProductGroup,
    FiniteAbelianGroup,
    GroupWithOperators,
    make_group,
    validate_structure,
)
from .errors import (
    AlgebraError,
    BadParams,
    SchemaError,
    SemanticError,
    StructureSyntaxError,
    UnknownId,
)
from .ore import AssocTriple, EndoPair, make_triple
from .rings import FiniteRing, LeftModule

KINDS = ("group_with_operators", "ring", "module", "triple")


def element_key(label: Hashable) -> str:
    return label if isinstance(label, str) else json.dumps(to_json(label), separators=(",", ":"))


def to_json(value):
    if isinstance(value, tuple):
        return [to_json(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


def from_json(value):
    if isinstance(value, list):
        return tuple(from_json(v) for v in value)
    return value


@dataclass
class StructureFile:
    kind: str
    name: str
    structure: Any
    pair: EndoPair | None = None
    meta: dict = field(default_factory=dict)
    digests: list[str] = field(default_factory=list)
    item: Any = None                      # gallery item for construction files


# --- reading ----------------------------------------------------------------

def _need(d: dict, key: str, loc: str, kind=None):
    if not isinstance(d, dict):
        raise SchemaError("expected an object", loc)
    if key not in d:
        raise SchemaError(f"missing field {key!r}", loc)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"field {key!r} has the wrong type", f"{loc}.{key}")
    return v


def _lookup(index: dict, value, loc: str, what: str = "element") -> int:
    try:
        return index[from_json(value)]
    except (KeyError, TypeError):
        raise SchemaError(f"{value!r} is not a listed {what}", loc) from None


def parse_group(d, loc: str) -> FiniteAbelianGroup:
    if isinstance(d, dict) and "cyclic_product" in d:
        mods = d["cyclic_product"]
        if not (isinstance(mods, list) and mods and all(isinstance(m, int) and not isinstance(m, bool) and m >= 1 for m in mods)):
            raise SchemaError("cyclic_product must be a nonempty list of positive integers", f"{loc}.cyclic_product")
        return CyclicProductGroup(mods)
    elements = [from_json(e) for e in _need(d, "elements", loc, list)]
    add = _need(d, "add", loc, list)
    neg = _need(d, "neg", loc, list)
    zero = from_json(_need(d, "zero", loc))
    n = len(elements)
    if len(set(elements)) != n:
        raise SchemaError("duplicate element identifiers", f"{loc}.elements")
    index = {e: i for i, e in enumerate(elements)}
    if len(add) != n:
        raise SchemaError(f"add table has {len(add)} rows for {n} elements", f"{loc}.add")
    for i, row in enumerate(add):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"add row for {elements[i]!r} is not total", f"{loc}.add[{i}]")
        for j, v in enumerate(row):
            _lookup(index, v, f"{loc}.add[{i}][{j}]")
    if len(neg) != n:
        raise SchemaError(f"neg table has {len(neg)} entries for {n} elements", f"{loc}.neg")
    for i, v in enumerate(neg):
        _lookup(index, v, f"{loc}.neg[{i}]")
    _lookup(index, zero, f"{loc}.zero")
    try:
        return make_group(elements, [[from_json(v) for v in row] for row in add],
                          [from_json(v) for v in neg], zero)
    except AlgebraError as e:
        raise SemanticError(str(e), loc, e.witness) from None


def parse_map(d, src: FiniteAbelianGroup | list, dst_index: dict, loc: str, what: str = "element") -> np.ndarray:
    """A total map keyed by source identifiers, returned as an index array."""
    labels = src.labels if isinstance(src, FiniteAbelianGroup) else src
    if not isinstance(d, dict):
        raise SchemaError("expected an object keyed by identifiers", loc)
    keys = {element_key(l): i for i, l in enumerate(labels)}
    if len(keys) != len(labels):
        raise SchemaError("two identifiers share the same map key", loc)
    for k in d:
        if k not in keys:
            raise SchemaError(f"key {k!r} is not a listed identifier", f"{loc}.{k}")
    out = np.empty(len(labels), dtype=np.intp)
    for lab in labels:
        k = element_key(lab)
        if k not in d:
            raise SchemaError(f"no image for {lab!r}", f"{loc}.{k}", (lab,))
        out[keys[k]] = _lookup(dst_index, d[k], f"{loc}.{k}", what)
    return out


def _index(group: FiniteAbelianGroup) -> dict:
    return {l: i for i, l in enumerate(group.labels)}


def _action_tables(d, op_labels: list, group: FiniteAbelianGroup, loc: str) -> dict:
    if not isinstance(d, dict):
        raise SchemaError("expected an object keyed by operators", loc)
    keys = {element_key(o): o for o in op_labels}
    for k in d:
        if k not in keys:
            raise SchemaError(f"operator {k!r} is not listed", f"{loc}.{k}")
    tables = {}
    idx = _index(group)
    for o in op_labels:
        k = element_key(o)
        if k not in d:
            raise SchemaError(f"no action table for operator {o!r}", f"{loc}.{k}", (o,))
        row = d[k]
        if isinstance(row, dict):
            for lab in group.labels:
                if element_key(lab) not in row:
                    raise SchemaError(f"action is not total: missing ({o!r}, {lab!r})",
                                      f"{loc}.{k}.{element_key(lab)}", (o, lab))
        tables[o] = parse_map(row, group, idx, f"{loc}.{k}")
    return tables


def _operators(d: dict, action, loc: str) -> tuple[list, Hashable | None]:
    if "operators" in d:
        ops = _need(d, "operators", loc, dict)
        labels = [from_json(o) for o in _need(ops, "elements", f"{loc}.operators", list)]
        if len(set(labels)) != len(labels):
            raise SchemaError("duplicate operator identifiers", f"{loc}.operators.elements")
        zero = from_json(ops["zero"]) if "zero" in ops else None
        if zero is not None and zero not in labels:
            raise SchemaError(f"zero operator {zero!r} is not listed", f"{loc}.operators.zero")
        return labels, zero
    if not isinstance(action, dict):
        raise SchemaError("expected an object keyed by operators", f"{loc}.action")
    return list(action), None


def _semantic(fn, loc):
    try:
        return fn()
    except SchemaError:
        raise
    except AlgebraError as e:
        raise SemanticError(str(e), loc, e.witness) from None


def parse_gwo(d: dict, loc: str = "$") -> tuple[GroupWithOperators, EndoPair | None]:
    group = parse_group(_need(d, "group", loc), f"{loc}.group")
    action = _need(d, "action", loc)
    labels, zero = _operators(d, action, loc)
    tables = _action_tables(action, labels, group, f"{loc}.action")
    G = _semantic(lambda: validate_structure(group, tables, zero_op=zero, check_group=False), f"{loc}.action")
    pair = None
    if "pair" in d:
        pair = _parse_pair(_need(d, "pair", loc, dict), G, f"{loc}.pair")
    return G, pair


def _parse_pair(p: dict, G: GroupWithOperators, loc: str) -> EndoPair:
    idx = _index(G.group)
    sigma = parse_map(_need(p, "sigma", loc), G.group, idx, f"{loc}.sigma")
    delta = parse_map(_need(p, "delta", loc), G.group, idx, f"{loc}.delta")
    comp = []
    if "sigma_A" in p or "delta_A" in p:
        op_idx = {o: i for i, o in enumerate(G.ops.labels)}
        for name in ("sigma_A", "delta_A"):
            comp.append(parse_map(_need(p, name, loc), list(G.ops.labels), op_idx, f"{loc}.{name}", "operator"))
    return _semantic(lambda: EndoPair.checked(G.group, sigma, delta, *comp), loc)


def parse_ring(d: dict, loc: str = "$") -> tuple[FiniteRing, EndoPair | None, dict]:
    group = parse_group(_need(d, "group", loc), f"{loc}.group")
    mul = _need(d, "mul", loc, list)
    n = group.order
    idx = _index(group)
    if len(mul) != n:
        raise SchemaError(f"mul table has {len(mul)} rows for {n} elements", f"{loc}.mul")
    table = []
    for i, row in enumerate(mul):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"mul row for {group.label(i)!r} is not total", f"{loc}.mul[{i}]")
        table.append([_lookup(idx, v, f"{loc}.mul[{i}][{j}]") for j, v in enumerate(row)])
    R = FiniteRing(group, table)
    pair = None
    if "pair" in d:
        p = _need(d, "pair", loc, dict)
        sigma = parse_map(_need(p, "sigma", f"{loc}.pair"), group, idx, f"{loc}.pair.sigma")
        delta = parse_map(_need(p, "delta", f"{loc}.pair"), group, idx, f"{loc}.pair.delta")
        pair = _semantic(lambda: EndoPair.checked(group, sigma, delta, sigma, delta), f"{loc}.pair")
    meta = {}
    if "chain_coefficients" in d:
        cs = _need(d, "chain_coefficients", loc, list)
        meta["chain_coefficients"] = [_lookup(idx, c, f"{loc}.chain_coefficients[{i}]") for i, c in enumerate(cs)]
    return R, pair, meta


def parse_module(d: dict, ring: FiniteRing, loc: str = "$") -> LeftModule:
    group = parse_group(_need(d, "group", loc), f"{loc}.group")
    act = _action_tables(_need(d, "action", loc), list(ring.group.labels), group, f"{loc}.action")
    return LeftModule(ring, group, np.stack([act[l] for l in ring.group.labels]))


def parse_triple(d: dict, loc: str = "$") -> AssocTriple:
    A = _need(d, "A", loc, dict)
    op_labels = [from_json(o) for o in _need(A, "elements", f"{loc}.A", list)]
    zero = from_json(_need(A, "zero", f"{loc}.A"))
    if zero not in op_labels:
        raise SchemaError(f"zero operator {zero!r} is not listed", f"{loc}.A.zero")
    Bd = _need(d, "B", loc, dict)
    B_group = parse_group(_need(Bd, "group", f"{loc}.B"), f"{loc}.B.group")
    tables = _action_tables(_need(Bd, "action", f"{loc}.B"), op_labels, B_group, f"{loc}.B.action")
    B = _semantic(lambda: validate_structure(B_group, tables, zero_op=zero, check_group=False), f"{loc}.B")
    bidx = _index(B_group)
    sigma_B = parse_map(_need(Bd, "sigma", f"{loc}.B"), B_group, bidx, f"{loc}.B.sigma")
    delta_B = parse_map(_need(Bd, "delta", f"{loc}.B"), B_group, bidx, f"{loc}.B.delta")
    Cd = _need(d, "C", loc, dict)
    C_group = parse_group(_need(Cd, "group", f"{loc}.C"), f"{loc}.C.group")
    cidx = _index(C_group)
    act_A = _action_tables(_need(Cd, "action_A", f"{loc}.C"), op_labels, C_group, f"{loc}.C.action_A")
    act_B = _action_tables(_need(Cd, "action_B", f"{loc}.C"), list(B_group.labels), C_group, f"{loc}.C.action_B")
    sigma_C = parse_map(_need(Cd, "sigma", f"{loc}.C"), C_group, cidx, f"{loc}.C.sigma")
    delta_C = parse_map(_need(Cd, "delta", f"{loc}.C"), C_group, cidx, f"{loc}.C.delta")
    return _semantic(lambda: make_triple(B, C_group, act_A, act_B, sigma_B, delta_B, sigma_C, delta_C,
                                         name=str(d.get("name", ""))), loc)


def _load(path: Path) -> tuple[dict, str]:
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise StructureSyntaxError(f"cannot read file: {e.strerror}", str(path)) from None
    try:
        doc = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError:
        raise StructureSyntaxError("file is not UTF-8", str(path)) from None
    except json.JSONDecodeError as e:
        raise StructureSyntaxError(e.msg, f"{path}:{e.lineno}:{e.colno}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object", "$")
    return doc, hashlib.sha256(raw).hexdigest()


def parse_structure_file(path, ring_path=None) -> StructureFile:
    """Parse, schema-check and validate one structure file.

    Module files name their ring file by a path relative to themselves;
    ``ring_path``, when given, overrides that reference.
    """
    path = Path(path)
    doc, digest = _load(path)
    kind = _need(doc, "kind", "$", str)
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "$.kind")
    name = str(doc.get("name", path.stem))
    if "construction" in doc:
        return _parse_construction(doc, kind, name, digest)
    if kind == "group_with_operators":
        G, pair = parse_gwo(doc)
        return StructureFile(kind, name, G, pair, digests=[digest])
    if kind == "ring":
        R, pair, meta = parse_ring(doc)
        return StructureFile(kind, name, R, pair, meta, digests=[digest])
    if kind == "module":
        ref = ring_path if ring_path is not None else path.parent / _need(doc, "ring", "$", str)
        ring_file = parse_structure_file(ref)
        if ring_file.kind != "ring" or not isinstance(ring_file.structure, FiniteRing):
            raise SemanticError("the referenced ring file does not describe a ring with tables", "$.ring")
        M = parse_module(doc, ring_file.structure)
        return StructureFile(kind, name, M, digests=[digest] + ring_file.digests)
    T = parse_triple(doc)
    return StructureFile(kind, name, T, digests=[digest])


def _parse_construction(doc: dict, kind: str, name: str, digest: str) -> StructureFile:
    from .gallery import build
    c = _need(doc, "construction", "$", dict)
    gid = _need(c, "gallery", "$.construction", str)
    params = c.get("params", {})
    if not isinstance(params, dict):
        raise SchemaError("params must be an object", "$.construction.params")
    try:
        item = build(gid, **{k: from_json(v) if k != "alpha" else v for k, v in params.items()})
    except (UnknownId, BadParams) as e:
        raise SemanticError(str(e), "$.construction", e.witness) from None
    if item.kind != kind and not (kind == "ring" and item.kind == "algebra"):
        raise SemanticError(f"construction builds a {item.kind}, not a {kind}", "$.kind")
    return StructureFile(kind, name, item.ring or item.structure, item.pair,
                         {"chain_coefficients": item.chain_coefficients} if item.chain_coefficients else {},
                         digests=[digest], item=item)


# --- writing ----------------------------------------------------------------

def dump_group(group: FiniteAbelianGroup) -> dict:
    if isinstance(group, CyclicProductGroup):
        return {"cyclic_product": list(group.moduli)}
    lab = lambda i: to_json(group.label(int(i)))
    return {"elements": [lab(i) for i in group.elements()],
            "add": [[lab(v) for v in row] for row in group.add_table],
            "neg": [lab(v) for v in group.neg_table],
            "zero": lab(group.zero)}


def dump_map(f, src_labels, dst_labels) -> dict:
    return {element_key(l): to_json(dst_labels[int(f[i])]) for i, l in enumerate(src_labels)}


def dump_action(action: np.ndarray, op_labels, group: FiniteAbelianGroup) -> dict:
    return {element_key(o): dump_map(action[a], group.labels, group.labels) for a, o in enumerate(op_labels)}


def dump_gwo(G: GroupWithOperators, pair: EndoPair | None = None, name: str = "") -> dict:
    doc = {"kind": "group_with_operators", "name": name, "group": dump_group(G.group),
           "operators": {"elements": [to_json(o) for o in G.ops.labels], "zero": to_json(G.op_label(G.ops.zero))},
           "action": dump_action(G.action, G.ops.labels, G.group)}
    if pair is not None:
        labs, ops = G.group.labels, G.ops.labels
        p = {"sigma": dump_map(pair.sigma, labs, labs), "delta": dump_map(pair.delta, labs, labs)}
        if pair.has_companions:
            p["sigma_A"] = dump_map(pair.sigma_A, ops, ops)
            p["delta_A"] = dump_map(pair.delta_A, ops, ops)
        doc["pair"] = p
    return doc


def dump_ring(R: FiniteRing, pair: EndoPair | None = None, name: str = "", chain_coefficients=None) -> dict:
    labs = R.group.labels
    doc = {"kind": "ring", "name": name, "group": dump_group(R.group),
           "mul": [[to_json(labs[v]) for v in row] for row in R.mul.tolist()]}
    if pair is not None:
        doc["pair"] = {"sigma": dump_map(pair.sigma, labs, labs), "delta": dump_map(pair.delta, labs, labs)}
    if chain_coefficients:
        doc["chain_coefficients"] = [to_json(labs[c]) for c in chain_coefficients]
    return doc


def dump_module(M: LeftModule, ring_ref: str, name: str = "") -> dict:
    return {"kind": "module", "name": name, "ring": ring_ref, "group": dump_group(M.group),
            "action": dump_action(M.act, M.ring.group.labels, M.group)}


def dump_triple(t: AssocTriple) -> dict:
    B, C = t.B, t.C_A.group
    bl, cl = B.group.labels, C.labels
    return {
        "kind": "triple", "name": t.name,
        "A": {"elements": [to_json(o) for o in B.ops.labels], "zero": to_json(B.op_label(B.ops.zero))},
        "B": {"group": dump_group(B.group), "action": dump_action(B.action, B.ops.labels, B.group),
              "sigma": dump_map(t.pair_B.sigma, bl, bl), "delta": dump_map(t.pair_B.delta, bl, bl)},
        "C": {"group": dump_group(C), "action_A": dump_action(t.C_A.action, B.ops.labels, C),
              "action_B": dump_action(t.C_B.action, bl, C),
              "sigma": dump_map(t.pair_C.sigma, cl, cl), "delta": dump_map(t.pair_C.delta, cl, cl)},
    }


def dump_item(item) -> dict:
    """Structure-file document for a gallery item.

    Algebras too large for explicit tables are written as a construction
    reference that the parser rebuilds through the gallery.
    """
    name = item.id
    if item.kind == "group_with_operators":
        return dump_gwo(item.structure, item.pair, name)
    if item.ring is not None:
        return dump_ring(item.ring, item.pair, name, item.chain_coefficients)
    return {"kind": "ring", "name": name,
            "construction": {"gallery": item.id, "params": to_json(item.params)}}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
