"""JSON readers and writers for theories, arguments, maps and policies."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .argmap import (
    Arc, ArgumentMap, InstantiatedMap, LabelPolicy, Node, TranslationTable, ValidationReport,
)
from .argument import DefaultArgument, consequence, profile, support
from .defaults import DefaultRule, DefaultTheory, Extension, ground_schema, parse_rule, parse_schema
from .formula import parse_formula


class SchemaError(ValueError):
    """A JSON document does not have the expected shape."""


def load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(data: Any, pretty: bool = False) -> str:
    return json.dumps(data, sort_keys=True, indent=2 if pretty else None, ensure_ascii=False)


def _list(doc: dict, key: str, required: bool = False) -> list:
    if key not in doc:
        if required:
            raise SchemaError(f"missing key {key!r}")
        return []
    value = doc[key]
    if not isinstance(value, list):
        raise SchemaError(f"{key!r} must be a list")
    return value


def _obj(doc: Any, what: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"{what} must be a JSON object")
    return doc


# ---------------------------------------------------------------- theories

def theory_from_json(doc: Any) -> DefaultTheory:
    """``{"constants", "facts", "defaults", "schemas"}``; schemas are grounded
    over the declared constants and appended after the plain defaults."""
    doc = _obj(doc, "knowledge base")
    constants = [str(c) for c in _list(doc, "constants")]
    facts = [parse_formula(s, constants=constants) for s in _list(doc, "facts")]
    rules = [parse_rule(s, constants=constants) for s in _list(doc, "defaults")]
    for text in _list(doc, "schemas"):
        rules.extend(ground_schema(parse_schema(text, constants=constants), constants))
    return DefaultTheory(rules, facts)


def rule_to_json(d: DefaultRule) -> str:
    return str(d)


def extension_to_json(e: Extension) -> dict:
    return {
        "base": [str(f) for f in e.base],
        "generating": list(e.generating),
        "inconsistent": e.inconsistent,
    }


# ---------------------------------------------------------------- arguments

ARGUMENT_KEYS = ("explicit_premises", "implicit_premises", "explicit_claims", "implicit_claims")


def argument_from_json(doc: Any) -> DefaultArgument:
    doc = _obj(doc, "argument")
    unknown = set(doc) - set(ARGUMENT_KEYS)
    if unknown:
        raise SchemaError(f"unknown argument keys {sorted(unknown)}")
    return DefaultArgument(
        tuple(parse_formula(s) for s in _list(doc, "explicit_premises")),
        tuple(parse_rule(s) for s in _list(doc, "implicit_premises")),
        tuple(parse_formula(s) for s in _list(doc, "explicit_claims")),
        tuple(parse_rule(s) for s in _list(doc, "implicit_claims")),
    )


def argument_to_json(a: DefaultArgument) -> dict:
    return {
        "explicit_premises": [str(f) for f in a.ep],
        "implicit_premises": [str(d) for d in a.ip],
        "explicit_claims": [str(f) for f in a.ec],
        "implicit_claims": [str(d) for d in a.ic],
    }


def argument_summary(a: DefaultArgument) -> dict:
    return {
        "argument": argument_to_json(a),
        "support": [str(f) for f in support(a)],
        "consequence": [str(f) for f in consequence(a)],
        "profile": profile(a).to_dict(),
    }


# ---------------------------------------------------------------- maps

def map_from_json(doc: Any) -> ArgumentMap:
    doc = _obj(doc, "argument map")
    nodes = []
    for n in _list(doc, "nodes", required=True):
        n = _obj(n, "node")
        if "id" not in n:
            raise SchemaError("node without id")
        nodes.append(Node(str(n["id"]), n.get("premise"), n.get("claim")))
    arcs = []
    for e in _list(doc, "edges"):
        e = _obj(e, "edge")
        try:
            arcs.append(Arc(str(e["from"]), str(e["to"]), e["label"]))
        except KeyError as exc:
            raise SchemaError(f"edge missing {exc.args[0]!r}") from None
    return ArgumentMap(tuple(nodes), tuple(arcs))


def map_to_json(m: ArgumentMap) -> dict:
    return {
        "nodes": [{"id": n.id, "premise": n.premise_text, "claim": n.claim_text} for n in m.nodes],
        "edges": [{"from": a.source, "to": a.target, "label": a.label} for a in m.arcs],
    }


def translation_from_json(doc: Any) -> TranslationTable:
    doc = _obj(doc, "translation table")
    entries: dict[str, tuple] = {}
    for item in _list(doc, "entries", required=True):
        item = _obj(item, "translation entry")
        if "text" not in item:
            raise SchemaError("translation entry without text")
        entries[item["text"]] = tuple(parse_formula(s) for s in _list(item, "formulae"))
    return TranslationTable(entries)


def imap_from_json(doc: Any) -> InstantiatedMap:
    doc = _obj(doc, "instantiated map")
    if "map" not in doc or "assignment" not in doc:
        raise SchemaError("instantiated map needs 'map' and 'assignment'")
    m = map_from_json(doc["map"])
    assignment = {k: argument_from_json(v) for k, v in _obj(doc["assignment"], "assignment").items()}
    return InstantiatedMap(m, assignment)


def imap_to_json(im: InstantiatedMap) -> dict:
    return {
        "map": map_to_json(im.map),
        "assignment": {nid: argument_to_json(im.assignment[nid]) for nid in im.map.node_ids},
    }


def policy_from_json(doc: Any) -> LabelPolicy:
    doc = _obj(doc, "label policy")
    return LabelPolicy(
        frozenset(_list(doc, "plus_accepts", required=True)),
        frozenset(_list(doc, "minus_accepts", required=True)),
    )


def policy_to_json(p: LabelPolicy) -> dict:
    return {"plus_accepts": sorted(p.plus_accepts), "minus_accepts": sorted(p.minus_accepts)}


def validation_to_json(r: ValidationReport) -> dict:
    return {
        "valid": r.valid,
        "arcs": [
            {
                "from": a.source,
                "to": a.target,
                "label": a.label,
                "satisfied": a.satisfied,
                "witnesses": list(a.witnesses),
                "profile": a.profile.to_dict(),
            }
            for a in r.arcs
        ],
        "nodes": {nid: p.to_dict() for nid, p in r.nodes.items()},
    }
