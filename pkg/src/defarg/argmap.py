"""Argument maps, translation tables and logical argument assignments."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .argument import (
    EQUIVALENCES, ArgumentProfile, DefaultArgument, more_implicit_than, profile,
)
from .defaults import DefaultRule
from .formula import TOP, Atom, Formula, neg
from .relations import ATTACK_RELATIONS, SUPPORT_RELATIONS, RelationProfile, relation_profile

__all__ = [
    "PLUS", "MINUS", "Node", "Arc", "ArgumentMap", "TranslationTable",
    "MissingTranslation", "NonAtomicTranslation", "MapMismatch", "InvalidMap",
    "translate_map", "premise_atomic_assignment", "InstantiatedMap",
    "LabelPolicy", "DEFAULT_POLICY", "ArcRecord", "ValidationReport", "validate_labels",
    "KnowledgeBase", "args_membership", "normal_exhaustive", "instantiation_space_size",
    "compare_instantiations",
]

PLUS = "+"
MINUS = "-"


class InvalidMap(ValueError):
    pass


class MissingTranslation(KeyError):
    def __init__(self, text: str):
        self.text = text
        super().__init__(f"no translation for text {text!r}")

    def __str__(self) -> str:
        return self.args[0]


class NonAtomicTranslation(ValueError):
    def __init__(self, node: str, reason: str):
        self.node = node
        super().__init__(f"node {node}: {reason}")


class MapMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    id: str
    premise_text: str | None = None
    claim_text: str | None = None


@dataclass(frozen=True)
class Arc:
    source: str
    target: str
    label: str

    def __post_init__(self):
        if self.label not in (PLUS, MINUS):
            raise InvalidMap(f"arc label must be '+' or '-', got {self.label!r}")


@dataclass(frozen=True)
class ArgumentMap:
    """Nodes plus labelled arcs.  A missing ordered pair means no relation."""

    nodes: tuple[Node, ...] = ()
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise InvalidMap("duplicate node id")
        known = set(ids)
        pairs = set()
        for arc in self.arcs:
            if arc.source not in known or arc.target not in known:
                raise InvalidMap(f"arc {arc.source}->{arc.target} has an unknown endpoint")
            if (arc.source, arc.target) in pairs:
                raise InvalidMap(f"more than one arc from {arc.source} to {arc.target}")
            pairs.add((arc.source, arc.target))

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    def node(self, node_id: str) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def outgoing(self, node_id: str) -> list[Arc]:
        return [a for a in self.arcs if a.source == node_id]


@dataclass(frozen=True)
class TranslationTable:
    entries: Mapping[str, tuple[Formula, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", {k: tuple(v) for k, v in dict(self.entries).items()})

    def __call__(self, text: str | None) -> tuple[Formula, ...]:
        if text is None:
            return ()
        try:
            return self.entries[text]
        except KeyError:
            raise MissingTranslation(text) from None


def translate_map(m: ArgumentMap, t: TranslationTable) -> dict[str, tuple[tuple[Formula, ...], tuple[Formula, ...]]]:
    return {n.id: (t(n.premise_text), t(n.claim_text)) for n in m.nodes}


@dataclass(frozen=True)
class InstantiatedMap:
    map: ArgumentMap
    assignment: Mapping[str, DefaultArgument]

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))
        if set(self.assignment) != set(self.map.node_ids):
            missing = sorted(set(self.map.node_ids) - set(self.assignment))
            extra = sorted(set(self.assignment) - set(self.map.node_ids))
            raise InvalidMap(f"assignment must cover exactly the map's nodes (missing {missing}, extra {extra})")


def _single_atom(node: str, formulas: tuple[Formula, ...], what: str, optional: bool) -> Atom | None:
    if not formulas and optional:
        return None
    if len(formulas) != 1 or not isinstance(formulas[0], Atom):
        shown = ", ".join(str(f) for f in formulas) or "nothing"
        raise NonAtomicTranslation(node, f"{what} must translate to a single atom, got {shown}")
    return formulas[0]


def premise_atomic_assignment(m: ArgumentMap, t: TranslationTable) -> InstantiatedMap:
    """Canonical atomic instantiation.

    Node i gets <{a_i}, {a_i:b_i/b_i}, {b_i}, D_c> where D_c has
    b_i:~a_j/~a_j for each minus arc i->j and b_i:a_j/a_j for each plus arc.
    A null premise drops W_p and uses a true pre-condition.  Arcs into a node
    without a premise atom target its claim atom instead.
    """
    translated = translate_map(m, t)
    atoms: dict[str, tuple[Atom | None, Atom]] = {}
    for n in m.nodes:
        prem, claim = translated[n.id]
        atoms[n.id] = (
            _single_atom(n.id, prem, "premise", optional=True),
            _single_atom(n.id, claim, "claim", optional=False),
        )
    assignment = {}
    for n in m.nodes:
        a, b = atoms[n.id]
        claim_rules = []
        for arc in m.outgoing(n.id):
            ta, tb = atoms[arc.target]
            goal = ta if ta is not None else tb
            if arc.label == MINUS:
                goal = neg(goal)
            claim_rules.append(DefaultRule(b, goal, goal))
        assignment[n.id] = DefaultArgument(
            (a,) if a is not None else (),
            (DefaultRule(a if a is not None else TOP, b, b),),
            (b,),
            tuple(claim_rules),
        )
    return InstantiatedMap(m, assignment)


@dataclass(frozen=True)
class LabelPolicy:
    plus_accepts: frozenset[str]
    minus_accepts: frozenset[str]

    def __post_init__(self):
        plus, minus = frozenset(self.plus_accepts), frozenset(self.minus_accepts)
        if not plus or not minus:
            raise ValueError("label policy needs non-empty accepted-relation sets")
        unknown = (plus - set(SUPPORT_RELATIONS)) | (minus - set(ATTACK_RELATIONS))
        if unknown:
            raise ValueError(f"unknown relation names in policy: {sorted(unknown)}")
        object.__setattr__(self, "plus_accepts", plus)
        object.__setattr__(self, "minus_accepts", minus)

    def accepts(self, label: str) -> frozenset[str]:
        return self.plus_accepts if label == PLUS else self.minus_accepts


DEFAULT_POLICY = LabelPolicy(
    frozenset({"inferential_support", "direct_support", "explicit_support", "justification_support"}),
    frozenset({"attacks"}),
)


@dataclass(frozen=True)
class ArcRecord:
    source: str
    target: str
    label: str
    profile: RelationProfile
    satisfied: bool
    witnesses: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    arcs: tuple[ArcRecord, ...]
    nodes: Mapping[str, ArgumentProfile]

    @property
    def valid(self) -> bool:
        return all(r.satisfied for r in self.arcs)

    @property
    def unsatisfied(self) -> list[ArcRecord]:
        return [r for r in self.arcs if not r.satisfied]


def validate_labels(im: InstantiatedMap, p: LabelPolicy = DEFAULT_POLICY) -> ValidationReport:
    records = []
    for arc in sorted(im.map.arcs, key=lambda x: (x.source, x.target)):
        rp = relation_profile(im.assignment[arc.source], im.assignment[arc.target])
        held = rp.to_dict()
        witnesses = tuple(sorted(name for name in p.accepts(arc.label) if held[name]))
        records.append(ArcRecord(arc.source, arc.target, arc.label, rp, bool(witnesses), witnesses))
    nodes = {nid: profile(im.assignment[nid]) for nid in sorted(im.map.node_ids)}
    return ValidationReport(tuple(records), nodes)


@dataclass(frozen=True)
class KnowledgeBase:
    defaults: frozenset[DefaultRule] = frozenset()
    formulae: frozenset[Formula] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "defaults", frozenset(self.defaults))
        object.__setattr__(self, "formulae", frozenset(self.formulae))


def args_membership(a: DefaultArgument, kb: KnowledgeBase) -> bool:
    return (
        set(a.ep) <= kb.formulae
        and set(a.ec) <= kb.formulae
        and set(a.ip) <= kb.defaults
        and set(a.ic) <= kb.defaults
    )


def normal_exhaustive(gamma: Iterable[Formula]) -> tuple[DefaultRule, ...]:
    pool = [TOP] + [g for g in dict.fromkeys(gamma) if g != TOP]
    return tuple(DefaultRule(x, y, y) for x, y in itertools.product(pool, repeat=2))


def instantiation_space_size(node_count: int, argument_count: int) -> int:
    """k choices at each of n nodes: k ** n."""
    if node_count < 0 or argument_count < 0:
        raise ValueError("counts must be non-negative")
    return argument_count ** node_count


def compare_instantiations(x: InstantiatedMap, y: InstantiatedMap) -> dict:
    if x.map != y.map:
        raise MapMismatch("instantiations are over different argument maps")
    per_node = {}
    for nid in sorted(x.map.node_ids):
        a, b = x.assignment[nid], y.assignment[nid]
        verdict = {name: fn(a, b) for name, fn in EQUIVALENCES.items()}
        verdict["x_more_implicit_than_y"] = more_implicit_than(a, b)
        verdict["y_more_implicit_than_x"] = more_implicit_than(b, a)
        per_node[nid] = verdict
    summary = {
        key: [nid for nid, v in per_node.items() if v[key]]
        for key in ("implicitly_equivalent", "x_more_implicit_than_y", "y_more_implicit_than_x")
    }
    summary["differing"] = [nid for nid, v in per_node.items() if not all(v[k] for k in EQUIVALENCES)]
    return {"nodes": per_node, "summary": summary}
