"""Reiter default rules, extension enumeration and singular theories."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .formula import (
    TOP, And, Atom, Formula, FormulaSyntaxError, atoms_of, entails, is_consistent,
    neg, parse_formula, substitute, theories_equivalent,
)

__all__ = [
    "DefaultRule", "RuleSchema", "DefaultTheory", "Extension",
    "NotSingular", "NotAnExtension", "EnumerationLimitExceeded",
    "parse_rule", "parse_schema", "classify_rule", "ground_schema",
    "all_extensions", "reiter_closure", "is_extension", "is_singular", "ex",
    "justification_consistency_condition", "singular_subtheory",
    "minimal_generating_defaults",
]


class NotSingular(ValueError):
    def __init__(self, count: int, what: str = "default theory"):
        self.count = count
        super().__init__(f"{what} is not singular: {count} extensions")


class NotAnExtension(ValueError):
    pass


class EnumerationLimitExceeded(ValueError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"{size} defaults exceed the enumeration limit of {limit}")


@dataclass(frozen=True)
class DefaultRule:
    pre: Formula
    just: Formula
    cons: Formula

    def __str__(self) -> str:
        return f"{self.pre} : {self.just} / {self.cons}"


@dataclass(frozen=True)
class RuleSchema:
    """A default rule whose atoms may carry all-caps variable arguments."""

    pre: Formula
    just: Formula
    cons: Formula

    @property
    def variables(self) -> tuple[str, ...]:
        found = set()
        for a in atoms_of((self.pre, self.just, self.cons)):
            found |= a.variables
        return tuple(sorted(found))

    def __str__(self) -> str:
        return f"{self.pre} : {self.just} / {self.cons}"


def _split_rule(text: str) -> tuple[str, str, str]:
    if text.count(":") != 1 or text.count("/") != 1 or text.index(":") > text.index("/"):
        raise FormulaSyntaxError("default rule must have the form 'pre : just / cons'", text)
    pre, rest = text.split(":")
    just, cons = rest.split("/")
    if not cons.strip():
        raise FormulaSyntaxError("default rule needs a consequent", text)
    return pre, just, cons


def _part(text: str, **kw) -> Formula:
    return parse_formula(text, **kw) if text.strip() else TOP


def parse_rule(text: str, constants: Iterable[str] = ()) -> DefaultRule:
    """Parse ``pre : just / cons``; an empty pre or just means ``true``."""
    pre, just, cons = _split_rule(text)
    kw = {"constants": tuple(constants)}
    return DefaultRule(_part(pre, **kw), _part(just, **kw), parse_formula(cons, **kw))


def parse_schema(text: str, constants: Iterable[str] = ()) -> RuleSchema:
    pre, just, cons = _split_rule(text)
    kw = {"allow_variables": True, "constants": tuple(constants)}
    return RuleSchema(_part(pre, **kw), _part(just, **kw), parse_formula(cons, **kw))


def classify_rule(d: DefaultRule) -> frozenset[str]:
    kinds = set()
    if d.pre == TOP:
        kinds.add("precondition_free")
    if d.just == TOP:
        kinds.add("justification_free")
    if d.just == d.cons:
        kinds.add("normal")
    elif isinstance(d.just, And) and d.cons in (d.just.left, d.just.right):
        kinds.add("semi_normal")
    return frozenset(kinds)


def ground_schema(s: RuleSchema, constants: Iterable[str]) -> list[DefaultRule]:
    """One ground rule per assignment of constants to the schema's variables.

    Assignments run lexicographically over sorted constant tuples, with
    variables taken in sorted order.
    """
    variables = s.variables
    if not variables:
        return [DefaultRule(s.pre, s.just, s.cons)]
    pool = sorted(set(constants))
    if not pool:
        raise ValueError(f"schema {s} has free variables {variables} but no constants were given")
    rules = []
    for values in itertools.product(pool, repeat=len(variables)):
        binding = dict(zip(variables, values))
        rules.append(DefaultRule(*(substitute(f, binding) for f in (s.pre, s.just, s.cons))))
    return rules


@dataclass(frozen=True)
class DefaultTheory:
    defaults: tuple[DefaultRule, ...]
    facts: tuple[Formula, ...]

    def __init__(self, defaults: Iterable[DefaultRule] = (), facts: Iterable[Formula] = ()):
        object.__setattr__(self, "defaults", tuple(dict.fromkeys(defaults)))
        object.__setattr__(self, "facts", tuple(dict.fromkeys(facts)))


@dataclass(frozen=True)
class Extension:
    """A finitely based extension: Cn(base) is the deductively closed set."""

    base: tuple[Formula, ...]
    generating: tuple[int, ...] = ()
    inconsistent: bool = False

    def entails(self, goal: Formula) -> bool:
        return self.inconsistent or entails(self.base, goal)


def _check_limit(theory: DefaultTheory, max_defaults: int | None) -> None:
    if max_defaults is not None and len(theory.defaults) > max_defaults:
        raise EnumerationLimitExceeded(len(theory.defaults), max_defaults)


def _saturate(facts: Sequence[Formula], rules: Sequence[DefaultRule], chosen: Sequence[int]) -> tuple[list[Formula], list[int]]:
    base = list(facts)
    fired: list[int] = []
    pending = list(chosen)
    progress = True
    while pending and progress:
        progress = False
        for i in list(pending):
            if entails(base, rules[i].pre):
                base.append(rules[i].cons)
                fired.append(i)
                pending.remove(i)
                progress = True
    return base, fired


def all_extensions(theory: DefaultTheory, max_defaults: int | None = None) -> list[Extension]:
    """Every extension of ``theory``, by subset generate-and-test.

    Candidate generating sets are tried smallest first, then in
    lexicographic index order; the first base found for each equivalence
    class is kept.  Cost is O(2^|D|) entailment batches.
    """
    _check_limit(theory, max_defaults)
    rules, facts = theory.defaults, theory.facts
    if not is_consistent(facts):
        return [Extension(facts, (), True)]
    found: list[Extension] = []
    n = len(rules)
    for size in range(n + 1):
        for chosen in itertools.combinations(range(n), size):
            base, fired = _saturate(facts, rules, chosen)
            if len(fired) != size:
                continue  # not grounded
            if any(entails(base, neg(rules[i].just)) for i in chosen):
                continue
            outside = (i for i in range(n) if i not in chosen)
            if any(entails(base, rules[i].pre) and not entails(base, neg(rules[i].just)) for i in outside):
                continue
            if any(theories_equivalent(base, e.base) for e in found):
                continue
            found.append(Extension(tuple(base), tuple(fired), False))
    return found


def reiter_closure(theory: DefaultTheory, candidate: Iterable[Formula]) -> list[Formula]:
    """Finite base of the least closed superset of W that fires every rule
    whose pre-condition it contains and whose justification the candidate
    does not refute."""
    candidate = tuple(candidate)
    cand_inconsistent = not is_consistent(candidate)
    base = list(theory.facts)
    applied: set[int] = set()
    changed = True
    while changed:
        changed = False
        for i, d in enumerate(theory.defaults):
            if i in applied:
                continue
            blocked = cand_inconsistent or entails(candidate, neg(d.just))
            if not blocked and entails(base, d.pre):
                base.append(d.cons)
                applied.add(i)
                changed = True
    return base


def is_extension(theory: DefaultTheory, candidate: Iterable[Formula]) -> bool:
    """Fixed-point test: ``candidate`` is an extension iff it equals its own
    Reiter closure up to theory equivalence."""
    candidate = tuple(candidate)
    return theories_equivalent(reiter_closure(theory, candidate), candidate)


def is_singular(theory: DefaultTheory, max_defaults: int | None = None) -> bool:
    return len(all_extensions(theory, max_defaults)) == 1


def ex(theory: DefaultTheory, max_defaults: int | None = None) -> Extension:
    exts = all_extensions(theory, max_defaults)
    if len(exts) != 1:
        raise NotSingular(len(exts))
    return exts[0]


def justification_consistency_condition(theory: DefaultTheory) -> bool:
    """Sufficient (not necessary) condition for singularity: W together with
    every just & cons is consistent."""
    extra = [And(d.just, d.cons) for d in theory.defaults]
    return is_consistent(list(theory.facts) + extra)


def singular_subtheory(theory: DefaultTheory, e: Extension | Iterable[Formula]) -> DefaultTheory:
    base = e.base if isinstance(e, Extension) else tuple(e)
    if not is_extension(theory, base):
        raise NotAnExtension("candidate is not an extension of the theory")
    if not is_consistent(base):
        return DefaultTheory((), theory.facts)
    kept = [d for d in theory.defaults if entails(base, d.pre) and not entails(base, neg(d.just))]
    return DefaultTheory(kept, theory.facts)


def minimal_generating_defaults(theory: DefaultTheory) -> tuple[DefaultRule, ...]:
    """Smallest D' within the generating defaults of Ex(D,W) whose theory is
    singular with the same extension.

    Normally this is the generating set itself; rules with duplicated
    consequents can make a strict subset suffice.
    """
    target = ex(theory)
    generating = [theory.defaults[i] for i in sorted(target.generating)]
    for size in range(len(generating) + 1):
        for subset in itertools.combinations(generating, size):
            exts = all_extensions(DefaultTheory(subset, theory.facts))
            if len(exts) == 1 and theories_equivalent(exts[0].base, target.base):
                return subset
    return tuple(generating)  # pragma: no cover - the full set always qualifies


def rules_atoms(rules: Iterable[DefaultRule]) -> frozenset[Atom]:
    return atoms_of(f for d in rules for f in (d.pre, d.just, d.cons))
