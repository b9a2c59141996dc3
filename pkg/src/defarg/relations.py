"""Support and attack relations between two default arguments."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from .argument import (
    DefaultArgument, claim_justifications, consequence, premise_justifications, support,
)
from .formula import conj, entails, is_consistent, is_tautology, neg, shared_nontrivial_consequence

__all__ = [
    "RelationProfile", "SUPPORT_RELATIONS", "ATTACK_RELATIONS", "RELATION_NAMES",
    "supports", "strong_supports", "attacks_family", "focused_attacks", "relation_profile",
]


@dataclass(frozen=True)
class RelationProfile:
    inferential_support: bool
    direct_support: bool
    explicit_support: bool
    justification_support: bool
    strong_inferential_support: bool
    strong_direct_support: bool
    strong_explicit_support: bool
    strong_justification_support: bool
    support_attack: bool
    consequence_attack: bool
    justification_attack: bool
    attacks: bool
    undermines: bool
    rebuts: bool
    undercuts: bool
    overcuts: bool
    explicitly_undermines: bool
    explicitly_rebuts: bool
    implicitly_undermines: bool
    implicitly_rebuts: bool

    def to_dict(self) -> dict[str, bool]:
        return asdict(self)

    def holding(self) -> list[str]:
        return [k for k, v in asdict(self).items() if v]


RELATION_NAMES = tuple(f.name for f in fields(RelationProfile))
SUPPORT_RELATIONS = RELATION_NAMES[:8]
ATTACK_RELATIONS = RELATION_NAMES[8:]


def _c_entails(a: DefaultArgument, goal) -> bool:
    return a.consequence_ext.entails(goal)


def _nontrivially_entailed(a: DefaultArgument, items) -> bool:
    return any(not is_tautology(b) and _c_entails(a, b) for b in items)


def supports(a: DefaultArgument, b: DefaultArgument) -> tuple[bool, bool, bool, bool]:
    """(inferential, direct, explicit, justification) support of ``b`` by ``a``."""
    inferential = shared_nontrivial_consequence(support(b), consequence(a))
    direct = _nontrivially_entailed(a, b.ep)
    # The tautology guard keeps explicit support inside inferential support.
    explicit = any(not is_tautology(x) and entails(a.ec, x) for x in b.ep)
    justification = _nontrivially_entailed(a, premise_justifications(b))
    return inferential, direct, explicit, justification


def strong_supports(a: DefaultArgument, b: DefaultArgument) -> tuple[bool, bool, bool, bool]:
    inferential, direct, explicit, justification = supports(a, b)
    return (
        inferential and _c_entails(a, conj(support(b))),
        direct and all(_c_entails(a, x) for x in b.ep),
        explicit and all(entails(a.ec, x) for x in b.ep),
        justification and all(_c_entails(a, x) for x in premise_justifications(b)),
    )


def attacks_family(a: DefaultArgument, b: DefaultArgument) -> tuple[bool, bool, bool, bool]:
    """(support_attack, consequence_attack, justification_attack, attacks).

    Justification attack covers the justifications of both rule sets of
    ``b`` so that overcuts fall under it as well as undercuts.  ``attacks``
    is the union of the premise-side and the claim-side conflicts.
    """
    c = list(consequence(a))
    jp = list(premise_justifications(b))
    jc = list(claim_justifications(b))
    support_attack = not is_consistent(c + list(support(b)))
    consequence_attack = not is_consistent(c + list(consequence(b)))
    justification_attack = not is_consistent(c + jp) or not is_consistent(c + jc)
    attacks = (
        not is_consistent(c + list(support(b)) + jp)
        or not is_consistent(c + list(consequence(b)) + jc)
    )
    return support_attack, consequence_attack, justification_attack, attacks


def focused_attacks(a: DefaultArgument, b: DefaultArgument) -> tuple[bool, ...]:
    """(undermines, rebuts, undercuts, overcuts, explicitly_undermines,
    explicitly_rebuts, implicitly_undermines, implicitly_rebuts)."""
    undermines = any(_c_entails(a, neg(x)) for x in b.ep)
    rebuts = any(_c_entails(a, neg(x)) for x in b.ec)
    undercuts = any(_c_entails(a, neg(d.just)) for d in b.ip)
    overcuts = any(_c_entails(a, neg(d.just)) for d in b.ic)
    ex_undermines = any(entails(a.ec, neg(x)) for x in b.ep)
    ex_rebuts = any(entails(a.ec, neg(x)) for x in b.ec)
    return (
        undermines, rebuts, undercuts, overcuts, ex_undermines, ex_rebuts,
        undermines and not ex_undermines, rebuts and not ex_rebuts,
    )


def relation_profile(a: DefaultArgument, b: DefaultArgument) -> RelationProfile:
    values = supports(a, b) + strong_supports(a, b) + attacks_family(a, b) + focused_attacks(a, b)
    return RelationProfile(*values)
