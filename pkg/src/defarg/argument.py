"""Default arguments: explicit/implicit premises and claims."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .defaults import DefaultRule, DefaultTheory, Extension, NotSingular, all_extensions
from .formula import Formula, conj, entails, entails_all, is_consistent, theories_equivalent

__all__ = [
    "DefaultArgument", "ArgumentProfile", "PremiseNotSingular", "ClaimNotSingular",
    "new_argument", "support", "consequence", "premise_justifications",
    "claim_justifications", "profile",
    "explicitly_equivalent", "support_equivalent", "consequence_equivalent",
    "implicitly_equivalent", "intrinsically_equivalent", "more_implicit_than",
]


class PremiseNotSingular(NotSingular):
    def __init__(self, count: int):
        super().__init__(count, "premise theory (Ip, Ep)")


class ClaimNotSingular(NotSingular):
    def __init__(self, count: int):
        super().__init__(count, "claim theory (Ic, Ec)")


def _unique(items: Iterable) -> tuple:
    return tuple(dict.fromkeys(items))


@dataclass(frozen=True)
class DefaultArgument:
    """The tuple <Wp, Dp, Wc, Dc>.

    Both (Dp, Wp) and (Dc, Wc) must be singular; their unique extensions are
    computed once at construction and exposed as :attr:`support_ext` and
    :attr:`consequence_ext`.
    """

    explicit_premises: tuple[Formula, ...] = ()
    implicit_premises: tuple[DefaultRule, ...] = ()
    explicit_claims: tuple[Formula, ...] = ()
    implicit_claims: tuple[DefaultRule, ...] = ()
    support_ext: Extension = field(init=False, repr=False, compare=False)
    consequence_ext: Extension = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("explicit_premises", "implicit_premises", "explicit_claims", "implicit_claims"):
            object.__setattr__(self, name, _unique(getattr(self, name)))
        premises = all_extensions(DefaultTheory(self.implicit_premises, self.explicit_premises))
        if len(premises) != 1:
            raise PremiseNotSingular(len(premises))
        claims = all_extensions(DefaultTheory(self.implicit_claims, self.explicit_claims))
        if len(claims) != 1:
            raise ClaimNotSingular(len(claims))
        object.__setattr__(self, "support_ext", premises[0])
        object.__setattr__(self, "consequence_ext", claims[0])

    # short accessors mirroring the usual Ep/Ip/Ec/Ic notation
    @property
    def ep(self) -> tuple[Formula, ...]:
        return self.explicit_premises

    @property
    def ip(self) -> tuple[DefaultRule, ...]:
        return self.implicit_premises

    @property
    def ec(self) -> tuple[Formula, ...]:
        return self.explicit_claims

    @property
    def ic(self) -> tuple[DefaultRule, ...]:
        return self.implicit_claims

    def __str__(self) -> str:
        def fs(xs):
            return "{" + ", ".join(str(x) for x in xs) + "}"

        def rs(xs):
            return "{" + ", ".join(f"({x})" for x in xs) + "}"

        return f"<{fs(self.ep)}, {rs(self.ip)}, {fs(self.ec)}, {rs(self.ic)}>"


def new_argument(
    wp: Iterable[Formula] = (),
    dp: Iterable[DefaultRule] = (),
    wc: Iterable[Formula] = (),
    dc: Iterable[DefaultRule] = (),
) -> DefaultArgument:
    return DefaultArgument(tuple(wp), tuple(dp), tuple(wc), tuple(dc))


def support(a: DefaultArgument) -> tuple[Formula, ...]:
    """Base of S(A) = Ex(Ip(A), Ep(A))."""
    return a.support_ext.base


def consequence(a: DefaultArgument) -> tuple[Formula, ...]:
    """Base of C(A) = Ex(Ic(A), Ec(A))."""
    return a.consequence_ext.base


def premise_justifications(a: DefaultArgument) -> tuple[Formula, ...]:
    return _unique(d.just for d in a.ip)


def claim_justifications(a: DefaultArgument) -> tuple[Formula, ...]:
    return _unique(d.just for d in a.ic)


@dataclass(frozen=True)
class ArgumentProfile:
    valid: bool
    implicitly_minimal: bool
    explicitly_minimal: bool
    support_consistent: bool
    consequence_consistent: bool
    fully_consistent: bool
    explicit: bool
    classical: bool
    vacuous: bool
    completely_implicit_premises: bool
    completely_implicit_claims: bool

    def to_dict(self) -> dict[str, bool]:
        return asdict(self)


def _unique_extension(defaults, facts) -> Extension | None:
    exts = all_extensions(DefaultTheory(defaults, facts))
    return exts[0] if len(exts) == 1 else None


def _witnesses(ext: Extension | None, claims: tuple[Formula, ...]) -> bool:
    # A non-singular subtheory has no Ex and so never witnesses non-minimality.
    return ext is not None and all(ext.entails(c) for c in claims)


def _proper_subsets(items: tuple):
    for size in range(len(items)):
        yield from itertools.combinations(items, size)


def is_valid(a: DefaultArgument) -> bool:
    return all(a.support_ext.entails(c) for c in a.ec)


def is_implicitly_minimal(a: DefaultArgument) -> bool:
    if not is_valid(a):
        return False
    return not any(_witnesses(_unique_extension(phi, a.ep), a.ec) for phi in _proper_subsets(a.ip))


def is_explicitly_minimal(a: DefaultArgument) -> bool:
    if not is_valid(a):
        return False
    return not any(_witnesses(_unique_extension(a.ip, psi), a.ec) for psi in _proper_subsets(a.ep))


def profile(a: DefaultArgument) -> ArgumentProfile:
    s, c = support(a), consequence(a)
    valid = is_valid(a)
    explicit = not a.ip and not a.ic
    explicitly_minimal = is_explicitly_minimal(a)
    support_consistent = not a.support_ext.inconsistent
    return ArgumentProfile(
        valid=valid,
        implicitly_minimal=is_implicitly_minimal(a),
        explicitly_minimal=explicitly_minimal,
        support_consistent=support_consistent,
        consequence_consistent=not a.consequence_ext.inconsistent,
        fully_consistent=is_consistent(s + c),
        explicit=explicit,
        classical=explicit and valid and explicitly_minimal and support_consistent,
        vacuous=theories_equivalent(s, ()) and theories_equivalent(c, ()),
        completely_implicit_premises=not a.ep and bool(a.ip),
        completely_implicit_claims=not a.ec and bool(a.ic),
    )


# ---------------------------------------------------------------- equivalence

def explicitly_equivalent(a: DefaultArgument, b: DefaultArgument) -> bool:
    return theories_equivalent(a.ep, b.ep) and theories_equivalent(a.ec, b.ec)


def support_equivalent(a: DefaultArgument, b: DefaultArgument) -> bool:
    return theories_equivalent(support(a), support(b))


def consequence_equivalent(a: DefaultArgument, b: DefaultArgument) -> bool:
    return theories_equivalent(consequence(a), consequence(b))


def implicitly_equivalent(a: DefaultArgument, b: DefaultArgument) -> bool:
    return support_equivalent(a, b) and consequence_equivalent(a, b)


def intrinsically_equivalent(a: DefaultArgument, b: DefaultArgument) -> bool:
    return support_equivalent(a, b) and theories_equivalent(a.ec, b.ec)


def more_implicit_than(a: DefaultArgument, b: DefaultArgument) -> bool:
    """Implicitly equivalent, with Cn(Ep(a)) within Cn(Ep(b)) and Cn(Ec(a))
    within Cn(Ec(b))."""
    return (
        implicitly_equivalent(a, b)
        and entails(b.ep, conj(a.ep))
        and entails(b.ec, conj(a.ec))
    )


EQUIVALENCES = {
    "explicitly_equivalent": explicitly_equivalent,
    "support_equivalent": support_equivalent,
    "consequence_equivalent": consequence_equivalent,
    "implicitly_equivalent": implicitly_equivalent,
    "intrinsically_equivalent": intrinsically_equivalent,
}

__all__ += ["EQUIVALENCES", "is_valid", "is_implicitly_minimal", "is_explicitly_minimal", "entails_all"]
