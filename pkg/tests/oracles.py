"""Independent reference implementations used as test oracles.

None of these touch the compiled kernels: evaluation walks the formula tree
directly and entailment enumerates truth tables with itertools.
"""

from __future__ import annotations

import itertools
import random

from defarg.argument import DefaultArgument
from defarg.defaults import DefaultRule, DefaultTheory, NotSingular, parse_rule
from defarg.formula import (
    BOTTOM, TOP, And, Atom, Formula, Iff, Implies, Not, Or, atoms_of, neg, parse_formula,
)


def truth(f: Formula, val: dict) -> bool:
    if isinstance(f, Atom):
        return val[f]
    if f is TOP:
        return True
    if f is BOTTOM:
        return False
    if isinstance(f, Not):
        return not truth(f.arg, val)
    left, right = truth(f.left, val), truth(f.right, val)
    if isinstance(f, And):
        return left and right
    if isinstance(f, Or):
        return left or right
    if isinstance(f, Implies):
        return (not left) or right
    if isinstance(f, Iff):
        return left == right
    raise TypeError(f)


def models(formulas, universe=None):
    formulas = list(formulas)
    atoms = sorted(universe if universe is not None else atoms_of(formulas), key=lambda a: a.name)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        val = dict(zip(atoms, bits))
        if all(truth(f, val) for f in formulas):
            yield val


def tt_entails(base, goal) -> bool:
    base = list(base)
    universe = atoms_of(base + [goal])
    return all(truth(goal, v) for v in models(base, universe))


def tt_consistent(base) -> bool:
    return next(models(list(base)), None) is not None


def tt_equivalent(x, y) -> bool:
    x, y = list(x), list(y)
    return all(tt_entails(x, g) for g in y) and all(tt_entails(y, g) for g in x)


# ---------------------------------------------------------------- default logic

def closure(theory: DefaultTheory, candidate) -> list:
    """Reiter's Γ operator, finitely based, decided by truth tables."""
    candidate = list(candidate)
    base = list(theory.facts)
    fired = set()
    changed = True
    while changed:
        changed = False
        for i, d in enumerate(theory.defaults):
            if i in fired:
                continue
            if tt_entails(base, d.pre) and not tt_entails(candidate, neg(d.just)):
                base.append(d.cons)
                fired.add(i)
                changed = True
    return base


def brute_extensions(theory: DefaultTheory) -> list[list]:
    """Every extension, found as fixed points of Γ among the candidates
    Cn(W ∪ cons(S)) for all subsets S of the defaults."""
    found: list[list] = []
    rules = theory.defaults
    for size in range(len(rules) + 1):
        for subset in itertools.combinations(rules, size):
            cand = list(theory.facts) + [d.cons for d in subset]
            if tt_equivalent(closure(theory, cand), cand):
                if not any(tt_equivalent(cand, e) for e in found):
                    found.append(cand)
    return found


# ---------------------------------------------------------------- random generation

ATOMS = ("a", "b", "c", "d")


def random_formula(rng: random.Random, atoms=ATOMS, depth: int = 2) -> Formula:
    if depth == 0 or rng.random() < 0.35:
        r = rng.random()
        if r < 0.05:
            return TOP
        if r < 0.08:
            return BOTTOM
        return Atom(rng.choice(atoms))
    kind = rng.randrange(5)
    if kind == 0:
        return Not(random_formula(rng, atoms, depth - 1))
    cls = (And, Or, Implies, Iff)[kind - 1]
    return cls(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))


def random_literal(rng: random.Random, atoms=ATOMS) -> Formula:
    a = Atom(rng.choice(atoms))
    return a if rng.random() < 0.5 else Not(a)


def random_rule(rng: random.Random, atoms=ATOMS, normal: bool = False) -> DefaultRule:
    pre = TOP if rng.random() < 0.3 else random_formula(rng, atoms, 1)
    cons = random_literal(rng, atoms) if rng.random() < 0.7 else random_formula(rng, atoms, 1)
    if normal:
        return DefaultRule(pre, cons, cons)
    r = rng.random()
    if r < 0.4:
        just = cons
    elif r < 0.6:
        just = And(random_literal(rng, atoms), cons)
    else:
        just = random_formula(rng, atoms, 1)
    return DefaultRule(pre, just, cons)


def random_theory(rng: random.Random, max_defaults: int = 4, max_facts: int = 2, atoms=ATOMS) -> DefaultTheory:
    rules = [random_rule(rng, atoms) for _ in range(rng.randint(0, max_defaults))]
    facts = [random_formula(rng, atoms, 1) for _ in range(rng.randint(0, max_facts))]
    return DefaultTheory(rules, facts)


def f(text: str) -> Formula:
    return parse_formula(text)


def mk(wp=(), dp=(), wc=(), dc=()):
    """Build an argument from formula and rule strings."""
    return DefaultArgument(
        tuple(parse_formula(s) for s in wp),
        tuple(parse_rule(s) for s in dp),
        tuple(parse_formula(s) for s in wc),
        tuple(parse_rule(s) for s in dc),
    )


def random_argument(rng: random.Random, atoms=ATOMS, max_rules: int = 2, normal: bool = False):
    """A random constructible argument, or None when a component is not singular."""
    def facts():
        return tuple(random_formula(rng, atoms, 1) for _ in range(rng.randint(0, 2)))

    def rules():
        return tuple(random_rule(rng, atoms, normal) for _ in range(rng.randint(0, max_rules)))

    try:
        return DefaultArgument(facts(), rules(), facts(), rules())
    except NotSingular:
        return None
