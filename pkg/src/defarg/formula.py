"""Propositional formulas over ground atoms.

Formulas are immutable trees with a precomputed structural hash, so they can
key caches and live in sets cheaply.  All semantic queries (entailment,
consistency, equivalence) reduce to a single question -- does a compiled
formula have a model? -- answered by :mod:`defarg._kernels`.

Text grammar::

    formula := iff
    iff     := impl ("<->" impl)*
    impl    := or ("->" impl)?          right associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | "(" formula ")" | "true" | "false" | atom
    atom    := ident [ "(" ident ("," ident)* ")" ]
"""

from __future__ import annotations

import re
from functools import lru_cache, reduce
from typing import Iterable, Iterator

import numpy as np

from . import _kernels

__all__ = [
    "Atom", "Not", "And", "Or", "Implies", "Iff", "Top", "Bottom",
    "Formula", "TOP", "BOTTOM", "FormulaSyntaxError",
    "parse_formula", "atoms_of", "neg", "conj", "disj",
    "satisfiable", "entails", "is_consistent", "is_tautology",
    "theories_equivalent", "shared_nontrivial_consequence", "entails_all",
    "is_variable",
]


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        where = f" at position {position}" if position >= 0 else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


_VARIABLE_RE = re.compile(r"[A-Z][A-Z0-9_]*\Z")


def is_variable(ident: str) -> bool:
    """Schema variables are all-caps identifiers such as ``X`` or ``Y1``."""
    return bool(_VARIABLE_RE.match(ident))


class Formula:
    __slots__ = ("_hash",)
    _prec = 6

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return _show(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({_show(self)!r})"

    # operator sugar, handy in tests and fixtures
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)


class Atom(Formula):
    __slots__ = ("predicate", "args")

    def __init__(self, predicate: str, args: tuple[str, ...] = ()):
        object.__setattr__(self, "predicate", predicate)
        object.__setattr__(self, "args", tuple(args))
        object.__setattr__(self, "_hash", hash(("atom", predicate, self.args)))

    @property
    def name(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(a for a in self.args if is_variable(a))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Atom)
            and self._hash == other._hash
            and self.predicate == other.predicate
            and self.args == other.args
        )

    def __setattr__(self, key, value):
        raise AttributeError("formulas are immutable")

    __hash__ = Formula.__hash__


class _Constant(Formula):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "_hash", hash(("const", value)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Constant) and other.value == self.value

    def __setattr__(self, key, value):
        raise AttributeError("formulas are immutable")

    __hash__ = Formula.__hash__


TOP = _Constant(True)
BOTTOM = _Constant(False)


def Top() -> Formula:
    return TOP


def Bottom() -> Formula:
    return BOTTOM


class Not(Formula):
    __slots__ = ("arg",)
    _prec = 5

    def __init__(self, arg: Formula):
        object.__setattr__(self, "arg", arg)
        object.__setattr__(self, "_hash", hash(("not", arg._hash)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Not) and self._hash == other._hash and self.arg == other.arg

    def __setattr__(self, key, value):
        raise AttributeError("formulas are immutable")

    __hash__ = Formula.__hash__


class _Binary(Formula):
    __slots__ = ("left", "right")
    _tag = ""
    _symbol = ""

    def __init__(self, left: Formula, right: Formula):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "_hash", hash((self._tag, left._hash, right._hash)))

    def __eq__(self, other: object) -> bool:
        return (
            type(other) is type(self)
            and self._hash == other._hash
            and self.left == other.left
            and self.right == other.right
        )

    def __setattr__(self, key, value):
        raise AttributeError("formulas are immutable")

    __hash__ = Formula.__hash__


class And(_Binary):
    __slots__ = ()
    _tag, _symbol, _prec = "and", "&", 4


class Or(_Binary):
    __slots__ = ()
    _tag, _symbol, _prec = "or", "|", 3


class Implies(_Binary):
    __slots__ = ()
    _tag, _symbol, _prec = "imp", "->", 2


class Iff(_Binary):
    __slots__ = ()
    _tag, _symbol, _prec = "iff", "<->", 1


# ---------------------------------------------------------------- printing

def _show(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, _Constant):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        inner = _show(f.arg)
        return f"!({inner})" if isinstance(f.arg, _Binary) else f"!{inner}"
    assert isinstance(f, _Binary)
    left, right = _show(f.left), _show(f.right)
    p = f._prec
    if isinstance(f, Implies):
        # right associative
        left_paren = isinstance(f.left, _Binary) and f.left._prec <= p
        right_paren = isinstance(f.right, _Binary) and f.right._prec < p
    else:
        left_paren = isinstance(f.left, _Binary) and f.left._prec < p
        right_paren = isinstance(f.right, _Binary) and f.right._prec <= p
    if left_paren:
        left = f"({left})"
    if right_paren:
        right = f"({right})"
    return f"{left} {f._symbol} {right}"


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(<->|->|[!&|(),])|([A-Za-z_][A-Za-z0-9_]*))")
_QUANTIFIERS = {"forall", "exists", "all", "some"}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, allow_variables: bool, constants: frozenset[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_variables = allow_variables
        self.constants = constants

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.text, len(self.text))
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", self.text, self.pos())
        self.i += 1
        return tok

    def parse(self) -> Formula:
        if not self.tokens:
            raise FormulaSyntaxError("empty formula", self.text, 0)
        f = self.iff()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected token {self.peek()!r}", self.text, self.pos())
        return f

    def iff(self) -> Formula:
        f = self.impl()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.impl())
        return f

    def impl(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.impl())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.iff()
            self.take(")")
            return f
        if tok == "true":
            self.take()
            return TOP
        if tok == "false":
            self.take()
            return BOTTOM
        return self.atom()

    def ident(self) -> str:
        pos = self.pos()
        tok = self.take()
        if not (tok[0].isalpha() or tok[0] == "_"):
            raise FormulaSyntaxError(f"expected identifier, found {tok!r}", self.text, pos)
        if tok in ("true", "false"):
            raise FormulaSyntaxError(f"keyword {tok!r} used as identifier", self.text, pos)
        return tok

    def atom(self) -> Formula:
        pos = self.pos()
        name = self.ident()
        if name.lower() in _QUANTIFIERS and self.peek() not in (None, "(", ")", "&", "|", "->", "<->"):
            raise FormulaSyntaxError("quantifiers are not supported", self.text, pos)
        args: list[str] = []
        if self.peek() == "(":
            self.take()
            while True:
                arg_pos = self.pos()
                arg = self.ident()
                if is_variable(arg) and arg not in self.constants and not self.allow_variables:
                    raise FormulaSyntaxError(f"unbound variable {arg!r}", self.text, arg_pos)
                args.append(arg)
                if self.peek() == ",":
                    self.take()
                    continue
                self.take(")")
                break
        return Atom(name, tuple(args))


def parse_formula(
    text: str,
    *,
    allow_variables: bool = False,
    constants: Iterable[str] = (),
) -> Formula:
    """Parse ``text`` into a formula.

    All-caps argument identifiers (``X``, ``Y1``) are schema variables and are
    rejected unless ``allow_variables`` is set or they are listed in
    ``constants``.
    """
    return _Parser(text, allow_variables, frozenset(constants)).parse()


# ---------------------------------------------------------------- helpers

def iter_atoms(f: Formula) -> Iterator[Atom]:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            yield g
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, _Binary):
            stack.append(g.right)
            stack.append(g.left)


def atoms_of(formulas: Formula | Iterable[Formula]) -> frozenset[Atom]:
    if isinstance(formulas, Formula):
        formulas = (formulas,)
    return frozenset(a for f in formulas for a in iter_atoms(f))


def neg(f: Formula) -> Formula:
    """Syntactic negation with double-negation collapse."""
    return f.arg if isinstance(f, Not) else Not(f)


def conj(formulas: Iterable[Formula]) -> Formula:
    items = list(formulas)
    if not items:
        return TOP
    return reduce(And, items)


def disj(formulas: Iterable[Formula]) -> Formula:
    items = list(formulas)
    if not items:
        return BOTTOM
    return reduce(Or, items)


def substitute(f: Formula, binding: dict[str, str]) -> Formula:
    """Replace atom arguments according to ``binding``."""
    if isinstance(f, Atom):
        if not f.args:
            return f
        return Atom(f.predicate, tuple(binding.get(a, a) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.arg, binding))
    if isinstance(f, _Binary):
        return type(f)(substitute(f.left, binding), substitute(f.right, binding))
    return f


def evaluate(f: Formula, valuation: dict[Atom, bool]) -> bool:
    """Direct recursive evaluation; used for spot checks, not for search."""
    if isinstance(f, Atom):
        return valuation[f]
    if isinstance(f, _Constant):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.arg, valuation)
    left = evaluate(f.left, valuation)
    right = evaluate(f.right, valuation)
    if isinstance(f, And):
        return left and right
    if isinstance(f, Or):
        return left or right
    if isinstance(f, Implies):
        return (not left) or right
    return left == right


# ---------------------------------------------------------------- semantics

_OPCODE = {And: _kernels.OP_AND, Or: _kernels.OP_OR, Implies: _kernels.OP_IMP, Iff: _kernels.OP_IFF}


def compile_formula(f: Formula) -> tuple[np.ndarray, np.ndarray, int]:
    index = {a: i for i, a in enumerate(sorted(atoms_of(f), key=lambda a: a.name))}
    ops: list[int] = []
    args: list[int] = []

    def emit(g: Formula) -> None:
        # iterative post-order to survive deep conjunction chains
        stack: list[tuple[Formula, bool]] = [(g, False)]
        while stack:
            node, done = stack.pop()
            if isinstance(node, Atom):
                ops.append(_kernels.OP_ATOM)
                args.append(index[node])
            elif isinstance(node, _Constant):
                ops.append(_kernels.OP_TRUE if node.value else _kernels.OP_FALSE)
                args.append(0)
            elif done:
                ops.append(_kernels.OP_NOT if isinstance(node, Not) else _OPCODE[type(node)])
                args.append(0)
            elif isinstance(node, Not):
                stack.append((node, True))
                stack.append((node.arg, False))
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))

    emit(f)
    return np.asarray(ops, dtype=np.int32), np.asarray(args, dtype=np.int32), len(index)


@lru_cache(maxsize=1 << 16)
def satisfiable(f: Formula) -> bool:
    ops, args, n = compile_formula(f)
    if n > _kernels.MAX_ATOMS:
        raise ValueError(f"formula has {n} atoms; at most {_kernels.MAX_ATOMS} are supported")
    return bool(_kernels.any_model(ops, args, n))


def _as_tuple(base: Formula | Iterable[Formula]) -> tuple[Formula, ...]:
    if isinstance(base, Formula):
        return (base,)
    return tuple(base)


def entails(base: Iterable[Formula], goal: Formula) -> bool:
    """``base |- goal`` by exhaustive model search."""
    items = _as_tuple(base)
    if goal in items or goal == TOP:
        return True
    return not satisfiable(And(conj(_dedupe(items)), Not(goal)))


def entails_all(base: Iterable[Formula], goals: Iterable[Formula]) -> bool:
    items = _as_tuple(base)
    return all(entails(items, g) for g in goals)


def is_consistent(base: Iterable[Formula]) -> bool:
    items = _dedupe(_as_tuple(base))
    return satisfiable(conj(items))


def is_tautology(f: Formula) -> bool:
    return not satisfiable(Not(f))


def theories_equivalent(x: Iterable[Formula], y: Iterable[Formula]) -> bool:
    xs, ys = _as_tuple(x), _as_tuple(y)
    return entails(xs, conj(ys)) and entails(ys, conj(xs))


def shared_nontrivial_consequence(x: Iterable[Formula], y: Iterable[Formula]) -> bool:
    """Whether Cn(x) and Cn(y) share a non-tautological member.

    Uses Cn(X) & Cn(Y) = Cn({conj(X) | conj(Y)}).
    """
    return not is_tautology(Or(conj(_as_tuple(x)), conj(_as_tuple(y))))


def _dedupe(items: tuple[Formula, ...]) -> tuple[Formula, ...]:
    return tuple(dict.fromkeys(items))
