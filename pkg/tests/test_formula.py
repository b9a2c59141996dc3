import itertools
import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defarg import _kernels
from defarg.formula import (
    BOTTOM, TOP, And, Atom, FormulaSyntaxError, Iff, Implies, Not, Or, atoms_of, compile_formula,
    conj, disj, entails, evaluate, is_consistent, is_tautology, neg, parse_formula, satisfiable,
    shared_nontrivial_consequence, substitute, theories_equivalent,
)
from oracles import models, random_formula, truth, tt_consistent, tt_entails

a, b, c, d = (Atom(x) for x in "abcd")


def formulas(atoms=("a", "b", "c", "d")):
    leaf = st.one_of(st.sampled_from([Atom(x) for x in atoms]), st.just(TOP), st.just(BOTTOM))
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            kids.map(Not),
            st.tuples(kids, kids).map(lambda p: And(*p)),
            st.tuples(kids, kids).map(lambda p: Or(*p)),
            st.tuples(kids, kids).map(lambda p: Implies(*p)),
            st.tuples(kids, kids).map(lambda p: Iff(*p)),
        ),
        max_leaves=10,
    )


# ---------------------------------------------------------------- parsing

@pytest.mark.parametrize(
    "text, expected",
    [
        ("a & b | c", Or(And(a, b), c)),
        ("a | b & c", Or(a, And(b, c))),
        ("a -> b -> c", Implies(a, Implies(b, c))),
        ("a <-> b -> c", Iff(a, Implies(b, c))),
        ("!a & b", And(Not(a), b)),
        ("!(a & b)", Not(And(a, b))),
        ("true", TOP),
        ("false", BOTTOM),
        ("((a))", a),
    ],
)
def test_precedence(text, expected):
    assert parse_formula(text) == expected


def test_predicate_atoms():
    f = parse_formula("bird(Tweety) & is(holiday_by_sea, good)")
    assert {x.name for x in atoms_of(f)} == {"bird(Tweety)", "is(holiday_by_sea,good)"}


def test_variables_need_permission():
    with pytest.raises(FormulaSyntaxError, match="unbound variable"):
        parse_formula("p(X)")
    f = parse_formula("p(X)", allow_variables=True)
    assert f.variables == frozenset({"X"})
    assert substitute(f, {"X": "a"}) == Atom("p", ("a",))


def test_declared_constant_is_not_a_variable():
    assert parse_formula("p(AB)", constants=["AB"]) == Atom("p", ("AB",))


@pytest.mark.parametrize("text", ["", "a &", "(a", "a b", "forall x p(x)", "a -> ", "p(,)", "a # b"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_error_carries_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("a & & b")
    assert info.value.position is not None and info.value.position > 0


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(str(f)) == f


def test_formulas_are_immutable_and_hashable():
    f = And(a, b)
    with pytest.raises(AttributeError):
        f.left = c
    assert len({And(a, b), And(a, b), Or(a, b)}) == 2


def test_neg_collapses_double_negation():
    assert neg(Not(a)) == a
    assert neg(a) == Not(a)


def test_empty_conj_disj():
    assert conj([]) is TOP
    assert disj([]) is BOTTOM


# ---------------------------------------------------------------- semantics against the oracle

@settings(max_examples=300)
@given(formulas())
def test_satisfiable_matches_truth_table(f):
    assert satisfiable(f) == tt_consistent([f])


@settings(max_examples=300)
@given(st.lists(formulas(), max_size=3), formulas())
def test_entails_matches_truth_table(base, goal):
    assert entails(base, goal) == tt_entails(base, goal)


@given(formulas())
def test_evaluate_matches_oracle(f):
    atoms = sorted(atoms_of(f), key=lambda x: x.name)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        val = dict(zip(atoms, bits))
        assert evaluate(f, val) == truth(f, val)


def test_entailment_examples():
    assert entails([a, Implies(a, b)], b)
    assert not entails([Or(a, b), d], a)
    assert is_tautology(Or(Or(And(a, b), Not(a)), Not(b)))
    assert not is_consistent([a, Not(a)])
    assert is_consistent([])
    assert entails([BOTTOM], c)


def test_theory_equivalence():
    assert theories_equivalent([And(a, b)], [a, b])
    assert theories_equivalent([], [Or(b, Not(b))])
    assert not theories_equivalent([a], [Or(a, b)])


def test_shared_nontrivial_consequence():
    assert shared_nontrivial_consequence([a], [And(a, b)])
    assert shared_nontrivial_consequence([a], [b])  # a | b
    assert not shared_nontrivial_consequence([a], [Not(a)])
    assert not shared_nontrivial_consequence([], [a])


def test_too_many_atoms_is_rejected():
    big = conj(Atom(f"x{i}") for i in range(_kernels.MAX_ATOMS + 1))
    with pytest.raises(ValueError, match="atoms"):
        satisfiable(big)


def test_deep_chains_compile():
    big = conj(Atom(f"x{i % 5}") for i in range(3000))
    ops, args, n = compile_formula(big)
    assert n == 5 and len(ops) == 2 * 3000 - 1


# ---------------------------------------------------------------- kernels

def _program(f):
    return compile_formula(f)


@settings(max_examples=200)
@given(formulas(atoms=("a", "b", "c", "d", "e", "f")))
def test_backends_agree(f):
    ops, args, n = _program(f)
    expected = next(models([f]), None) is not None
    assert bool(_kernels.any_model_numpy(ops, args, n)) == expected
    if _kernels.HAVE_NUMBA:
        assert bool(_kernels.any_model_numba(ops, args, n)) == expected


@settings(max_examples=150, deadline=None)
@given(formulas(atoms=tuple(f"p{i}" for i in range(9))))
def test_backends_agree_beyond_one_word(f):
    ops, args, n = _program(f)
    expected = next(models([f]), None) is not None
    assert bool(_kernels.any_model_numpy(ops, args, n)) == expected
    if _kernels.HAVE_NUMBA:
        assert bool(_kernels.any_model_numba(ops, args, n)) == expected


@pytest.mark.parametrize("width", [1, 5, 6, 7, 9])
def test_single_model_found_at_every_position(width):
    names = [Atom(f"q{i}") for i in range(width)]
    for row in range(1 << width):
        f = conj(x if row >> i & 1 else Not(x) for i, x in enumerate(names))
        ops, args, n = _program(f)
        assert n == width
        assert _kernels.any_model_numpy(ops, args, n)
        if _kernels.HAVE_NUMBA:
            assert _kernels.any_model_numba(ops, args, n)
            assert not _kernels.any_model_numba(*_program(And(f, Not(f))))


def test_backends_agree_across_chunks():
    # a single satisfying row placed beyond the first numpy chunk
    names = [f"x{i}" for i in range(_kernels.CHUNK_BITS + 2)]
    f = conj(Atom(x) for x in names)
    ops, args, n = _program(f)
    assert _kernels.any_model_numpy(ops, args, n)
    ops2, args2, n2 = _program(And(f, Not(Atom(names[0]))))
    assert not _kernels.any_model_numpy(ops2, args2, n2)
    if _kernels.HAVE_NUMBA:
        assert _kernels.any_model_numba(ops, args, n)
        assert not _kernels.any_model_numba(ops2, args2, n2)


def test_zero_atom_programs():
    for f, expected in [(TOP, True), (BOTTOM, False), (Not(TOP), False)]:
        ops, args, n = _program(f)
        assert n == 0
        assert bool(_kernels.any_model_numpy(ops, args, n)) is expected
        if _kernels.HAVE_NUMBA:
            assert bool(_kernels.any_model_numba(ops, args, n)) is expected


def test_program_dtypes():
    ops, args, _ = _program(And(a, Not(b)))
    assert ops.dtype == np.int32 and args.dtype == np.int32


@pytest.mark.parametrize("flag, backend", [("1", "numpy"), ("", "numba")])
def test_env_flag_selects_backend(flag, backend):
    env = dict(os.environ, DEFARG_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "import defarg; print(defarg.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    if backend == "numba" and not _kernels.HAVE_NUMBA:
        backend = "numpy"
    assert out.stdout.strip() == backend


def test_numpy_backend_gives_same_entailments():
    env = dict(os.environ, DEFARG_DISABLE_NUMBA="1")
    script = (
        "from defarg.formula import parse_formula as p, entails\n"
        "print(entails([p('a'), p('a -> b')], p('b')), entails([p('a | b')], p('a')))\n"
    )
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["True", "False"]


def test_random_entailment_spot_check():
    rng = random.Random(7)
    for _ in range(200):
        base = [random_formula(rng) for _ in range(rng.randint(0, 3))]
        goal = random_formula(rng)
        assert entails(base, goal) == tt_entails(base, goal)
