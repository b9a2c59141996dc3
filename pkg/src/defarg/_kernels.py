"""Model-search kernels over compiled formula programs.

A formula is compiled to a postfix program: two int32 arrays ``ops`` and
``args`` where ``args[i]`` is the atom index for ``OP_ATOM`` and unused
otherwise.  Atom ``k`` takes the value of bit ``k`` of the assignment number,
so enumerating ``range(2**n)`` walks the whole truth table.

Two interchangeable backends are provided:

* ``any_model_numba`` -- an ``@njit`` loop evaluating 64 assignments per
  machine word, with early exit;
* ``any_model_numpy`` -- vectorised evaluation over chunks of assignments.

``any_model`` is bound to numba unless ``DEFARG_DISABLE_NUMBA`` is set to a
truthy value or numba cannot be imported.
"""

from __future__ import annotations

import os

import numpy as np

OP_ATOM = 0
OP_TRUE = 1
OP_FALSE = 2
OP_NOT = 3
OP_AND = 4
OP_OR = 5
OP_IMP = 6
OP_IFF = 7

# 2**16 rows keeps the numpy path under a few MB per stack slot.
CHUNK_BITS = 16

MAX_ATOMS = 30


def _env_disabled() -> bool:
    return os.environ.get("DEFARG_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


def any_model_numpy(ops: np.ndarray, args: np.ndarray, n_atoms: int) -> bool:
    total = 1 << n_atoms
    step = 1 << CHUNK_BITS
    for start in range(0, total, step):
        idx = np.arange(start, min(total, start + step), dtype=np.int64)
        stack: list[np.ndarray] = []
        for op, arg in zip(ops.tolist(), args.tolist()):
            if op == OP_ATOM:
                stack.append(((idx >> arg) & 1).astype(np.bool_))
            elif op == OP_TRUE:
                stack.append(np.ones(idx.shape, dtype=np.bool_))
            elif op == OP_FALSE:
                stack.append(np.zeros(idx.shape, dtype=np.bool_))
            elif op == OP_NOT:
                stack.append(~stack.pop())
            else:
                right = stack.pop()
                left = stack.pop()
                if op == OP_AND:
                    stack.append(left & right)
                elif op == OP_OR:
                    stack.append(left | right)
                elif op == OP_IMP:
                    stack.append(~left | right)
                else:
                    stack.append(left == right)
        if stack[-1].any():
            return True
    return False


# Bit k of word w is assignment 64*w + k.  Atoms below 6 vary inside a word
# with a fixed pattern; higher atoms are constant across the word.
_LOW_PATTERNS = np.array(
    [0xAAAAAAAAAAAAAAAA, 0xCCCCCCCCCCCCCCCC, 0xF0F0F0F0F0F0F0F0,
     0xFF00FF00FF00FF00, 0xFFFF0000FFFF0000, 0xFFFFFFFF00000000],
    dtype=np.uint64,
)


def _any_model_words(ops, args, n_atoms, patterns):
    n = ops.shape[0]
    stack = np.zeros(n, dtype=np.uint64)
    ones = ~np.uint64(0)
    if n_atoms >= 6:
        words = np.int64(1) << np.int64(n_atoms - 6)
        valid = ones
    else:
        words = np.int64(1)
        valid = (np.uint64(1) << np.uint64(1 << n_atoms)) - np.uint64(1)
    w = np.int64(0)
    while w < words:
        sp = 0
        for i in range(n):
            op = ops[i]
            if op == OP_ATOM:
                k = args[i]
                if k < 6:
                    stack[sp] = patterns[k]
                elif (w >> np.int64(k - 6)) & np.int64(1):
                    stack[sp] = ones
                else:
                    stack[sp] = np.uint64(0)
                sp += 1
            elif op == OP_TRUE:
                stack[sp] = ones
                sp += 1
            elif op == OP_FALSE:
                stack[sp] = np.uint64(0)
                sp += 1
            elif op == OP_NOT:
                stack[sp - 1] = ~stack[sp - 1]
            else:
                right = stack[sp - 1]
                left = stack[sp - 2]
                sp -= 1
                if op == OP_AND:
                    stack[sp - 1] = left & right
                elif op == OP_OR:
                    stack[sp - 1] = left | right
                elif op == OP_IMP:
                    stack[sp - 1] = ~left | right
                else:
                    stack[sp - 1] = ~(left ^ right)
        if stack[0] & valid:
            return True
        w += 1
    return False


try:
    import numba

    _words_numba = numba.njit(cache=True, nogil=True)(_any_model_words)

    def any_model_numba(ops: np.ndarray, args: np.ndarray, n_atoms: int) -> bool:
        return bool(_words_numba(ops, args, n_atoms, _LOW_PATTERNS))

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    any_model_numba = None
    HAVE_NUMBA = False


if HAVE_NUMBA and not _env_disabled():
    any_model = any_model_numba
    BACKEND = "numba"
else:
    any_model = any_model_numpy
    BACKEND = "numpy"
