"""Compare the numba and numpy model-search backends.

Each case is an unsatisfiable random program (a formula conjoined with its
negation) so both backends walk the full truth table.

    python3 benchmarks/bench_kernels.py --atoms 8 12 16 20 --repeat 5
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from defarg import _kernels
from defarg.formula import And, Atom, Iff, Implies, Not, Or, compile_formula

OPS = (And, Or, Implies, Iff)


def random_formula(rng: random.Random, atoms, depth: int):
    if depth == 0:
        return rng.choice(atoms)
    if rng.random() < 0.2:
        return Not(random_formula(rng, atoms, depth - 1))
    op = rng.choice(OPS)
    return op(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))


def program(n_atoms: int, depth: int, seed: int):
    rng = random.Random(seed)
    atoms = [Atom(f"p{i}") for i in range(n_atoms)]
    g = random_formula(rng, atoms, depth)
    # mention every atom so the search width is exactly n_atoms
    anchor = atoms[0]
    for x in atoms[1:]:
        anchor = Or(anchor, x)
    g = And(g, anchor)
    return compile_formula(And(g, Not(g)))


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--atoms", type=int, nargs="+", default=[6, 10, 14, 18])
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy backend is timed")
    print(f"{'atoms':>5} {'ops':>5} {'numpy min s':>12} {'numba min s':>12} {'speedup':>8}")
    for n in args.atoms:
        ops, arg, width = program(n, args.depth, args.seed + n)
        np_min, _ = best_of(lambda: _kernels.any_model_numpy(ops, arg, width), args.repeat)
        if _kernels.HAVE_NUMBA:
            _kernels.any_model_numba(ops, arg, width)  # compile outside the timing
            nb_min, _ = best_of(lambda: _kernels.any_model_numba(ops, arg, width), args.repeat)
            print(f"{width:>5} {len(ops):>5} {np_min:>12.5f} {nb_min:>12.5f} {np_min / nb_min:>8.1f}")
        else:
            print(f"{width:>5} {len(ops):>5} {np_min:>12.5f} {'-':>12} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
