#!/usr/bin/env python3
"""Throughput run of every adversary construction.

Builds each oracle on a reference instance and drives seeded random
strategies through it, checking every claimed defeat.  Useful as a
smoke benchmark: any construction change shows up as a throughput or
correctness shift here before the test suite localizes it.
"""

import argparse
import time

from hatcheck.construct import (
    oracle_closure,
    oracle_exhaustive,
    oracle_lemma_blocks,
    oracle_lemma_is,
    oracle_lemma_rus,
    oracle_lemma_two_at_v,
    oracle_theorem_circ,
    oracle_theorem_tary,
)
from hatcheck.game import ColorBudget, is_defeating, random_strategy
from hatcheck.graphs import Graph, RootedTree
from hatcheck.rng import SplitMix64


def k(n: int) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def instances():
    """Yield (name, graph, budget, guesses, defeat) reference rows."""
    one = Graph(1, frozenset())
    orc = oracle_exhaustive(k(2), ColorBudget.uniform(2, 3), 1)
    yield "exhaustive K2@3", orc.graph, orc.budget, 1, orc.defeat

    sub = oracle_exhaustive(one, ColorBudget.uniform(1, 2), 1)
    star2 = Graph.from_edges(3, [(0, 1), (0, 2)])
    orc = oracle_lemma_is(star2, (1, 2), 1, 2, sub)
    yield "peel-is star2", orc.graph, orc.budget, 1, orc.defeat

    sub2 = oracle_exhaustive(k(2), ColorBudget.uniform(2, 5), 2)
    defeat = oracle_lemma_two_at_v(path(3), 0, (0, 1), 4, sub2)
    yield "two-at-v P3", path(3), ColorBudget((2, 5, 5)), 1, defeat

    bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    orc = oracle_lemma_rus(bowtie, 2, (0, 1, 2), (2, 3, 4), 6)
    yield "cut-split bowtie", orc.graph, orc.budget, 1, orc.defeat

    cactus = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    orc = oracle_lemma_blocks(cactus, 6)
    yield "blocks cactus", orc.graph, orc.budget, 1, orc.defeat

    orc = oracle_closure(RootedTree((None, 0, 1), 0))
    yield "closure chain3", orc.graph, orc.budget, 2, orc.defeat

    orc, _ = oracle_theorem_circ(k(3), ell=42)
    yield "circ K3@43", orc.graph, orc.budget, 1, orc.defeat

    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    orc, _ = oracle_theorem_tary(c4, 3, 1)
    yield "tary C4 t=3", orc.graph, orc.budget, 1, orc.defeat


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for name, graph, budget, guesses, defeat in instances():
        rng = SplitMix64(args.seed)
        started = time.perf_counter()
        for _ in range(args.trials):
            s = random_strategy(graph, budget, guesses, rng)
            assignment = defeat(s)
            if not (budget.contains(assignment) and is_defeating(s, assignment)):
                print(f"{name}: BAD DEFEAT {assignment}")
                return 1
        elapsed = time.perf_counter() - started
        print(f"{name:18s} {args.trials} defeats in {elapsed:6.2f}s "
              f"({args.trials / elapsed:8.1f}/s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
