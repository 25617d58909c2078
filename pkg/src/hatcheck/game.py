"""Hat assignments, color budgets, and deterministic guess strategies.

The game: each vertex of a graph is a player who sees exactly the hat
colors of its neighbors and must submit a fixed guess table in advance.
The adversary knows all tables and picks the assignment.  The players
win an assignment if at least one of them guesses its own color.

Representation choices, used everywhere downstream:

* assignments are plain tuples of ints, one color per vertex;
* a strategy stores one dense table per vertex, indexed by the
  mixed-radix encoding of the neighborhood coloring with neighbors in
  ascending vertex order and the last neighbor varying fastest (so table
  order = lexicographic order of neighborhood colorings);
* table entries are sorted tuples of at most guess_count colors.  A
  2-guess strategy may have singleton entries.

Low-level helpers here accept the empty graph (all checks are then
vacuous); the solver layer imposes its own >= 1 vertex preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping

from .errors import GuardExceededError
from .graphs import Graph, induced_subgraph
from .guards import DEFAULT_GUARDS, Guards
from .rng import SplitMix64


@dataclass(frozen=True)
class ColorBudget:
    """Per-vertex hat color counts; vertex v may wear colors 0..sizes[v]-1."""

    sizes: tuple

    def __post_init__(self) -> None:
        if any(q < 1 for q in self.sizes):
            raise ValueError("every budget must be >= 1")

    @staticmethod
    def uniform(vertex_count: int, q: int) -> "ColorBudget":
        return ColorBudget((q,) * vertex_count)

    def product(self) -> int:
        p = 1
        for q in self.sizes:
            p *= q
        return p

    def __len__(self) -> int:
        return len(self.sizes)

    def __getitem__(self, v: int) -> int:
        return self.sizes[v]

    def contains(self, assignment) -> bool:
        return len(assignment) == len(self.sizes) and all(
            0 <= c < q for c, q in zip(assignment, self.sizes)
        )

    def restrict(self, vertices) -> "ColorBudget":
        return ColorBudget(tuple(self.sizes[v] for v in vertices))


def enumerate_assignments(
    budget: ColorBudget, guards: Guards = DEFAULT_GUARDS
) -> Iterator:
    """All assignments within budget, in lexicographic order."""
    guards.check("enumeration", budget.product())
    return product(*[range(q) for q in budget.sizes])


@dataclass(frozen=True)
class Strategy:
    """Deterministic guess tables for every vertex of a graph.

    tables[v][i] is the guess set (sorted tuple) vertex v submits when
    its neighborhood coloring encodes to index i.
    """

    graph: Graph
    budget: ColorBudget
    guess_count: int
    tables: tuple

    def __post_init__(self) -> None:
        g, b = self.graph, self.budget
        if len(b) != g.vertex_count:
            raise ValueError("budget length must match vertex count")
        if self.guess_count not in (1, 2):
            raise ValueError("guess_count must be 1 or 2")
        if len(self.tables) != g.vertex_count:
            raise ValueError("one table per vertex required")
        for v in range(g.vertex_count):
            expect = table_size(g, b, v)
            if len(self.tables[v]) != expect:
                raise ValueError(f"table of vertex {v} has {len(self.tables[v])} entries, expected {expect}")
            for entry in self.tables[v]:
                if not 1 <= len(entry) <= self.guess_count:
                    raise ValueError(f"guess set size out of range at vertex {v}")
                if list(entry) != sorted(set(entry)):
                    raise ValueError(f"guess sets must be sorted and duplicate-free at vertex {v}")
                if any(not 0 <= c < b[v] for c in entry):
                    raise ValueError(f"guess color out of budget at vertex {v}")

    def entry_index(self, v: int, assignment) -> int:
        """Mixed-radix index of the neighborhood coloring seen by v."""
        idx = 0
        for u in self.graph.neighbors(v):
            idx = idx * self.budget[u] + assignment[u]
        return idx


def table_size(g: Graph, budget: ColorBudget, v: int) -> int:
    size = 1
    for u in g.neighbors(v):
        size *= budget[u]
    return size


def total_table_size(g: Graph, budget: ColorBudget) -> int:
    return sum(table_size(g, budget, v) for v in range(g.vertex_count))


def guesses_at(strategy: Strategy, v: int, assignment) -> tuple:
    """Guess set of v given the full assignment (only neighbors matter)."""
    return strategy.tables[v][strategy.entry_index(v, assignment)]


def is_defeating(strategy: Strategy, assignment) -> bool:
    """True if every vertex misses its own color."""
    for v in range(strategy.graph.vertex_count):
        if assignment[v] in guesses_at(strategy, v, assignment):
            return False
    return True


# ---------------------------------------------------------------------------
# strategy transforms
# ---------------------------------------------------------------------------

def induce_strategy_after_fixing(strategy: Strategy, fixed: Mapping):
    """Pin the colors of some vertices and restrict the game to the rest.

    Returns (induced strategy, kept) where kept[i] is the original label
    of the new vertex i.  Tables of surviving vertices keep their rows
    for surviving neighbors and hard-code the pinned colors for removed
    ones; tables of vertices not adjacent to any pinned vertex are
    unchanged.
    """
    g, b = strategy.graph, strategy.budget
    for v, c in fixed.items():
        if not 0 <= c < b[v]:
            raise ValueError(f"fixed color {c} out of budget at vertex {v}")
    sub, kept = induced_subgraph(g, [v for v in range(g.vertex_count) if v not in fixed])
    sub_budget = b.restrict(kept)
    tables = []
    for new_v, old_v in enumerate(kept):
        old_nbrs = g.neighbors(old_v)
        free_nbrs = [u for u in old_nbrs if u not in fixed]
        rows = []
        for coloring in product(*[range(b[u]) for u in free_nbrs]):
            free_color = dict(zip(free_nbrs, coloring))
            idx = 0
            for u in old_nbrs:
                c = fixed[u] if u in fixed else free_color[u]
                idx = idx * b[u] + c
            rows.append(strategy.tables[old_v][idx])
        tables.append(tuple(rows))
    induced = Strategy(sub, sub_budget, strategy.guess_count, tuple(tables))
    return induced, kept


def restrict_strategy_to_vertices(strategy: Strategy, vertices):
    """Drop vertices no survivor can see.

    Valid only when every surviving vertex has all its neighbors among
    the survivors, i.e. the kept set is a union of components of the
    visibility structure; tables then carry over unchanged.
    """
    g = strategy.graph
    kept = tuple(sorted(set(vertices)))
    kept_set = set(kept)
    for v in kept:
        if any(u not in kept_set for u in g.neighbors(v)):
            raise ValueError(f"vertex {v} sees outside the kept set")
    sub, _ = induced_subgraph(g, kept)
    return Strategy(
        sub,
        strategy.budget.restrict(kept),
        strategy.guess_count,
        tuple(strategy.tables[v] for v in kept),
    ), kept


def merge_two_guess(a: Strategy, b: Strategy) -> Strategy:
    """Entrywise union of two 1-guess strategies on the same game."""
    if a.graph != b.graph or a.budget != b.budget:
        raise ValueError("strategies must share graph and budget")
    if a.guess_count != 1 or b.guess_count != 1:
        raise ValueError("merge expects two 1-guess strategies")
    tables = tuple(
        tuple(tuple(sorted(set(ea) | set(eb))) for ea, eb in zip(ta, tb))
        for ta, tb in zip(a.tables, b.tables)
    )
    return Strategy(a.graph, a.budget, 2, tables)


def restrict_to_budget(strategy: Strategy, smaller: ColorBudget) -> Strategy:
    """View a strategy through a pointwise-smaller budget.

    Tables are truncated to the colorings possible under the smaller
    budget.  Guesses that name a color outside the smaller budget can
    never be correct there, so they are remapped to color 0; any
    assignment defeating the restricted strategy therefore defeats the
    original as well.
    """
    g, b = strategy.graph, strategy.budget
    if len(smaller) != len(b) or any(smaller[v] > b[v] for v in range(len(b))):
        raise ValueError("target budget must be pointwise <= the current one")
    tables = []
    for v in range(g.vertex_count):
        rows = []
        for coloring in product(*[range(smaller[u]) for u in g.neighbors(v)]):
            idx = 0
            for u, c in zip(g.neighbors(v), coloring):
                idx = idx * b[u] + c
            entry = strategy.tables[v][idx]
            mapped = tuple(sorted({c if c < smaller[v] else 0 for c in entry}))
            rows.append(mapped)
        tables.append(tuple(rows))
    return Strategy(g, smaller, strategy.guess_count, tuple(tables))


def lift_to_supergraph(strategy: Strategy, supergraph: Graph) -> Strategy:
    """Re-index a strategy onto a graph with the same vertices, more edges.

    The lifted tables ignore the extra visible neighbors: every vertex
    guesses exactly as before, so defeats carry back verbatim.
    """
    g, b = strategy.graph, strategy.budget
    if supergraph.vertex_count != g.vertex_count:
        raise ValueError("supergraph must keep the vertex set")
    if not g.edges <= supergraph.edges:
        raise ValueError("supergraph must contain all current edges")
    tables = []
    for v in range(g.vertex_count):
        old_nbrs = g.neighbors(v)
        rows = []
        for coloring in product(*[range(b[u]) for u in supergraph.neighbors(v)]):
            seen = dict(zip(supergraph.neighbors(v), coloring))
            idx = 0
            for u in old_nbrs:
                idx = idx * b[u] + seen[u]
            rows.append(strategy.tables[v][idx])
        tables.append(tuple(rows))
    return Strategy(supergraph, b, strategy.guess_count, tuple(tables))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def assignment_to_text(assignment) -> str:
    return " ".join(map(str, assignment))


def strategy_to_text(strategy: Strategy) -> str:
    """Header "guesses g", then one line "v <entry index> <guess list>"."""
    lines = [f"guesses {strategy.guess_count}"]
    for v in range(strategy.graph.vertex_count):
        for idx, entry in enumerate(strategy.tables[v]):
            lines.append(f"{v} {idx} {' '.join(map(str, entry))}")
    return "\n".join(lines) + "\n"


def strategy_from_text(text: str, graph: Graph, budget: ColorBudget) -> Strategy:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("guesses "):
        raise ValueError("missing 'guesses g' header")
    guess_count = int(lines[0].split()[1])
    tables = [
        [None] * table_size(graph, budget, v) for v in range(graph.vertex_count)
    ]
    for ln in lines[1:]:
        parts = ln.split()
        v, idx = int(parts[0]), int(parts[1])
        entry = tuple(int(c) for c in parts[2:])
        tables[v][idx] = entry
    if any(e is None for rows in tables for e in rows):
        raise ValueError("incomplete strategy text")
    return Strategy(graph, budget, guess_count, tuple(tuple(rows) for rows in tables))


# ---------------------------------------------------------------------------
# strategy space enumeration and sampling
# ---------------------------------------------------------------------------

def guess_set_count(q: int, guess_count: int) -> int:
    """Number of admissible guess sets: singletons plus pairs if allowed."""
    return q + (q * (q - 1) // 2 if guess_count == 2 else 0)


def nth_guess_set(q: int, guess_count: int, i: int) -> tuple:
    """The i-th guess set: singletons first, then pairs (c1 < c2), both lex.

    Pure arithmetic so budgets in the billions stay cheap to sample.
    """
    if i < q:
        return (i,)
    if guess_count != 2:
        raise IndexError("guess set index out of range")
    k = i - q
    c1 = 0
    while k >= q - 1 - c1:
        k -= q - 1 - c1
        c1 += 1
    return (c1, c1 + 1 + k)


def guess_set_choices(q: int, guess_count: int) -> tuple:
    """All admissible guess sets, materialized; only for small budgets."""
    return tuple(nth_guess_set(q, guess_count, i) for i in range(guess_set_count(q, guess_count)))


def strategy_space_size(g: Graph, budget: ColorBudget, guess_count: int) -> int:
    size = 1
    for v in range(g.vertex_count):
        size *= guess_set_count(budget[v], guess_count) ** table_size(g, budget, v)
    return size


def enumerate_strategies(
    g: Graph, budget: ColorBudget, guess_count: int, limit: int | None = None
) -> Iterator[Strategy]:
    """Every strategy of the game, in lexicographic table order."""
    if limit is not None:
        space = strategy_space_size(g, budget, guess_count)
        if space > limit:
            raise GuardExceededError("enumeration", space, limit)
    cells = []
    for v in range(g.vertex_count):
        choices = guess_set_choices(budget[v], guess_count)
        cells.extend([choices] * table_size(g, budget, v))
    shape = [table_size(g, budget, v) for v in range(g.vertex_count)]
    for flat in product(*cells):
        tables = []
        pos = 0
        for v in range(g.vertex_count):
            tables.append(tuple(flat[pos : pos + shape[v]]))
            pos += shape[v]
        yield Strategy(g, budget, guess_count, tuple(tables))


def random_strategy(
    g: Graph, budget: ColorBudget, guess_count: int, rng: SplitMix64
) -> Strategy:
    """Uniform draw per table cell over all admissible guess sets."""
    tables = []
    for v in range(g.vertex_count):
        count = guess_set_count(budget[v], guess_count)
        tables.append(
            tuple(
                nth_guess_set(budget[v], guess_count, rng.below(count))
                for _ in range(table_size(g, budget, v))
            )
        )
    return Strategy(g, budget, guess_count, tuple(tables))
