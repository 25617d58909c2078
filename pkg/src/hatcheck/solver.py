"""Exact decision procedure for the hat guessing game.

players_win answers "can the players force a correct guess on every
assignment" by searching for a covering family of table entries: each
assignment must be covered by at least one vertex whose table entry (at
the neighborhood coloring that assignment induces) contains the vertex's
own color.  The search backtracks over such covering choices:

* each uncovered assignment contributes one candidate (cell, color) per
  vertex, namely "put my color at v into v's entry for what v sees";
* entries saturate at guess_count colors;
* zero-candidate assignments force a backtrack, single-candidate ones
  are propagated, otherwise we branch on a least-candidate assignment
  (ties broken toward assignments most engaged with already-used
  entries, then by assignment order; candidates by descending residual
  then vertex index);
* a residual count prunes branches where the unsaturated entries cannot
  possibly cover the remaining assignments: a color at an entry covers
  at most its residual (the number of its still-uncovered assignments),
  an entry contributes its cap_left largest color residuals, and the
  total over entries must reach the uncovered count;
* when that count is exactly tight (as it is from the start whenever
  q = n uniformly), a choice below its entry's contributing residuals
  loses more potential than it covers and is excluded from viability,
  which turns the count into per-choice propagation.

Before searching at all, one solved special case is dispatched exactly:
if every vertex sees all others (each choice covers exactly one
assignment), covering is a bipartite matching between assignments and
table slots, and a deterministic augmenting-path matching settles the
players side outright.  Matching failure falls through to the search,
which then produces the refutation transcript.

The first explored branch covers the all-zero assignment at the least
vertex, so the first table entry ever fixed guesses color 0; with
uniform budgets this is also the canonical representative under global
color permutations.

Everything is deterministic and sequential; outcomes depend only on the
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .game import (
    ColorBudget,
    Strategy,
    enumerate_assignments,
    is_defeating,
    strategy_to_text,
    table_size,
    total_table_size,
)
from .graphs import Graph
from .guards import DEFAULT_GUARDS, Guards

PLAYERS = "players"
ADVERSARY = "adversary"


@dataclass(frozen=True)
class SolveOutcome:
    """Result of players_win with its checkable evidence.

    Players: certificate is a winning strategy.  Adversary: transcript
    holds (branch id, assignment) pairs, one per refuted search branch;
    the assignment is the uncovered witness that killed the branch (for
    capacity prunes, the first assignment still uncovered there).
    """

    graph: Graph
    budget: ColorBudget
    guess_count: int
    winner: str
    certificate: Optional[Strategy] = None
    transcript: tuple = ()
    transcript_truncated: bool = False


def outcome_to_text(outcome: SolveOutcome) -> str:
    lines = [f"winner {outcome.winner}"]
    if outcome.winner == PLAYERS:
        lines.append(strategy_to_text(outcome.certificate).rstrip("\n"))
    else:
        for branch_id, assignment in outcome.transcript:
            colors = " ".join(map(str, assignment))
            lines.append(f"branch {branch_id} defeated-by {colors}")
        if outcome.transcript_truncated:
            lines.append("transcript truncated")
    return "\n".join(lines) + "\n"


def _augment(a0, n, cells_of, capacity, occupants):
    """Grow the matching by one assignment via an augmenting path.

    Iterative so path length is not bounded by the recursion limit.
    Frames are [assignment, cell index, occupant index]; occupant index
    -1 means the cell at the current index has not been examined yet.
    """
    visited = set()
    stack = [[a0, 0, -1]]
    success = False
    while stack:
        frame = stack[-1]
        a, ci, oi = frame
        row = cells_of[a]
        if oi >= 0:
            cell = row[ci]
            if success:
                occupants[cell][oi] = a
                stack.pop()
                continue
            oi += 1
            if oi < len(occupants[cell]):
                frame[2] = oi
                stack.append([occupants[cell][oi], 0, -1])
                continue
            frame[1] = ci + 1
            frame[2] = -1
            continue
        if ci >= n:
            stack.pop()
            success = False
            continue
        cell = row[ci]
        if cell in visited:
            frame[1] = ci + 1
            continue
        visited.add(cell)
        if len(occupants[cell]) < capacity[cell]:
            occupants[cell].append(a)
            stack.pop()
            success = True
            continue
        frame[2] = 0
        stack.append([occupants[cell][0], 0, -1])
    return success


def _saturating_matching(a_count, n, cells_of, capacity, ncells):
    """Match every assignment to a distinct table slot, or return None.

    Only valid when every (cell, color) choice covers exactly one
    assignment; covering is then a bipartite matching where each cell
    accepts up to its capacity of assignments, one per chosen color.
    Kuhn-style augmentation, assignments in lexicographic order, cells
    in vertex order, so the result is deterministic.
    """
    occupants = [[] for _ in range(ncells)]
    for a0 in range(a_count):
        if not _augment(a0, n, cells_of, capacity, occupants):
            return None
    return occupants


def players_win(
    g: Graph,
    budget: ColorBudget,
    guess_count: int,
    guards: Guards = DEFAULT_GUARDS,
    max_transcript: int = 1000,
) -> SolveOutcome:
    """Decide the game exactly; see module docstring for the method."""
    n = g.vertex_count
    if n < 1:
        raise ValueError("players_win requires at least one vertex")
    if len(budget) != n:
        raise ValueError("budget length must match vertex count")
    if guess_count not in (1, 2):
        raise ValueError("guess_count must be 1 or 2")
    total_assignments = budget.product()
    guards.check("assignment", total_assignments)
    guards.check("table", total_table_size(g, budget))

    qs = budget.sizes
    assigns = list(enumerate_assignments(budget, guards))
    a_count = len(assigns)

    # cell layout: per-vertex dense tables flattened into one id space
    offsets = []
    ncells = 0
    for v in range(n):
        offsets.append(ncells)
        ncells += table_size(g, budget, v)
    cell_owner = [0] * ncells
    for v in range(n):
        for i in range(table_size(g, budget, v)):
            cell_owner[offsets[v] + i] = v

    capacity = [min(guess_count, qs[cell_owner[c]]) for c in range(ncells)]
    weight = [0] * ncells
    for c in range(ncells):
        v = cell_owner[c]
        weight[c] = total_assignments // (qs[v] * table_size(g, budget, v))

    # per assignment: its covering cell at each vertex
    cells_of = []
    for colors in assigns:
        row = []
        for v in range(n):
            idx = 0
            for u in g.neighbors(v):
                idx = idx * qs[u] + colors[u]
            row.append(offsets[v] + idx)
        cells_of.append(row)

    # reverse maps: which assignments touch a cell, grouped by own color
    cell_members = [[] for _ in range(ncells)]
    cell_color_members = [None] * ncells
    for c in range(ncells):
        cell_color_members[c] = [[] for _ in range(qs[cell_owner[c]])]
    for a in range(a_count):
        row = cells_of[a]
        colors = assigns[a]
        for v in range(n):
            c = row[v]
            cell_members[c].append(a)
            cell_color_members[c][colors[v]].append(a)

    def finish_with_tables(picks_by_cell):
        tables = []
        for v in range(n):
            rows = []
            for i in range(table_size(g, budget, v)):
                picks = picks_by_cell[offsets[v] + i]
                rows.append(tuple(sorted(picks)) if picks else (0,))
            tables.append(tuple(rows))
        certificate = Strategy(g, budget, guess_count, tuple(tables))
        return SolveOutcome(g, budget, guess_count, PLAYERS, certificate=certificate)

    if all(w == 1 for w in weight):
        occupants = _saturating_matching(a_count, n, cells_of, capacity, ncells)
        if occupants is not None:
            picks = [
                [assigns[b][cell_owner[c]] for b in occupants[c]] for c in range(ncells)
            ]
            return finish_with_tables(picks)
        # no matching means adversary; fall through for the transcript

    # search state; res[c][col] = uncovered assignments that (c, col)
    # would newly cover
    chosen = [[] for _ in range(ncells)]
    cap_left = capacity[:]
    cover_cnt = [0] * a_count
    viable_cnt = [n] * a_count
    uncovered = a_count
    res = [[len(m) for m in cell_color_members[c]] for c in range(ncells)]
    thr = [0] * ncells
    trail = []

    def apply(cell: int, color: int) -> None:
        nonlocal uncovered
        chosen[cell].append(color)
        cap_left[cell] -= 1
        if cap_left[cell] == 0:
            for a in cell_members[cell]:
                viable_cnt[a] -= 1
        for a in cell_color_members[cell][color]:
            cover_cnt[a] += 1
            if cover_cnt[a] == 1:
                uncovered -= 1
                row = cells_of[a]
                colors = assigns[a]
                for u in range(n):
                    res[row[u]][colors[u]] -= 1
        trail.append((cell, color))

    def undo_to(mark: int) -> None:
        nonlocal uncovered
        while len(trail) > mark:
            cell, color = trail.pop()
            for a in cell_color_members[cell][color]:
                cover_cnt[a] -= 1
                if cover_cnt[a] == 0:
                    uncovered += 1
                    row = cells_of[a]
                    colors = assigns[a]
                    for u in range(n):
                        res[row[u]][colors[u]] += 1
            if cap_left[cell] == 0:
                for a in cell_members[cell]:
                    viable_cnt[a] += 1
            cap_left[cell] += 1
            chosen[cell].pop()

    def residual_bound():
        """Upper bound on how many uncovered assignments remain coverable.

        Each entry contributes its cap_left largest color residuals;
        thr[cell] is set to the smallest contributing residual, the
        viability threshold in tight states.
        """
        bound = 0
        for c in range(ncells):
            cl = cap_left[c]
            if cl == 0:
                continue
            m1 = 0
            m2 = 0
            for r in res[c]:
                if r > m1:
                    m2 = m1
                    m1 = r
                elif r > m2:
                    m2 = r
            if cl == 1:
                thr[c] = m1
                bound += m1
            else:
                thr[c] = m2
                bound += m1 + m2
        return bound

    def viable_options(a, tight):
        """Usable (cell, color) covers for assignment a.

        In a tight state a choice below its entry's contributing
        residuals loses more bound than it covers, so it is dropped.
        """
        row = cells_of[a]
        colors = assigns[a]
        opts = []
        for v in range(n):
            cell = row[v]
            if cap_left[cell] == 0:
                continue
            col = colors[v]
            if tight and res[cell][col] < thr[cell]:
                continue
            opts.append((cell, col))
        return opts

    def propagate():
        """Apply forced covers until a fixpoint.

        Returns (conflict, branch assignment, branch options).  A
        conflict is an uncovered assignment with no usable choice, or
        the residual count falling short (reported through the first
        uncovered assignment).
        """
        while True:
            if uncovered == 0:
                return None, None, None
            bound = residual_bound()
            if bound < uncovered:
                for a in range(a_count):
                    if cover_cnt[a] == 0:
                        return a, None, None
            tight = bound == uncovered
            forced = None
            best_a = -1
            best_opts = None
            best_key = None
            for a in range(a_count):
                if cover_cnt[a]:
                    continue
                if viable_cnt[a] == 0:
                    return a, None, None
                if (
                    best_opts is not None
                    and not tight
                    and viable_cnt[a] > len(best_opts)
                ):
                    continue
                opts = viable_options(a, tight)
                if not opts:
                    return a, None, None
                if len(opts) == 1:
                    forced = opts[0]
                    break
                # fewest options first, then the assignment most engaged
                # with already-used entries, so related choices cluster
                engagement = sum(capacity[c] - cap_left[c] for c in cells_of[a])
                key = (len(opts), -engagement)
                if best_key is None or key < best_key:
                    best_a = a
                    best_opts = opts
                    best_key = key
            if forced is not None:
                apply(*forced)
                continue
            return None, best_a, best_opts

    transcript = []
    truncated = False
    branch_counter = 0
    # decision stack: (options, next option index, trail length before)
    decisions = []

    def record_conflict(a: int) -> None:
        nonlocal branch_counter, truncated
        if len(transcript) < max_transcript:
            transcript.append((branch_counter, assigns[a]))
        else:
            truncated = True
        branch_counter += 1

    while True:
        conflict, branch_a, branch_opts = propagate()
        if conflict is None and branch_a is None:
            return finish_with_tables(chosen)
        if conflict is None:
            # try the freshest-covering option first; the sort is stable
            # so equal residuals keep vertex order
            branch_opts.sort(key=lambda oc: -res[oc[0]][oc[1]])
            decisions.append((branch_opts, 1, len(trail)))
            apply(*branch_opts[0])
            continue
        record_conflict(conflict)
        while decisions:
            options, nxt, mark = decisions.pop()
            undo_to(mark)
            if nxt < len(options):
                decisions.append((options, nxt + 1, mark))
                apply(*options[nxt])
                break
        else:
            return SolveOutcome(
                g,
                budget,
                guess_count,
                ADVERSARY,
                transcript=tuple(transcript),
                transcript_truncated=truncated,
            )


def find_defeating_assignment(
    g: Graph,
    strategy: Strategy,
    budget: ColorBudget | None = None,
    guards: Guards = DEFAULT_GUARDS,
):
    """First assignment (lex order) every vertex gets wrong, or None.

    An explicit budget pointwise below the strategy's limits the sweep.
    """
    if strategy.graph != g:
        raise ValueError("strategy is for a different graph")
    sweep = budget or strategy.budget
    if any(sweep[v] > strategy.budget[v] for v in range(g.vertex_count)):
        raise ValueError("sweep budget exceeds the strategy's budget")
    guards.check("assignment", sweep.product())
    for assignment in enumerate_assignments(sweep, guards):
        if is_defeating(strategy, assignment):
            return assignment
    return None


def _hg_sweep(g: Graph, guess_count: int, guards: Guards) -> int:
    if g.vertex_count < 1:
        raise ValueError("hat guessing numbers need at least one vertex")
    q = 1
    while True:
        outcome = players_win(g, ColorBudget.uniform(g.vertex_count, q + 1), guess_count, guards)
        if outcome.winner == ADVERSARY:
            return q
        q += 1


def hg_exact(g: Graph, guards: Guards = DEFAULT_GUARDS) -> int:
    """Largest uniform budget the players win with one guess each."""
    return _hg_sweep(g, 1, guards)


def hg2_exact(g: Graph, guards: Guards = DEFAULT_GUARDS) -> int:
    """Largest uniform budget the players win with two guesses each."""
    return _hg_sweep(g, 2, guards)
