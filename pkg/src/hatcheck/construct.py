"""Constructive adversary engines, one per bounding argument.

Each builder packages one argument as an AdversaryOracle: given any
player strategy in scope, its defeat function produces an assignment,
within the oracle's stated color budget, on which every player guesses
wrong.  Oracles compose the way the arguments do: peeling an
independent set delegates to an oracle for the remainder, the cut-vertex
split delegates to a two-guess oracle for one side, the block
composition delegates to the split, and the two pipeline builders
(bounded circumference, forbidden t-ary subtree) assemble everything.

Premises of the form "the players cannot win game X" are the caller's
responsibility; when one is false the defeat run does not misbehave but
raises PremiseViolationError carrying a machine-checkable witness (a
winning strategy for X, or a subgraph embedding).

Every dodge step picks the smallest available color, every enumeration
runs in lexicographic order, and terminal blocks and leaves are chosen
by smallest index, so all defeats are deterministic.  Oracles are
immutable after construction and their defeat functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations, product
from typing import Callable, Optional

from .bounds import _GUARD_BITS, _ceil_e_times, n_h_t_recursive, two_guess_seq
from .errors import GuardExceededError, PremiseViolationError
from .game import (
    ColorBudget,
    Strategy,
    enumerate_assignments,
    guesses_at,
    induce_strategy_after_fixing,
    is_defeating,
    lift_to_supergraph,
    merge_two_guess,
    restrict_strategy_to_vertices,
    restrict_to_budget,
)
from .graphs import (
    Graph,
    RootedTree,
    block_decomposition,
    circumference,
    closure,
    connected_components,
    contains_tary_tree,
    dfs_treedepth_certificate,
    greedy_proper_coloring,
    induced_subgraph,
    tary_tree_size,
)
from .guards import DEFAULT_GUARDS, Guards


@dataclass(frozen=True)
class AdversaryOracle:
    """A constructive win for the adversary at a fixed budget.

    defeat maps a strategy in scope (same graph, same guess count,
    budget equal to the oracle's) to a defeating assignment within
    budget.  defeat_traced returns the same assignment plus the log of
    per-step color choices.  construction describes the argument tree
    the oracle was assembled from.
    """

    graph: Graph
    budget: ColorBudget
    guess_count: int
    defeat: Callable
    construction: tuple
    defeat_traced: Callable


def _make_oracle(graph, budget, guess_count, construction, engine) -> AdversaryOracle:
    def defeat(strategy):
        return engine(strategy, None)

    def defeat_traced(strategy):
        log = []
        out = engine(strategy, log)
        return out, tuple(log)

    return AdversaryOracle(
        graph, budget, guess_count, defeat, tuple(construction), defeat_traced
    )


def _note(log, line: str) -> None:
    if log is not None:
        log.append(line)


def _indent(lines) -> tuple:
    return tuple("  " + ln for ln in lines)


def _sub_defeat(oracle: AdversaryOracle, strategy: Strategy, log):
    """Delegate to a sub-oracle, nesting its per-defeat trace."""
    if log is None:
        return oracle.defeat(strategy)
    out, lines = oracle.defeat_traced(strategy)
    log.extend("  " + ln for ln in lines)
    return out


def _check_scope(strategy: Strategy, graph: Graph, budget: ColorBudget, guess_count: int) -> None:
    if strategy.graph != graph:
        raise ValueError("strategy is for a different graph than the oracle")
    if strategy.guess_count != guess_count:
        raise ValueError(f"oracle expects {guess_count}-guess strategies")
    if strategy.budget != budget:
        raise ValueError("strategy budget does not match the oracle's")


def _smallest_missing(taken) -> int:
    c = 0
    while c in taken:
        c += 1
    return c


def _int_brief(x: int) -> str:
    return str(x) if x.bit_length() <= 60 else f"~2^{x.bit_length() - 1}"


def _budget_brief(budget: ColorBudget) -> str:
    return "(" + ",".join(_int_brief(q) for q in budget.sizes) + ")"


# ---------------------------------------------------------------------------
# base case: enumerate assignments
# ---------------------------------------------------------------------------

def oracle_exhaustive(
    g: Graph, budget: ColorBudget, guess_count: int, guards: Guards = DEFAULT_GUARDS
) -> AdversaryOracle:
    """Defeat by scanning the assignment space in lexicographic order.

    Raises PremiseViolationError if no defeating assignment exists; the
    witness is then the winning strategy itself.
    """
    if len(budget) != g.vertex_count:
        raise ValueError("budget length must match the vertex count")
    construction = (
        f"exhaustive n={g.vertex_count} guesses={guess_count} budget={_budget_brief(budget)}",
    )

    def engine(strategy, log):
        _check_scope(strategy, g, budget, guess_count)
        for assignment in enumerate_assignments(budget, guards):
            if is_defeating(strategy, assignment):
                _note(log, f"exhaustive hit {assignment}")
                return assignment
        raise PremiseViolationError(
            "some assignment within budget defeats the strategy",
            witness=strategy,
        )

    return _make_oracle(g, budget, guess_count, construction, engine)


# ---------------------------------------------------------------------------
# independent-set peel
# ---------------------------------------------------------------------------

def oracle_lemma_is(
    g: Graph,
    u_set,
    r: int,
    ell: int,
    sub: AdversaryOracle,
    guards: Guards = DEFAULT_GUARDS,
) -> AdversaryOracle:
    """Peel an independent set U of degrees <= r off the game.

    Each u in U sees at most ell^r neighborhood colorings once the rest
    of the graph is committed to colors < ell, so with ell^r + 1 colors
    u gets a hat it never guesses.  The rest is delegated to sub, an
    adversary for g minus U at uniform budget ell, and its output stays
    below ell by construction.
    """
    u_tuple = tuple(sorted(set(u_set)))
    if r < 1:
        raise ValueError("degree cap r must be >= 1")
    if ell < 2:
        raise ValueError("need ell >= 2")
    for u in u_tuple:
        if not 0 <= u < g.vertex_count:
            raise ValueError(f"peel vertex {u} out of range")
        if g.degree(u) > r:
            raise ValueError(f"peel vertex {u} has degree {g.degree(u)} > {r}")
    for u, w in combinations(u_tuple, 2):
        if g.has_edge(u, w):
            raise ValueError(f"peel set is not independent: edge ({u}, {w})")
    u_members = set(u_tuple)
    rest = tuple(v for v in g.vertices() if v not in u_members)
    expect_sub, _ = induced_subgraph(g, rest)
    if sub.graph != expect_sub:
        raise ValueError("sub-oracle graph must be g minus the peel set")
    if sub.guess_count != 1:
        raise ValueError("sub-oracle must play the one-guess game")
    if sub.budget != ColorBudget.uniform(len(rest), ell):
        raise ValueError("sub-oracle budget must be uniform ell")

    cap = ell**r + 1
    budget = ColorBudget.uniform(g.vertex_count, cap)
    construction = (
        f"peel-independent-set U={u_tuple} r={r} ell={_int_brief(ell)} budget={_int_brief(cap)}",
    ) + _indent(sub.construction)

    def engine(strategy, log):
        _check_scope(strategy, g, budget, 1)
        fixed = {}
        for u in u_tuple:
            nbrs = g.neighbors(u)
            guards.check("enumeration", ell ** len(nbrs))
            guessed = set()
            for sigma in product(range(ell), repeat=len(nbrs)):
                idx = 0
                for w, c in zip(nbrs, sigma):
                    idx = idx * strategy.budget[w] + c
                guessed.update(strategy.tables[u][idx])
            fixed[u] = _smallest_missing(guessed)
            _note(log, f"dodge u={u} color={fixed[u]} (saw {len(guessed)} guesses)")
        induced, kept = induce_strategy_after_fixing(strategy, fixed)
        shrunk = restrict_to_budget(induced, ColorBudget.uniform(len(kept), ell))
        tail = _sub_defeat(sub, shrunk, log)
        out = [0] * g.vertex_count
        for u, c in fixed.items():
            out[u] = c
        for i, v in enumerate(kept):
            out[v] = tail[i]
        return tuple(out)

    return _make_oracle(g, budget, 1, construction, engine)


# ---------------------------------------------------------------------------
# two colors at one vertex
# ---------------------------------------------------------------------------

def _two_at_v_engine(g, v, pair, ell, sub2, guards):
    """Shared core of the two-color argument at v.

    The incoming strategy plays one guess on g; the adversary commits to
    one of two colors at v, so every other vertex effectively guesses
    from a two-element set.  sub2, a two-guess adversary for g minus v
    at uniform ell + 1, dodges all of those at once; v's guess is then
    determined and v takes the member of pair that differs from it.
    """
    rest = tuple(u for u in g.vertices() if u != v)
    expect_h, _ = induced_subgraph(g, rest)
    if sub2.graph != expect_h:
        raise ValueError("sub-oracle graph must be g minus v")
    if sub2.guess_count != 2:
        raise ValueError("sub-oracle must play the two-guess game")
    if sub2.budget != ColorBudget.uniform(len(rest), ell + 1):
        raise ValueError("sub-oracle budget must be uniform ell+1")

    def engine(strategy, log):
        if strategy.graph != g or strategy.guess_count != 1:
            raise ValueError("expected a one-guess strategy on the split graph")
        if any(strategy.budget[u] != ell + 1 for u in rest):
            raise ValueError("strategy budget off v must be uniform ell+1")
        if strategy.budget[v] <= max(pair):
            raise ValueError("strategy budget at v must cover both committed colors")
        branches = [induce_strategy_after_fixing(strategy, {v: c})[0] for c in pair]
        merged = merge_two_guess(branches[0], branches[1])
        tail = _sub_defeat(sub2, merged, log)
        out = [0] * g.vertex_count
        for i, u in enumerate(rest):
            out[u] = tail[i]
        out[v] = pair[0]
        # v's entry depends only on its neighbors, all of which are set
        vguess = guesses_at(strategy, v, tuple(out))[0]
        choice = pair[1] if vguess == pair[0] else pair[0]
        out[v] = choice
        _note(log, f"two-color vertex {v}: determined guess {vguess}, assign {choice}")
        return tuple(out)

    return engine


def oracle_lemma_two_at_v(
    g: Graph,
    v: int,
    two_colors,
    ell: int,
    sub2: AdversaryOracle,
    guards: Guards = DEFAULT_GUARDS,
):
    """Defeat function for one-guess strategies on g with two colors at v.

    Returns a bare defeat function rather than an oracle because the
    scope at v is a two-color set, not a 0..q-1 range: strategies must
    carry uniform budget ell + 1 off v and at least max(two_colors) + 1
    at v; the output always colors v within two_colors.
    """
    if not 0 <= v < g.vertex_count:
        raise ValueError("v out of range")
    pair = tuple(sorted(set(two_colors)))
    if len(pair) != 2:
        raise ValueError("need two distinct colors at v")
    if ell < 1:
        raise ValueError("need ell >= 1")
    engine = _two_at_v_engine(g, v, pair, ell, sub2, guards)

    def defeat(strategy):
        return engine(strategy, None)

    return defeat


# ---------------------------------------------------------------------------
# cut-vertex split
# ---------------------------------------------------------------------------

def _exhaustive_premise(ell: int, guards: Guards):
    def factory(sub_g: Graph) -> AdversaryOracle:
        return oracle_exhaustive(
            sub_g, ColorBudget.uniform(sub_g.vertex_count, ell + 1), 2, guards
        )

    return factory


def oracle_lemma_rus(
    g: Graph,
    v: int,
    g1_vertices,
    g2_vertices,
    ell: int,
    guards: Guards = DEFAULT_GUARDS,
    premise2=None,
) -> AdversaryOracle:
    """Split the game at a cut vertex v into parts that only share v.

    Premises (caller-asserted): the adversary wins the one-guess game on
    part 1 at budget ell, and the two-guess game on part 2 at budget
    ell.  The defeat enumerates part-1 colorings to find two assignments
    that agree around v, miss every part-1 player, and differ at v; the
    two-color argument then finishes part 2.  Either premise failing
    surfaces as PremiseViolationError whose witness is a winning player
    strategy for the corresponding part.

    premise2 optionally replaces the exhaustive two-guess sub-oracle
    factory for part 2 minus v (used by the pipeline builders).
    """
    part1 = tuple(sorted(set(g1_vertices)))
    part2 = tuple(sorted(set(g2_vertices)))
    s1, s2 = set(part1), set(part2)
    if v not in s1 or v not in s2:
        raise ValueError("v must belong to both parts")
    if s1 & s2 != {v}:
        raise ValueError("parts must intersect exactly in v")
    if s1 | s2 != set(g.vertices()):
        raise ValueError("parts must cover the graph")
    if len(part1) < 2:
        raise ValueError("part 1 needs a vertex besides v")
    # part 2 may degenerate to {v} alone; the premise then reduces to the
    # one-guess game on part 1 and the two-color step finishes trivially
    for a, b in g.edges:
        if not ((a in s1 and b in s1) or (a in s2 and b in s2)):
            raise ValueError(f"edge ({a}, {b}) crosses the split")
    if ell < 1:
        raise ValueError("need ell >= 1")

    g1_graph, kept1 = induced_subgraph(g, part1)
    g2_graph, kept2 = induced_subgraph(g, part2)
    h2_vertices = tuple(u for u in part2 if u != v)
    h2_graph, _ = induced_subgraph(g, h2_vertices)
    premise_factory = premise2 or _exhaustive_premise(ell, guards)
    sub2 = premise_factory(h2_graph)
    if sub2.graph != h2_graph or sub2.guess_count != 2 or sub2.budget != ColorBudget.uniform(
        len(h2_vertices), ell + 1
    ):
        raise ValueError("part-2 premise oracle has the wrong shape")

    others1 = tuple(u for u in part1 if u != v)
    nv1 = tuple(u for u in g.neighbors(v) if u in s1)
    pos1 = {u: i for i, u in enumerate(part1)}
    vpos = pos1[v]
    v2 = kept2.index(v)
    budget = ColorBudget.uniform(g.vertex_count, ell + 1)
    construction = (
        f"cut-split v={v} part1={part1} part2={part2} ell={ell}",
    ) + _indent(sub2.construction)

    def part1_witness(strategy, guess_of_alpha):
        """Players-win certificate on part 1 implied by a failed search.

        Part-1 players keep their tables (their views lie inside part 1);
        v guesses guess_of_alpha(its view).  Used as the premise
        violation witness; it defeats the contradiction argument, so no
        assignment beats it.
        """
        tables = []
        for new_u, old_u in enumerate(kept1):
            if old_u == v:
                rows = [
                    (guess_of_alpha(alpha),)
                    for alpha in product(range(ell + 1), repeat=len(nv1))
                ]
                tables.append(tuple(rows))
            else:
                tables.append(strategy.tables[old_u])
        return Strategy(
            g1_graph, ColorBudget.uniform(len(kept1), ell + 1), 1, tuple(tables)
        )

    def engine(strategy, log):
        _check_scope(strategy, g, budget, 1)
        guards.check("enumeration", (ell + 1) ** len(part1))
        scratch = [0] * g.vertex_count
        groups = {}
        found_any = False
        for phi in product(range(ell + 1), repeat=len(part1)):
            for u, c in zip(part1, phi):
                scratch[u] = c
            # part-1 players other than v see only part-1 colors
            if any(
                guesses_at(strategy, u, scratch)[0] == scratch[u] for u in others1
            ):
                continue
            found_any = True
            alpha = tuple(phi[pos1[u]] for u in nv1)
            groups.setdefault(alpha, {}).setdefault(phi[vpos], phi)
        if not found_any:
            raise PremiseViolationError(
                f"adversary wins the one-guess game on part 1 at {ell} colors",
                witness=part1_witness(strategy, lambda alpha: 0),
            )
        star = None
        for alpha in sorted(groups):
            if len(groups[alpha]) >= 2:
                star = alpha
                break
        if star is None:
            unique = {alpha: next(iter(ext)) for alpha, ext in groups.items()}
            raise PremiseViolationError(
                f"adversary wins the one-guess game on part 1 at {ell} colors",
                witness=part1_witness(
                    strategy, lambda alpha: unique.get(alpha, 0)
                ),
            )
        gammas = sorted(groups[star])[:2]
        phis = [groups[star][c] for c in gammas]
        _note(log, f"cut-split view {star} at {v} extends to colors {tuple(gammas)}")
        fixed = {u: phis[0][pos1[u]] for u in others1}
        induced2, kept_check = induce_strategy_after_fixing(strategy, fixed)
        assert kept_check == kept2
        two_engine = _two_at_v_engine(
            g2_graph, v2, tuple(gammas), ell, sub2, guards
        )
        try:
            psi = two_engine(induced2, log)
        except PremiseViolationError as exc:
            raise PremiseViolationError(
                f"adversary wins the two-guess game on part 2 minus the cut vertex at {ell + 1} colors",
                witness=exc.witness,
            ) from exc
        pick = gammas.index(psi[v2])
        out = [0] * g.vertex_count
        for u in part1:
            out[u] = phis[pick][pos1[u]]
        for j, u in enumerate(kept2):
            out[u] = psi[j]
        assert out[v] == gammas[pick]
        return tuple(out)

    return _make_oracle(g, budget, 1, construction, engine)


# ---------------------------------------------------------------------------
# block composition
# ---------------------------------------------------------------------------

def oracle_lemma_blocks(
    g: Graph,
    ell: int,
    guards: Guards = DEFAULT_GUARDS,
    premise2=None,
) -> AdversaryOracle:
    """Compose block-level two-guess adversaries into one for the graph.

    Premise (caller-asserted): the adversary wins the two-guess game at
    budget ell on every block.  A component that is a single block uses
    its premise oracle directly (one-guess tables are re-read as
    two-guess tables with singleton entries); otherwise the terminal
    block with the smallest vertex tuple is peeled via the cut-vertex
    split, whose part-1 enumeration absorbs the recursion.
    """
    if ell < 1:
        raise ValueError("need ell >= 1")
    budget = ColorBudget.uniform(g.vertex_count, ell + 1)
    premise_factory = premise2 or _exhaustive_premise(ell, guards)
    plans = []
    lines = [f"block-composition n={g.vertex_count} ell={ell}"]
    for comp in connected_components(g):
        comp_graph, _ = induced_subgraph(g, comp)
        if len(comp) == 1:
            inner = oracle_exhaustive(
                comp_graph, ColorBudget.uniform(1, ell + 1), 1, guards
            )

            def engine_c(strategy, log, inner=inner):
                return _sub_defeat(inner, strategy, log)

            lines.append(f"  component {comp}: isolated vertex")
        else:
            bd = block_decomposition(comp_graph)
            if len(bd.blocks) == 1:
                inner = premise_factory(comp_graph)
                if (
                    inner.graph != comp_graph
                    or inner.guess_count != 2
                    or inner.budget != ColorBudget.uniform(len(comp), ell + 1)
                ):
                    raise ValueError("block premise oracle has the wrong shape")

                def engine_c(strategy, log, inner=inner):
                    # a one-guess table is a two-guess table of singletons
                    widened = Strategy(
                        strategy.graph, strategy.budget, 2, strategy.tables
                    )
                    return _sub_defeat(inner, widened, log)

                lines.append(f"  component {comp}: single block")
                lines.extend("  " + ln for ln in _indent(inner.construction))
            else:
                incident = {}
                for b_idx, cut in bd.block_tree:
                    incident.setdefault(b_idx, []).append(cut)
                terminal = min(
                    b_idx for b_idx, cuts in incident.items() if len(cuts) == 1
                )
                cut = incident[terminal][0]
                bver = set(bd.blocks[terminal])
                rest = tuple(
                    u for u in comp_graph.vertices() if u not in bver or u == cut
                )
                inner = oracle_lemma_rus(
                    comp_graph,
                    cut,
                    rest,
                    bd.blocks[terminal],
                    ell,
                    guards,
                    premise2=premise_factory,
                )

                def engine_c(strategy, log, inner=inner):
                    return _sub_defeat(inner, strategy, log)

                lines.append(
                    f"  component {comp}: peel block {bd.blocks[terminal]} at cut {cut}"
                )
                lines.extend("  " + ln for ln in _indent(inner.construction))
        plans.append((comp, engine_c))

    def engine(strategy, log):
        _check_scope(strategy, g, budget, 1)
        out = [0] * g.vertex_count
        for comp, engine_c in plans:
            part, _ = restrict_strategy_to_vertices(strategy, comp)
            colors = engine_c(part, log)
            for i, u in enumerate(comp):
                out[u] = colors[i]
        return tuple(out)

    return _make_oracle(g, budget, 1, construction=tuple(lines), engine=engine)


# ---------------------------------------------------------------------------
# tree closures, two guesses
# ---------------------------------------------------------------------------

def _doubling_seq_ints(n: int) -> tuple:
    """First n+1 terms of a(0)=1, a(k+1) = 1 + 2*prod(a(0..k)), as ints."""
    vals = [1]
    running = 1
    for _ in range(n):
        vals.append(1 + 2 * running)
        running *= vals[-1]
    return tuple(vals)


def oracle_closure(
    tree: RootedTree, guess_count: int = 2, guards: Guards = DEFAULT_GUARDS
) -> AdversaryOracle:
    """Two-guess adversary on the ancestor closure of a rooted tree.

    A vertex at height k gets a(k+1) colors where a(0)=1 and
    a(k+1) = 1 + 2*prod(a(0)..a(k)): a leaf sees only its k ancestors,
    whose colorings number P = a(1)*...*a(k), so its two guesses per view
    cover at most 2P = a(k+1) - 1 colors and the smallest unguessed color
    dodges regardless of what the ancestors later receive.  Peeling
    leaves (smallest index first) reduces to a single root with three
    colors against two guesses.
    """
    if guess_count != 2:
        raise ValueError("the closure adversary is a two-guess construction")
    seq = _doubling_seq_ints(tree.height + 1)
    budget = ColorBudget(tuple(seq[tree.height_of(v) + 1] for v in range(tree.vertex_count)))
    guards.check("assignment", budget.product())
    cl_graph = closure(tree)
    construction = (
        f"tree-closure n={tree.vertex_count} heights={tree.heights} budget={_budget_brief(budget)}",
    )

    def engine(strategy, log):
        _check_scope(strategy, cl_graph, budget, 2)
        cur_tree, cur_strategy = tree, strategy
        orig = list(range(tree.vertex_count))
        out = [0] * tree.vertex_count
        while True:
            if cur_tree.vertex_count == 1:
                root_guesses = cur_strategy.tables[0][0]
                gamma = _smallest_missing(root_guesses)
                out[orig[0]] = gamma
                _note(log, f"closure root {orig[0]}: assign {gamma}")
                break
            leaf = min(cur_tree.leaves())
            nbrs = cur_strategy.graph.neighbors(leaf)
            b = cur_strategy.budget
            total = 1
            for u in nbrs:
                total *= b[u]
            guards.check("enumeration", total)
            guessed = set()
            for sigma in product(*[range(b[u]) for u in nbrs]):
                idx = 0
                for u, c in zip(nbrs, sigma):
                    idx = idx * b[u] + c
                guessed.update(cur_strategy.tables[leaf][idx])
            gamma = _smallest_missing(guessed)
            assert gamma < b[leaf], "budget a(k+1) = 1 + 2P always leaves a color"
            out[orig[leaf]] = gamma
            _note(
                log,
                f"closure leaf {orig[leaf]} height={cur_tree.height_of(leaf)}: assign {gamma}",
            )
            cur_strategy, kept = induce_strategy_after_fixing(cur_strategy, {leaf: gamma})
            cur_tree, kept_t = cur_tree.remove_leaf(leaf)
            assert kept == kept_t
            orig = [orig[i] for i in kept]
        return tuple(out)

    return _make_oracle(cl_graph, budget, 2, construction, engine)


# ---------------------------------------------------------------------------
# pipeline: bounded circumference
# ---------------------------------------------------------------------------

def oracle_theorem_circ(
    g: Graph, guards: Guards = DEFAULT_GUARDS, ell: Optional[int] = None
):
    """Adversary for a graph of bounded circumference, plus its bound.

    With circumference c, every block has a DFS certificate of depth at
    most d = floor(c*c/2) (d = 2 when acyclic: blocks are single edges),
    so the closure adversary beats the two-guess game on each block at
    a(d) colors and the block composition finishes at uniform budget
    a(d).  Returns (oracle, bound) with bound = a(d); the oracle is None
    if the budget is too large to materialize or a guard refuses the
    construction.  Passing ell overrides the budget (ell + 1 colors) so
    the same composition can be exercised at small scale; ell + 1 must
    still cover a(depth) for every block certificate.
    """
    c = circumference(g, guards)
    d = (c * c) // 2 if c >= 3 else 2
    bound = two_guess_seq(d)
    if ell is None:
        if not bound.is_exact:
            return None, bound
        ell_val = int(bound.exact) - 1
    else:
        ell_val = ell

    def closure_premise(sub_g: Graph) -> AdversaryOracle:
        cert = dfs_treedepth_certificate(sub_g)
        need = _doubling_seq_ints(cert.depth)[cert.depth]
        if need > ell_val + 1:
            raise ValueError(
                f"budget {ell_val + 1} cannot host a depth-{cert.depth} certificate (needs {need})"
            )
        inner = oracle_closure(cert.tree, 2, guards)
        target = ColorBudget.uniform(sub_g.vertex_count, ell_val + 1)

        def engine(strategy, log):
            _check_scope(strategy, sub_g, target, 2)
            lifted = lift_to_supergraph(strategy, inner.graph)
            shrunk = restrict_to_budget(lifted, inner.budget)
            return _sub_defeat(inner, shrunk, log)

        lines = (
            f"embed block into closure: certificate depth {cert.depth}",
        ) + _indent(inner.construction)
        return _make_oracle(sub_g, target, 2, lines, engine)

    try:
        core = oracle_lemma_blocks(g, ell_val, guards, premise2=closure_premise)
    except GuardExceededError:
        return None, bound
    header = (
        f"bounded-circumference pipeline: c={c} depth-cap={d} budget={_int_brief(ell_val + 1)}",
    )
    oracle = replace(core, construction=header + _indent(core.construction))
    return oracle, bound


# ---------------------------------------------------------------------------
# pipeline: forbidden t-ary subtree
# ---------------------------------------------------------------------------

def _tary_build(g_cur: Graph, t: int, h_cur: int, guards: Guards):
    """Recursive assembly; returns (oracle, exact budget threshold)."""
    base = _ceil_e_times(t)
    if g_cur.vertex_count == 0:
        return (
            oracle_exhaustive(g_cur, ColorBudget.uniform(0, base), 1, guards),
            base,
        )
    if h_cur == 1:
        for v in g_cur.vertices():
            if g_cur.degree(v) >= t:
                raise PremiseViolationError(
                    f"maximum degree at most {t - 1} in the base case",
                    witness=(v,) + g_cur.neighbors(v)[:t],
                )
        return (
            oracle_exhaustive(
                g_cur, ColorBudget.uniform(g_cur.vertex_count, base), 1, guards
            ),
            base,
        )
    k = 2 * t**h_cur
    low = [v for v in g_cur.vertices() if g_cur.degree(v) < k]
    if not low:
        witness = None
        if tary_tree_size(t, h_cur) <= guards.tree_size:
            witness = contains_tary_tree(g_cur, t, h_cur, guards)
        raise PremiseViolationError(
            f"minimum degree {k} forces a {t}-ary subtree of height {h_cur}",
            witness=witness,
        )
    low_set = set(low)
    rest = [v for v in g_cur.vertices() if v not in low_set]
    g_low, kept_low = induced_subgraph(g_cur, low)
    classes = [
        tuple(kept_low[i] for i in cls) for cls in greedy_proper_coloring(g_low)
    ]
    sub_g, _ = induced_subgraph(g_cur, rest)
    oracle, threshold = _tary_build(sub_g, t, h_cur - 1, guards)
    keep = list(rest)
    for cls in reversed(classes):
        keep = sorted(keep + list(cls))
        g_step, kept_step = induced_subgraph(g_cur, keep)
        relabel = {old: i for i, old in enumerate(kept_step)}
        u_local = tuple(relabel[u] for u in cls)
        if threshold.bit_length() * (k - 1) > _GUARD_BITS:
            raise GuardExceededError(
                "enumeration", threshold.bit_length() * (k - 1), _GUARD_BITS
            )
        oracle = oracle_lemma_is(g_step, u_local, k - 1, threshold, oracle, guards)
        threshold = threshold ** (k - 1) + 1
    return oracle, threshold


def oracle_theorem_tary(g: Graph, t: int, h: int, guards: Guards = DEFAULT_GUARDS):
    """Adversary for a graph with no complete t-ary subtree of height h.

    Splits off the vertices of degree below k = 2*t^h, partitioned into
    greedy color classes, and peels each class with the independent-set
    argument; the remainder has no t-ary subtree of height h-1 and
    recurses, down to the max-degree base case solved exhaustively.
    Returns (oracle, bound); the oracle is None when the budget chain
    leaves exact-integer range, and the precondition is checked up front
    whenever the subtree search is within guard.
    """
    if t < 2 or h < 1:
        raise ValueError("need t >= 2 and h >= 1")
    if tary_tree_size(t, h) <= guards.tree_size:
        embedding = contains_tary_tree(g, t, h, guards)
        if embedding is not None:
            raise PremiseViolationError(
                f"graph contains no {t}-ary subtree of height {h}",
                witness=embedding,
            )
    bound = n_h_t_recursive(h, t)
    try:
        oracle, threshold = _tary_build(g, t, h, guards)
    except GuardExceededError:
        return None, bound
    header = (
        f"forbidden-{t}-ary-height-{h} pipeline: budget={_int_brief(threshold)}",
    )
    oracle = replace(oracle, construction=header + _indent(oracle.construction))
    return oracle, bound


# ---------------------------------------------------------------------------
# budget monotonicity
# ---------------------------------------------------------------------------

def with_budget_slack(oracle: AdversaryOracle, budget: ColorBudget) -> AdversaryOracle:
    """Serve a pointwise larger budget by ignoring the extra colors.

    Incoming strategies are restricted to the oracle's own budget
    (guesses outside it can never be right); the defeat found there is
    valid under the larger budget verbatim.
    """
    if len(budget) != len(oracle.budget):
        raise ValueError("budget length mismatch")
    if any(budget[v] < oracle.budget[v] for v in range(len(budget))):
        raise ValueError("slack budget must be pointwise >= the oracle's")

    def engine(strategy, log):
        _check_scope(strategy, oracle.graph, budget, oracle.guess_count)
        shrunk = restrict_to_budget(strategy, oracle.budget)
        return _sub_defeat(oracle, shrunk, log)

    lines = (
        f"budget slack {_budget_brief(budget)} over {_budget_brief(oracle.budget)}",
    ) + _indent(oracle.construction)
    return _make_oracle(oracle.graph, budget, oracle.guess_count, lines, engine)
