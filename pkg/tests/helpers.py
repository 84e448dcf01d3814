"""Shared test machinery: random generators and independent reference rules.

The reference implementations here deliberately avoid the library's
worklist scheduling: they rescan the whole graph for applicable forcings
at every step and can apply them in any (possibly randomized) order, so
they double as order-invariance probes and as an oracle for the fixpoint.
"""

from __future__ import annotations

from strucnet import NodeSystem, PatternGraph, StructuredNetwork
from strucnet.pattern import STAR, SYMBOLS, ZERO, PatternMatrix


def random_pattern(rng, rows, cols, weights=(0.5, 0.35, 0.15)) -> PatternMatrix:
    draws = rng.choice(3, size=(rows, cols), p=list(weights))
    return PatternMatrix(tuple(tuple(SYMBOLS[v] for v in row) for row in draws))


def single_star_cols(rng, rows, cols) -> PatternMatrix:
    """Pattern with exactly one '*' per column, as node input matrices need."""
    grid = [[ZERO] * cols for _ in range(rows)]
    for j in range(cols):
        grid[int(rng.integers(rows))][j] = STAR
    return PatternMatrix(tuple(tuple(row) for row in grid))


def single_star_rows(rng, rows, cols) -> PatternMatrix:
    """Pattern with exactly one '*' per row, as node output matrices need."""
    grid = [[ZERO] * cols for _ in range(rows)]
    for i in range(rows):
        grid[i][int(rng.integers(cols))] = STAR
    return PatternMatrix(tuple(tuple(row) for row in grid))


def _random_node_state(rng, n_k) -> PatternMatrix:
    # a chain-like structure about 40% of the time keeps a useful share of
    # the generated networks controllable
    if rng.random() < 0.4:
        a = random_pattern(rng, n_k, n_k, (0.75, 0.15, 0.10))
        for i in range(1, n_k):
            a = a.with_entry(i, i - 1, STAR)
        return a
    return random_pattern(rng, n_k, n_k)


def random_network(rng) -> StructuredNetwork:
    """A random valid network: N <= 4 nodes, n_k <= 3, r_k = p_k <= 2."""
    num_nodes = int(rng.integers(1, 5))
    nodes = []
    for k in range(1, num_nodes + 1):
        n_k = int(rng.integers(1, 4))
        io = int(rng.integers(1, 3))
        nodes.append(
            NodeSystem(
                A=_random_node_state(rng, n_k),
                B=single_star_cols(rng, n_k, io),
                C=single_star_rows(rng, io, n_k),
                index=k,
            )
        )
    r = sum(node.num_inputs for node in nodes)
    p = sum(node.num_outputs for node in nodes)
    m = int(rng.integers(1, 3))
    w = random_pattern(rng, r, p, (0.6, 0.3, 0.1))
    if rng.random() < 0.5:
        h = single_star_cols(rng, r, m)
    else:
        h = random_pattern(rng, r, m, (0.5, 0.4, 0.1))
    return StructuredNetwork(tuple(nodes), w, h)


def _out_neighbors(graph: PatternGraph) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {v: set() for v in range(1, graph.num_vertices + 1)}
    for src, dst in graph.edges_star | graph.edges_any:
        out[src].add(dst)
    return out


def applicable_standard_forces(graph: PatternGraph, white: set[int]) -> list[tuple[int, int]]:
    """All (forcer, forced) pairs legal under the standard rule right now."""
    out = _out_neighbors(graph)
    forces = []
    for v in range(1, graph.num_vertices + 1):
        white_out = sorted(out[v] & white)
        if len(white_out) == 1 and (v, white_out[0]) in graph.edges_star:
            forces.append((v, white_out[0]))
    return forces


def standard_forced_set(graph: PatternGraph, rng=None) -> set[int]:
    """Reference fixpoint of the standard rule, applying forces one at a
    time in a (optionally randomized) order."""
    white = set(range(1, graph.num_vertices + 1))
    black: set[int] = set()
    while True:
        forces = applicable_standard_forces(graph, white)
        if not forces:
            return black
        if rng is None:
            _, target = forces[0]
        else:
            _, target = forces[int(rng.integers(len(forces)))]
        black.add(target)
        white.discard(target)


def applicable_weak_forces(graph: PatternGraph, black: set[int]) -> list[tuple[int, int]]:
    return sorted(
        (src, dst)
        for src, dst in graph.edges_star
        if src in black and dst not in black
    )


def weak_forced_set(graph: PatternGraph, rng=None) -> set[int]:
    """Reference fixpoint of the weak rule via one-at-a-time forcing."""
    black = set(range(graph.row_count + 1, graph.num_vertices + 1))
    while True:
        forces = applicable_weak_forces(graph, black)
        if not forces:
            return black
        if rng is None:
            _, target = forces[0]
        else:
            _, target = forces[int(rng.integers(len(forces)))]
        black.add(target)


def star_reachable(graph: PatternGraph) -> set[int]:
    """BFS reachability from the seed vertices along star edges only."""
    seeds = set(range(graph.row_count + 1, graph.num_vertices + 1))
    reached = set(seeds)
    frontier = list(seeds)
    star_out: dict[int, set[int]] = {v: set() for v in range(1, graph.num_vertices + 1)}
    for src, dst in graph.edges_star:
        star_out[src].add(dst)
    while frontier:
        v = frontier.pop()
        for dst in star_out[v]:
            if dst not in reached:
                reached.add(dst)
                frontier.append(dst)
    return reached


def replay_standard(graph: PatternGraph, result) -> set[int]:
    """Replay a standard-rule certificate, checking each step is legal."""
    out = _out_neighbors(graph)
    white = set(range(1, graph.num_vertices + 1))
    black: set[int] = set()
    for forcer, forced in result.forcing_sequence:
        white_out = out[forcer] & white
        assert white_out == {forced}, f"step ({forcer}, {forced}) is not legal"
        assert (forcer, forced) in graph.edges_star
        black.add(forced)
        white.discard(forced)
    return black


def replay_weak(graph: PatternGraph, result) -> set[int]:
    """Replay a weak-rule certificate, checking each step is legal."""
    black = set(result.seeds)
    for forcer, forced in result.forcing_sequence:
        assert forcer in black, f"forcer {forcer} was not black yet"
        assert forced not in black, f"{forced} forced twice"
        assert (forcer, forced) in graph.edges_star
        black.add(forced)
    return black
