"""Edge edits, minimal and minimum realizations, unique realizability.

Every realization of a realizable set S is a spanning subgraph of the
canonical one, and a spanning subgraph realizes S exactly when each vertex
u has, for every coordinate i with u_i > 0, a neighbour z with
z_i = u_i - 1. Each such (u, i) is a *demand*; the canonical edges that can
serve it are its *options*. Minimum realizations are therefore minimum
covers of the demands by edges, which is what the search below solves.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from metrel.core import (
    Edge,
    GraphError,
    LabeledGraph,
    Realization,
    VectorSet,
    chebyshev_adjacent,
    format_vector,
    zero_landmarks,
)
from metrel.realizability import canonical_edges, d_neighborhood, require_realizable

DEFAULT_MAX_VERTICES = 12
DEFAULT_MAX_CANONICAL_EDGES = 20


class LimitExceededError(ValueError):
    pass


def _key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


# ---------------------------------------------------------------------------
# Single-edge edit laws


def addable_edge(r: Realization, x: Sequence[int], y: Sequence[int]) -> bool:
    """Whether ``r`` plus the edge xy still realizes the set."""
    x, y = tuple(x), tuple(y)
    if x == y:
        raise GraphError("an edge needs two distinct vertices")
    if r.graph.has_edge(x, y):
        raise GraphError(f"edge {format_vector(x)}--{format_vector(y)} is already present")
    return chebyshev_adjacent(x, y)


def _removable(adj: list[set[int]], s: VectorSet, a: int, b: int) -> bool:
    x, y = s[a], s[b]
    for i in range(s.dim):
        if x[i] == y[i] - 1:
            if not any(s[z][i] == x[i] for z in adj[b] if z != a):
                return False
        elif y[i] == x[i] - 1:
            if not any(s[z][i] == y[i] for z in adj[a] if z != b):
                return False
    return True


def removable_edge(r: Realization, x: Sequence[int], y: Sequence[int]) -> bool:
    """Whether ``r`` minus the edge xy still realizes the set.

    For each coordinate where one endpoint sits one step closer to the
    landmark, the farther endpoint must have another neighbour at that
    closer level.
    """
    s = r.vertices
    if not r.graph.has_edge(x, y):
        raise GraphError(f"edge {format_vector(x)}--{format_vector(y)} is not present")
    adj = [set(a) for a in r.graph.adjacency()]
    return _removable(adj, s, s.index(x), s.index(y))


# ---------------------------------------------------------------------------
# Demand model


class DemandModel:
    """Canonical edges as bits, demands as option masks over those bits."""

    def __init__(self, s: VectorSet):
        require_realizable(s)
        self.s = s
        self.landmarks = zero_landmarks(s)
        self.edges: list[Edge] = canonical_edges(s)
        self.edge_id = {e: k for k, e in enumerate(self.edges)}
        self.full = (1 << len(self.edges)) - 1
        incident: list[list[tuple[int, int]]] = [[] for _ in range(len(s))]
        for k, (a, b) in enumerate(self.edges):
            incident[a].append((b, k))
            incident[b].append((a, k))
        self.demand_vertex: list[int] = []
        self.demand_coord: list[int] = []
        self.options: list[int] = []
        for u, x in enumerate(s):
            for i, c in enumerate(x):
                if c > 0:
                    mask = 0
                    for z, k in incident[u]:
                        if s[z][i] == c - 1:
                            mask |= 1 << k
                    self.demand_vertex.append(u)
                    self.demand_coord.append(i)
                    self.options.append(mask)
        self.edge_demands: list[list[int]] = [[] for _ in self.edges]
        for d, mask in enumerate(self.options):
            for k in _bits(mask):
                self.edge_demands[k].append(d)

    def mask_of(self, edges: Iterable[tuple[int, int]]) -> int:
        mask = 0
        for a, b in edges:
            k = self.edge_id.get(_key(a, b))
            if k is None:
                raise GraphError(
                    f"edge {format_vector(self.s[a])}--{format_vector(self.s[b])} is not a canonical edge"
                )
            mask |= 1 << k
        return mask

    def edges_of(self, mask: int) -> list[Edge]:
        return [self.edges[k] for k in _bits(mask)]

    def covers(self, mask: int) -> bool:
        return all(opt & mask for opt in self.options)

    def removable_in(self, mask: int, k: int) -> bool:
        rest = mask & ~(1 << k)
        return all(self.options[d] & rest for d in self.edge_demands[k])

    def forced_mask(self) -> int:
        mask = 0
        for opt in self.options:
            if _popcount(opt) == 1:
                mask |= opt
        return mask

    def realization(self, mask: int) -> Realization:
        return Realization(LabeledGraph(self.s, self.edges_of(mask)), self.landmarks)


def descent_realizes(s: VectorSet, edges: Iterable[tuple[int, int]]) -> bool:
    """Local test: every positive coordinate of every vertex can step down
    through an edge of ``edges`` (which must be canonical edges)."""
    model = DemandModel(s)
    return model.covers(model.mask_of(edges))


def forced_edges(s: VectorSet) -> frozenset[Edge]:
    """Edges that are the only way some vertex can step down in some coordinate."""
    model = DemandModel(s)
    return frozenset(model.edges_of(model.forced_mask()))


# ---------------------------------------------------------------------------
# Minimal realizations


def minimize_greedy(s: VectorSet, seed: int = 0) -> Realization:
    """Strip removable edges from the canonical realization.

    Seed 0 scans edges in lexicographic order; any other seed shuffles the
    scan order with ``random.Random(seed)``. One pass is enough: removing
    edges never makes another edge removable.
    """
    require_realizable(s)
    order = canonical_edges(s)
    if seed != 0:
        random.Random(seed).shuffle(order)
    adj: list[set[int]] = [set() for _ in range(len(s))]
    for a, b in order:
        adj[a].add(b)
        adj[b].add(a)
    for a, b in order:
        if _removable(adj, s, a, b):
            adj[a].discard(b)
            adj[b].discard(a)
    edges = [(a, b) for a in range(len(s)) for b in adj[a] if a < b]
    return Realization(LabeledGraph(s, edges), zero_landmarks(s))


def enumerate_minimal(
    s: VectorSet,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_canonical_edges: int = DEFAULT_MAX_CANONICAL_EDGES,
) -> list[Realization]:
    """All minimal realizations up to equivalence, in lexicographic edge order."""
    if len(s) > max_vertices:
        raise LimitExceededError(f"{len(s)} vertices exceeds the limit of {max_vertices}")
    model = DemandModel(s)
    if len(model.edges) > max_canonical_edges:
        raise LimitExceededError(
            f"{len(model.edges)} canonical edges exceeds the limit of {max_canonical_edges}"
        )
    seen = {model.full}
    stack = [model.full]
    minimal: list[int] = []
    while stack:
        mask = stack.pop()
        children = [mask & ~(1 << k) for k in _bits(mask) if model.removable_in(mask, k)]
        if not children:
            minimal.append(mask)
        for child in children:
            if child not in seen:
                seen.add(child)
                stack.append(child)
    found = [model.realization(m) for m in minimal]
    found.sort(key=lambda r: (r.num_edges, r.graph.sorted_edges()))
    return found


def is_uniquely_realizable(s: VectorSet) -> bool:
    """True iff every canonical edge is the sole descent option somewhere."""
    require_realizable(s)
    for a, b in canonical_edges(s):
        x, y = s[a], s[b]
        if not any(_sole_descent(s, x, y, i) or _sole_descent(s, y, x, i) for i in range(s.dim)):
            return False
    return True


def _sole_descent(s: VectorSet, lower: tuple, upper: tuple, i: int) -> bool:
    if lower[i] >= upper[i]:
        return False
    return [z for z in d_neighborhood(s, upper) if z[i] == upper[i] - 1] == [lower]


# ---------------------------------------------------------------------------
# Exact minimum cover search


class _Search:
    """Branch and bound over (chosen, banned) edge masks."""

    def __init__(self, options: list[int], demand_vertex: list[int], num_edges: int):
        self.options = options
        self.demand_vertex = demand_vertex
        self.num_edges = num_edges
        self.nodes = 0

    def propagate(self, chosen: int, banned: int):
        while True:
            changed = False
            for opt in self.options:
                if opt & chosen:
                    continue
                avail = opt & ~banned
                if not avail:
                    return None
                if avail & (avail - 1) == 0:
                    chosen |= avail
                    changed = True
            if not changed:
                return chosen, banned

    def open_demands(self, chosen: int, banned: int) -> list[tuple[int, int]]:
        return [
            (d, opt & ~banned) for d, opt in enumerate(self.options) if not opt & chosen
        ]

    def lower_bound(self, open_: list[tuple[int, int]]) -> int:
        """Additional edges still needed, from two independent bounds.

        Per vertex: one new edge if a single edge could serve all of its
        open demands, else two; an edge touches two vertices. Packing:
        demands with pairwise disjoint options each need their own edge.
        """
        common: dict[int, int] = {}
        for d, avail in open_:
            u = self.demand_vertex[d]
            common[u] = common.get(u, avail) & avail
        need = sum(1 if c else 2 for c in common.values())
        by_vertex = (need + 1) // 2
        used = 0
        packed = 0
        for _, avail in sorted(open_, key=lambda t: (_popcount(t[1]), t[0])):
            if not avail & used:
                used |= avail
                packed += 1
        return max(by_vertex, packed)

    def branch_edge(self, open_: list[tuple[int, int]]) -> int:
        counts: dict[int, int] = {}
        for _, avail in open_:
            for k in _bits(avail):
                counts[k] = counts.get(k, 0) + 1
        best = max(counts.values())
        return min(k for k, c in counts.items() if c == best)

    def minimize(self, chosen: int, banned: int, best: int, best_mask: int | None):
        """Smallest cover extending (chosen, banned) with fewer than ``best`` edges."""
        state = {"best": best, "mask": best_mask}

        def dfs(chosen: int, banned: int):
            self.nodes += 1
            r = self.propagate(chosen, banned)
            if r is None:
                return
            chosen, banned = r
            open_ = self.open_demands(chosen, banned)
            size = _popcount(chosen)
            if not open_:
                if size < state["best"]:
                    state["best"], state["mask"] = size, chosen
                return
            if size + self.lower_bound(open_) >= state["best"]:
                return
            bit = 1 << self.branch_edge(open_)
            dfs(chosen | bit, banned)
            dfs(chosen, banned | bit)

        dfs(chosen, banned)
        return state["best"], state["mask"]

    def covers_within(self, chosen: int, banned: int, budget: int, collect: bool = False):
        """Covers of at most ``budget`` edges; the first one, or all if ``collect``."""
        found: list[int] = []

        def dfs(chosen: int, banned: int) -> bool:
            self.nodes += 1
            r = self.propagate(chosen, banned)
            if r is None:
                return False
            chosen, banned = r
            open_ = self.open_demands(chosen, banned)
            size = _popcount(chosen)
            if size > budget:
                return False
            if not open_:
                found.append(chosen)
                return not collect
            if size + self.lower_bound(open_) > budget:
                return False
            bit = 1 << self.branch_edge(open_)
            return dfs(chosen | bit, banned) or dfs(chosen, banned | bit)

        dfs(chosen, banned)
        return found


def _solve_subproblem(args):
    options, demand_vertex, num_edges, chosen, banned, best, best_mask = args
    return _Search(options, demand_vertex, num_edges).minimize(chosen, banned, best, best_mask)


def _split(search: _Search, chosen: int, banned: int, target: int) -> list[tuple[int, int]]:
    """Expand the branching tree breadth-first into at least ``target`` open nodes."""
    frontier = [(chosen, banned)]
    while len(frontier) < target:
        nxt = []
        grew = False
        for c, b in frontier:
            r = search.propagate(c, b)
            if r is None:
                continue
            c, b = r
            open_ = search.open_demands(c, b)
            if not open_:
                nxt.append((c, b))
                continue
            bit = 1 << search.branch_edge(open_)
            nxt.extend([(c | bit, b), (c, b | bit)])
            grew = True
        frontier = nxt
        if not grew:
            break
    return frontier


@dataclass(frozen=True)
class MinimumResult:
    count: int
    witness: Realization

    def __iter__(self):
        return iter((self.count, self.witness))


def _minimum_count(model: DemandModel, workers: int = 1) -> tuple[int, int]:
    search = _Search(model.options, model.demand_vertex, len(model.edges))
    greedy = minimize_greedy(model.s)
    upper = model.mask_of(greedy.edges)
    best = _popcount(upper)
    if workers <= 1:
        return search.minimize(0, 0, best, upper)
    parts = _split(search, 0, 0, 4 * workers)
    tasks = [
        (model.options, model.demand_vertex, len(model.edges), c, b, best, upper) for c, b in parts
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_solve_subproblem, tasks))
    # ties resolve to the incumbent; the witness is recomputed canonically anyway
    return min(results, key=lambda t: t[0]) if results else (best, upper)


def _lex_smallest_cover(model: DemandModel, count: int) -> int:
    """Lexicographically smallest sorted edge list among covers of size ``count``."""
    search = _Search(model.options, model.demand_vertex, len(model.edges))
    chosen, banned = 0, 0
    for k in range(len(model.edges)):
        bit = 1 << k
        if (chosen | banned) & bit:
            continue
        if model.covers(chosen):
            banned |= bit
            continue
        if search.covers_within(chosen | bit, banned, count):
            chosen |= bit
        else:
            banned |= bit
    if not model.covers(chosen) or _popcount(chosen) != count:
        raise RuntimeError("internal error: witness reconstruction failed")
    return chosen


def minimum_edges(s: VectorSet, workers: int = 1) -> MinimumResult:
    """Exact minimum number of edges of a realization, with a witness.

    The witness is the optimal edge set whose sorted edge list is
    lexicographically smallest, so it does not depend on ``workers``.
    """
    model = DemandModel(s)
    count, _ = _minimum_count(model, workers)
    return MinimumResult(count, model.realization(_lex_smallest_cover(model, count)))


def enumerate_minimum(s: VectorSet) -> list[Realization]:
    """Every minimum realization, sorted by edge list."""
    model = DemandModel(s)
    count, _ = _minimum_count(model)
    search = _Search(model.options, model.demand_vertex, len(model.edges))
    masks = search.covers_within(0, 0, count, collect=True)
    found = [model.realization(m) for m in masks if _popcount(m) == count]
    found.sort(key=lambda r: r.graph.sorted_edges())
    return found


def bmetrel_decide(s: VectorSet, k: int) -> bool:
    """Is there a realization of ``s`` with at most ``k`` edges?"""
    if k < 0:
        raise ValueError("k must be non-negative")
    model = DemandModel(s)
    search = _Search(model.options, model.demand_vertex, len(model.edges))
    return bool(search.covers_within(0, 0, k))
