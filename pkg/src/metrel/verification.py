"""Checking realizations, resolving sets, equivalence and small isomorphism."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from metrel.core import (
    UNREACHABLE,
    DimensionError,
    GraphError,
    LabeledGraph,
    Realization,
    Vector,
    VectorSet,
    bfs_distances,
    format_vector,
)

MAX_ISO_VERTICES = 10


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    disconnected: bool = False
    vertex: Vector | None = None
    landmark: int | None = None  # 0-based coordinate
    expected: int | None = None
    actual: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        if self.disconnected:
            return "graph is disconnected"
        actual = "unreachable" if self.actual == UNREACHABLE else self.actual
        return (
            f"vertex {format_vector(self.vertex)}: distance to landmark {self.landmark + 1} "
            f"is {actual}, expected {self.expected}"
        )


def verify_realization(g: LabeledGraph, landmarks: Sequence[int], s: VectorSet) -> VerificationReport:
    """Check that d(u, landmark i) equals u_i for every vertex u and every i.

    Failures are reported landmark by landmark, vertices in lexicographic
    order within each landmark.
    """
    if len(landmarks) != s.dim:
        raise DimensionError(f"{len(landmarks)} landmarks for dimension {s.dim}")
    if g.vertices != s:
        raise DimensionError("graph vertex set differs from the vector set")
    if len(s) == 0:
        return VerificationReport(True)
    adj = g.adjacency()
    if UNREACHABLE in bfs_distances(g, 0, adj):
        return VerificationReport(False, disconnected=True)
    for i, w in enumerate(landmarks):
        dist = bfs_distances(g, w, adj)
        for u, d in zip(s, dist):
            if d != u[i]:
                return VerificationReport(False, vertex=u, landmark=i, expected=u[i], actual=d)
    return VerificationReport(True)


def _adjacency_of(g) -> dict[Hashable, list[Hashable]]:
    """Accept a LabeledGraph, a networkx-style graph or a plain adjacency mapping."""
    if isinstance(g, LabeledGraph):
        adj = g.adjacency()
        return {g.vertices[i]: [g.vertices[j] for j in nbrs] for i, nbrs in enumerate(adj)}
    if hasattr(g, "adj"):
        return {u: list(nbrs) for u, nbrs in g.adj.items()}
    if isinstance(g, Mapping):
        adj: dict[Hashable, set] = {u: set() for u in g}
        for u, nbrs in g.items():
            for v in nbrs:
                if v == u:
                    raise GraphError(f"self-loop at {u!r}")
                adj[u].add(v)
                adj.setdefault(v, set()).add(u)
        return {u: sorted(nb, key=repr) for u, nb in adj.items()}
    raise TypeError(f"unsupported graph type {type(g).__name__}")


def _distances(adj: Mapping[Hashable, Iterable[Hashable]], source) -> dict:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def metric_representations(g, w: Sequence[Hashable]) -> dict[Hashable, Vector]:
    adj = _adjacency_of(g)
    if not w:
        raise ValueError("landmark list is empty")
    for x in w:
        if x not in adj:
            raise KeyError(f"landmark {x!r} is not a vertex")
    tables = [_distances(adj, x) for x in w]
    if len(tables[0]) != len(adj):
        raise GraphError("graph is disconnected; distances are undefined")
    return {u: tuple(t[u] for t in tables) for u in adj}


def _clash(reps: Mapping[Hashable, Vector]):
    seen: dict[Vector, Hashable] = {}
    for u, r in reps.items():
        if r in seen:
            return seen[r], u
        seen[r] = u
    return None


def is_resolving_set(g, w: Sequence[Hashable]) -> bool:
    return _clash(metric_representations(g, w)) is None


def project_to_canonical(g, w: Sequence[Hashable]) -> Realization:
    """Relabel every vertex by its distance vector to ``w``.

    The result is the equivalent realization living on the coordinate set,
    i.e. a spanning subgraph of the canonical realization.
    """
    reps = metric_representations(g, w)
    clash = _clash(reps)
    if clash is not None:
        a, b = clash
        raise GraphError(f"not a resolving set: {a!r} and {b!r} share coordinates {format_vector(reps[a])}")
    s = VectorSet(reps.values(), dim=len(w))
    adj = _adjacency_of(g)
    edges = {(s.index(reps[u]), s.index(reps[v])) for u, nbrs in adj.items() for v in nbrs}
    return Realization(LabeledGraph(s, edges), tuple(s.index(reps[x]) for x in w))


def are_equivalent(r1: Realization, r2: Realization) -> bool:
    # The coordinate-preserving bijection is the identity on labels, so
    # equivalence is plain edge-set equality.
    if r1.vertices != r2.vertices:
        raise ValueError("realizations of different vector sets")
    return r1.edges == r2.edges


def _refined_colors(adj: list[list[int]]) -> list[int]:
    """Colour refinement seeded with degrees until the partition is stable."""
    n = len(adj)
    colors = [len(a) for a in adj]
    while True:
        sigs = [(colors[u], tuple(sorted(colors[v] for v in adj[u]))) for u in range(n)]
        palette = {sig: k for k, sig in enumerate(sorted(set(sigs)))}
        new = [palette[sig] for sig in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def are_isomorphic_small(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Abstract isomorphism by backtracking over degree-refined candidates."""
    n = len(g1.vertices)
    if max(n, len(g2.vertices)) > MAX_ISO_VERTICES:
        raise ValueError(f"isomorphism test is limited to {MAX_ISO_VERTICES} vertices")
    if n != len(g2.vertices) or g1.num_edges != g2.num_edges:
        return False
    adj1, adj2 = g1.adjacency(), g2.adjacency()
    # refine the disjoint union so colour ids are comparable across graphs
    joint = _refined_colors(adj1 + [[v + n for v in a] for a in adj2])
    c1, c2 = joint[:n], joint[n:]
    if sorted(c1) != sorted(c2):
        return False
    nbr1 = [set(a) for a in adj1]
    nbr2 = [set(a) for a in adj2]
    order = sorted(range(n), key=lambda u: (sum(c == c1[u] for c in c1), u))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == n:
            return True
        u = order[k]
        for v in range(n):
            if v in used or c2[v] != c1[u]:
                continue
            if any((m in nbr1[u]) != (mapping[m] in nbr2[v]) for m in mapping):
                continue
            mapping[u] = v
            used.add(v)
            if extend(k + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return extend(0)


def edge_vectors_chebyshev_ok(r: Realization) -> bool:
    """Every edge joins vectors whose coordinates differ by at most 1."""
    return all(
        max(abs(a - b) for a, b in zip(x, y)) <= 1 for x, y in r.graph.vector_edges()
    )

