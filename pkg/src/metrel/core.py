"""Integer coordinate vectors, vector sets and graphs labeled by them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Vector = tuple[int, ...]

INT32_MAX = 2**31 - 1
UNREACHABLE = -1


class DimensionError(ValueError):
    """Vectors of different lengths were combined."""


class VectorSetError(ValueError):
    """A collection of vectors cannot form a VectorSet."""


class GraphError(ValueError):
    pass


def as_vector(values: Iterable[int]) -> Vector:
    vec = tuple(values)
    for v in vec:
        if isinstance(v, bool) or not isinstance(v, int):
            raise VectorSetError(f"coordinate {v!r} is not an integer")
        if abs(v) > INT32_MAX:
            raise VectorSetError(f"coordinate {v} does not fit a 32-bit signed integer")
    return vec


def chebyshev_distance(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    return max((abs(a - b) for a, b in zip(x, y)), default=0)


def chebyshev_adjacent(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff the largest coordinate difference between x and y is exactly 1."""
    return chebyshev_distance(x, y) == 1


def format_vector(x: Sequence[int]) -> str:
    return "(" + ",".join(map(str, x)) + ")"


@dataclass(frozen=True)
class VectorSet:
    """A finite set of distinct integer vectors of a common length.

    Elements are stored in lexicographic order; the position of a vector in
    that order is its vertex index everywhere else in the package.
    """

    dim: int
    elements: tuple[Vector, ...]
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __init__(self, vectors: Iterable[Iterable[int]], dim: int | None = None):
        vecs = [as_vector(v) for v in vectors]
        if dim is None:
            if not vecs:
                raise VectorSetError("cannot infer the dimension of an empty set")
            dim = len(vecs[0])
        if dim < 1:
            raise VectorSetError("dimension must be positive")
        for v in vecs:
            if len(v) != dim:
                raise DimensionError(f"vector {format_vector(v)} has length {len(v)}, expected {dim}")
        ordered = sorted(vecs)
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                raise VectorSetError(f"duplicate vector {format_vector(a)}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "elements", tuple(ordered))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return tuple(x) in self._index

    def __getitem__(self, i: int) -> Vector:
        return self.elements[i]

    def __repr__(self) -> str:
        return f"VectorSet(dim={self.dim}, {{{', '.join(map(format_vector, self.elements))}}})"

    def index(self, x: Sequence[int]) -> int:
        try:
            return self._index[tuple(x)]
        except KeyError:
            raise KeyError(f"{format_vector(x)} is not in the set") from None

    @property
    def landmark_index(self) -> dict[int, int]:
        """Coordinate i -> index of the unique element whose i-th entry is 0.

        Coordinates with zero or several such elements are left out.
        """
        hits: dict[int, list[int]] = {}
        for idx, v in enumerate(self.elements):
            for i, c in enumerate(v):
                if c == 0:
                    hits.setdefault(i, []).append(idx)
        return {i: found[0] for i, found in sorted(hits.items()) if len(found) == 1}


Edge = tuple[int, int]


def _normalize_edges(n: int, edges: Iterable[tuple[int, int]]) -> frozenset[Edge]:
    out = set()
    for a, b in edges:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"edge ({a}, {b}) references a missing vertex")
        if a == b:
            raise GraphError(f"self-loop at vertex {a}")
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


@dataclass(frozen=True)
class LabeledGraph:
    """Simple undirected graph whose vertices are the elements of a VectorSet.

    Edges are index pairs ``(i, j)`` with ``i < j``; since indices follow the
    lexicographic order of the vectors, sorting the pairs sorts the edges by
    their endpoint vectors.
    """

    vertices: VectorSet
    edges: frozenset[Edge]

    def __init__(self, vertices: VectorSet, edges: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", _normalize_edges(len(vertices), edges))

    @classmethod
    def from_vector_edges(cls, vertices: VectorSet, edges: Iterable[tuple[Sequence[int], Sequence[int]]]):
        return cls(vertices, ((vertices.index(x), vertices.index(y)) for x, y in edges))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vector_edges(self) -> list[tuple[Vector, Vector]]:
        v = self.vertices
        return [(v[a], v[b]) for a, b in self.sorted_edges()]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(len(self.vertices))]
        for a, b in self.sorted_edges():
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def neighbors(self, x: Sequence[int]) -> list[Vector]:
        i = self.vertices.index(x)
        return [self.vertices[j] for j in self.adjacency()[i]]

    def has_edge(self, x: Sequence[int], y: Sequence[int]) -> bool:
        a, b = self.vertices.index(x), self.vertices.index(y)
        return (min(a, b), max(a, b)) in self.edges

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> LabeledGraph:
        return LabeledGraph(self.vertices, edges)

    def add_edge(self, x: Sequence[int], y: Sequence[int]) -> LabeledGraph:
        a, b = self.vertices.index(x), self.vertices.index(y)
        return LabeledGraph(self.vertices, self.edges | {(min(a, b), max(a, b))})

    def remove_edge(self, x: Sequence[int], y: Sequence[int]) -> LabeledGraph:
        a, b = self.vertices.index(x), self.vertices.index(y)
        return LabeledGraph(self.vertices, self.edges - {(min(a, b), max(a, b))})


def bfs_distances(g: LabeledGraph, source: int, adj: list[list[int]] | None = None) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get ``UNREACHABLE``."""
    n = len(g.vertices)
    if not 0 <= source < n:
        raise IndexError(f"source {source} out of range for {n} vertices")
    if adj is None:
        adj = g.adjacency()
    dist = [UNREACHABLE] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(g: LabeledGraph) -> bool:
    if len(g.vertices) == 0:
        raise GraphError("connectivity of the empty graph is undefined")
    return UNREACHABLE not in bfs_distances(g, 0)


@dataclass(frozen=True)
class Realization:
    """A graph on a VectorSet together with its ordered landmarks.

    ``landmarks[i]`` is the index of the vertex whose i-th coordinate is 0.
    Construction fails unless every vertex's distance vector to the
    landmarks equals its own label.
    """

    graph: LabeledGraph
    landmarks: tuple[int, ...]

    def __post_init__(self):
        from metrel.verification import verify_realization

        object.__setattr__(self, "landmarks", tuple(self.landmarks))
        report = verify_realization(self.graph, self.landmarks, self.graph.vertices)
        if not report.ok:
            raise GraphError(f"not a realization: {report}")

    @property
    def vertices(self) -> VectorSet:
        return self.graph.vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    @property
    def num_edges(self) -> int:
        return len(self.graph.edges)

    def landmark_vectors(self) -> list[Vector]:
        return [self.vertices[i] for i in self.landmarks]


def zero_landmarks(s: VectorSet) -> tuple[int, ...]:
    """Landmark indices in coordinate order; every coordinate must have one."""
    idx = s.landmark_index
    missing = [i for i in range(s.dim) if i not in idx]
    if missing:
        raise VectorSetError(f"no unique vector with coordinate {missing[0] + 1} equal to 0")
    return tuple(idx[i] for i in range(s.dim))
