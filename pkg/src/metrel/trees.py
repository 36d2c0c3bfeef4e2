"""Realizations by trees.

S1 holds the vectors whose all-ones decrement is also in S, S0 the rest;
S0* holds the S0 vectors whose all-ones increment is in S.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from metrel.core import LabeledGraph, Realization, Vector, VectorSet, chebyshev_adjacent, zero_landmarks
from metrel.realizability import canonical_edges, require_realizable


def shift(x: Sequence[int], k: int) -> Vector:
    return tuple(c + k for c in x)


@dataclass(frozen=True)
class Strata:
    s0: frozenset[Vector]
    s1: frozenset[Vector]
    s0_star: frozenset[Vector]


def split_strata(s: VectorSet) -> Strata:
    s1 = frozenset(x for x in s if shift(x, -1) in s)
    s0 = frozenset(x for x in s if x not in s1)
    s0_star = frozenset(x for x in s0 if shift(x, 1) in s)
    return Strata(s0, s1, s0_star)


class NotTreeRealizableError(ValueError):
    pass


@dataclass(frozen=True)
class TreeReport:
    ok: bool
    condition: str | None = None  # "i" or "ii"
    witness: tuple[Vector, ...] = ()
    coordinate: int | None = None  # 0-based, condition ii only

    def __bool__(self) -> bool:
        return self.ok


def tree_realizable(s: VectorSet) -> TreeReport:
    """Decide whether some realization of ``s`` is a tree.

    (i) Chebyshev-adjacent vectors differ in every coordinate;
    (ii) every x in S0 with x_j > 0 has exactly one Chebyshev-adjacent
    y in S0 with y_j = x_j - 1.
    """
    require_realizable(s)
    for a, b in canonical_edges(s):
        x, y = s[a], s[b]
        if any(p == q for p, q in zip(x, y)):
            return TreeReport(False, "i", (x, y))
    strata = split_strata(s)
    s0 = sorted(strata.s0)
    for x in s0:
        for j, c in enumerate(x):
            if c == 0:
                continue
            below = [y for y in s0 if y[j] == c - 1 and chebyshev_adjacent(x, y)]
            if len(below) != 1:
                return TreeReport(False, "ii", (x, *below), j)
    return TreeReport(True)


def build_tree_realization(s: VectorSet) -> Realization:
    """Canonical edges inside S0 plus an edge from each y in S1 to y - 1."""
    report = tree_realizable(s)
    if not report:
        raise NotTreeRealizableError(f"condition {report.condition} fails at {report.witness}")
    strata = split_strata(s)
    edges = [(a, b) for a, b in canonical_edges(s) if s[a] in strata.s0 and s[b] in strata.s0]
    edges += [(s.index(y), s.index(shift(y, -1))) for y in strata.s1]
    return Realization(LabeledGraph(s, edges), zero_landmarks(s))


def uniquely_realizable_by_tree(s: VectorSet) -> bool:
    """True iff distinct S0* vectors are pairwise at Chebyshev distance > 1."""
    if not tree_realizable(s):
        raise NotTreeRealizableError("set is not realizable by a tree")
    star = sorted(split_strata(s).s0_star)
    return not any(
        chebyshev_adjacent(x, y) for k, x in enumerate(star) for y in star[k + 1:]
    )


def is_tree(g: LabeledGraph) -> bool:
    n = len(g.vertices)
    if g.num_edges != n - 1:
        return False
    parent = list(range(n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for a, b in g.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True
