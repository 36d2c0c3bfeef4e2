"""Deciding whether a vector set is realizable, and the canonical realization."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from metrel.core import (
    LabeledGraph,
    Realization,
    Vector,
    VectorSet,
    chebyshev_adjacent,
    chebyshev_distance,
    format_vector,
    zero_landmarks,
)

MAX_VIOLATIONS = 100


@dataclass(frozen=True)
class Violation:
    condition: int
    vectors: tuple[Vector, ...]
    coordinate: int  # 0-based

    def __str__(self) -> str:
        what = {
            1: "negative entry or more than one zero",
            2: "not exactly one vector with a zero here",
            3: "no descent predecessor",
        }[self.condition]
        vecs = " ".join(format_vector(v) for v in self.vectors) or "none"
        return f"condition {self.condition} at coordinate {self.coordinate + 1}: {what}: {vecs}"


@dataclass(frozen=True)
class RealizabilityReport:
    realizable: bool
    violations: tuple[Violation, ...] = field(default=())
    truncated: bool = False

    def __bool__(self) -> bool:
        return self.realizable

    def conditions(self) -> set[int]:
        return {v.condition for v in self.violations}


class NotRealizableError(ValueError):
    def __init__(self, report: RealizabilityReport):
        self.report = report
        first = report.violations[0] if report.violations else "?"
        super().__init__(f"set is not realizable ({first})")


def check_realizable(s: VectorSet) -> RealizabilityReport:
    """Check the three realizability conditions and collect violations.

    1. entries are non-negative and each vector has at most one zero;
    2. every coordinate is zero in exactly one vector;
    3. every positive entry x_i has a y in S with y_i = x_i - 1 and
       Chebyshev distance at most 1 from x.
    """
    found: list[Violation] = []
    truncated = False

    def add(v: Violation) -> bool:
        nonlocal truncated
        if len(found) >= MAX_VIOLATIONS:
            truncated = True
            return False
        found.append(v)
        return True

    for x in s:
        zeros = [i for i, c in enumerate(x) if c == 0]
        negative = [i for i, c in enumerate(x) if c < 0]
        if negative:
            add(Violation(1, (x,), negative[0]))
        elif len(zeros) > 1:
            add(Violation(1, (x,), zeros[1]))

    for i in range(s.dim):
        holders = tuple(x for x in s if x[i] == 0)
        if len(holders) != 1:
            add(Violation(2, holders, i))

    for x in s:
        for i, c in enumerate(x):
            if c <= 0:
                continue
            if not any(y[i] == c - 1 and chebyshev_distance(x, y) <= 1 for y in s):
                if not add(Violation(3, (x,), i)):
                    break

    return RealizabilityReport(not found, tuple(found), truncated)


def require_realizable(s: VectorSet) -> None:
    report = check_realizable(s)
    if not report.realizable:
        raise NotRealizableError(report)


def canonical_edges(s: VectorSet) -> list[tuple[int, int]]:
    return [(a, b) for a, b in combinations(range(len(s)), 2) if chebyshev_adjacent(s[a], s[b])]


def canonical_realization(s: VectorSet) -> Realization:
    require_realizable(s)
    return Realization(LabeledGraph(s, canonical_edges(s)), zero_landmarks(s))


def d_neighborhood(s: VectorSet, x: Sequence[int]) -> list[Vector]:
    """Elements of ``s`` at Chebyshev distance exactly 1 from ``x``."""
    x = tuple(x)
    if x not in s:
        raise KeyError(f"{format_vector(x)} is not in the set")
    return [y for y in s if chebyshev_adjacent(x, y)]
