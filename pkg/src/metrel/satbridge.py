"""From 3SAT formulas to bounded realization instances and back.

Given a formula with n variables and m clauses, the instance has one
vector per literal, one per variable (r_i), one per clause (c_j) and two
more (s, t), in dimension n + m + 1 with coordinates ordered r_1..r_n,
c_1..c_m, s. A realization with at most k = 5n + sum |C_j| edges exists
iff the formula is satisfiable, and t's neighbours in such a realization
spell out a satisfying assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from metrel.core import LabeledGraph, Realization, Vector, VectorSet, zero_landmarks
from metrel.verification import verify_realization

MAX_BRUTE_FORCE_VARS = 20

Assignment = dict[int, bool]


class DimacsError(ValueError):
    pass


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment.get(abs(l)) == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise DimacsError(f"line {lineno}: empty clause")
                if len(current) > 3:
                    raise DimacsError(
                        f"line {lineno}: clause has {len(current)} literals; at most 3 allowed"
                    )
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > header[0]:
                    raise DimacsError(f"line {lineno}: variable {abs(lit)} exceeds declared {header[0]}")
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


@dataclass(frozen=True)
class Normalized:
    """Result of simplifying a formula before reduction.

    ``verdict`` is ``"reduced"`` when ``formula`` is a non-trivial remainder
    over compact variables 1..n', ``"sat"`` or ``"unsat"`` when propagation
    settled the question. ``var_map[i - 1]`` is the original index of
    compact variable i. ``fixed`` holds the forced and free variables.
    """

    verdict: str
    formula: CnfFormula | None
    var_map: tuple[int, ...]
    fixed: Assignment
    num_original_vars: int

    def expand(self, compact: Mapping[int, bool]) -> Assignment:
        """Full assignment over the original variables."""
        out = dict(self.fixed)
        for i, orig in enumerate(self.var_map, 1):
            out[orig] = compact[i]
        return dict(sorted(out.items()))


def normalize_formula(f: CnfFormula) -> Normalized:
    """Drop tautologies and repeated literals, then unit-propagate.

    Afterwards every clause has at least two literals over distinct
    variables, so each remaining variable shares a clause with another.
    Variables left without occurrences are free and set to true.
    """
    clauses: list[frozenset[int]] = []
    for c in f.clauses:
        lits = frozenset(c)
        if any(-l in lits for l in lits):
            continue
        clauses.append(lits)
    forced: Assignment = {}
    while True:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        (lit,) = unit
        forced[abs(lit)] = lit > 0
        nxt = []
        for c in clauses:
            if lit in c:
                continue
            if -lit in c:
                c = c - {-lit}
                if not c:
                    return Normalized("unsat", None, (), forced, f.num_vars)
            nxt.append(c)
        clauses = nxt
    used = sorted({abs(l) for c in clauses for l in c})
    fixed = dict(forced)
    for v in range(1, f.num_vars + 1):
        if v not in fixed and v not in used:
            fixed[v] = True
    fixed = dict(sorted(fixed.items()))
    if not clauses:
        return Normalized("sat", None, (), fixed, f.num_vars)
    compact = {v: i for i, v in enumerate(used, 1)}
    # keep the original clause order; literal order is sorted for determinism
    new_clauses = tuple(
        tuple(sorted((compact[abs(l)] if l > 0 else -compact[abs(l)] for l in c), key=lambda l: (abs(l), l)))
        for c in clauses
    )
    return Normalized("reduced", CnfFormula(len(used), new_clauses), tuple(used), fixed, f.num_vars)


def literal_name(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


@dataclass(frozen=True)
class ReductionInstance:
    formula: CnfFormula
    set: VectorSet
    bound_k: int
    names: dict[Vector, str]
    vectors: dict[str, Vector]
    normalized: Normalized | None = field(default=None, compare=False)

    @property
    def num_vars(self) -> int:
        return self.formula.num_vars

    def literal_vector(self, lit: int) -> Vector:
        return self.vectors[literal_name(lit)]

    def index_of(self, name: str) -> int:
        return self.set.index(self.vectors[name])


def _check_reducible(f: CnfFormula) -> None:
    if f.num_vars < 1 or not f.clauses:
        raise ReductionError("trivial formula; use the normalization verdict instead")
    used = set()
    for c in f.clauses:
        vs = [abs(l) for l in c]
        if len(c) < 2 or len(set(vs)) != len(vs):
            raise ReductionError(f"clause {c} is not normalized (needs two distinct variables)")
        used.update(vs)
    if used != set(range(1, f.num_vars + 1)):
        raise ReductionError("every variable must occur in some clause")


def _coordinates(f: CnfFormula) -> dict[str, Vector]:
    n, m = f.num_vars, len(f.clauses)
    clause_sets = [set(c) for c in f.clauses]
    clause_vars = [{abs(l) for l in c} for c in f.clauses]

    def r_coord(i: int, role: str, arg: int) -> int:
        if role == "lit":
            return 1 if abs(arg) == i else 3
        if role == "r":
            return 0 if arg == i else 4
        if role == "c":
            return 2 if i in clause_vars[arg] else 4
        return 2  # s, t

    def c_coord(j: int, role: str, arg: int) -> int:
        if role == "lit":
            return 1 if arg in clause_sets[j] else 3
        if role == "r":
            return 2 if arg in clause_vars[j] else 4
        if role == "c":
            if arg == j:
                return 0
            return 2 if clause_sets[j] & clause_sets[arg] else 4
        return 2  # s, t

    def s_coord(role: str) -> int:
        return {"lit": 1, "s": 0}.get(role, 2)

    def vector(role: str, arg: int = 0) -> Vector:
        return (
            tuple(r_coord(i, role, arg) for i in range(1, n + 1))
            + tuple(c_coord(j, role, arg) for j in range(m))
            + (s_coord(role),)
        )

    out: dict[str, Vector] = {}
    for i in range(1, n + 1):
        out[literal_name(i)] = vector("lit", i)
        out[literal_name(-i)] = vector("lit", -i)
    for i in range(1, n + 1):
        out[f"r{i}"] = vector("r", i)
    for j in range(m):
        out[f"c{j + 1}"] = vector("c", j)
    out["s"] = vector("s")
    out["t"] = vector("t")
    return out


def reduce_3sat(f: CnfFormula | Normalized) -> ReductionInstance:
    normalized = None
    if isinstance(f, Normalized):
        if f.verdict != "reduced":
            raise ReductionError(f"formula is trivially {f.verdict}; nothing to reduce")
        normalized, f = f, f.formula
    _check_reducible(f)
    vectors = _coordinates(f)
    s = VectorSet(vectors.values())
    k = 5 * f.num_vars + sum(len(c) for c in f.clauses)
    names = {v: name for name, v in vectors.items()}
    return ReductionInstance(f, s, k, names, vectors, normalized)


def _literals(n: int) -> list[int]:
    return [lit for i in range(1, n + 1) for lit in (i, -i)]


def _base_edges(inst: ReductionInstance) -> list[tuple[str, str]]:
    n = inst.num_vars
    edges = []
    for i in range(1, n + 1):
        edges += [(f"r{i}", literal_name(i)), (f"r{i}", literal_name(-i))]
    for j, c in enumerate(inst.formula.clauses, 1):
        edges += [(f"c{j}", literal_name(l)) for l in c]
    edges += [("s", literal_name(l)) for l in _literals(n)]
    return edges


def _realization(inst: ReductionInstance, named_edges: list[tuple[str, str]]) -> Realization:
    edges = [(inst.index_of(a), inst.index_of(b)) for a, b in named_edges]
    return Realization(LabeledGraph(inst.set, edges), zero_landmarks(inst.set))


def witness_graph_g0(inst: ReductionInstance) -> Realization:
    """The bipartite realization joining t to every literal (k + n edges)."""
    edges = _base_edges(inst) + [("t", literal_name(l)) for l in _literals(inst.num_vars)]
    return _realization(inst, edges)


def _compact(inst: ReductionInstance, assignment: Mapping[int, bool]) -> Assignment:
    if inst.normalized is None:
        return {i: bool(assignment[i]) for i in range(1, inst.num_vars + 1)}
    return {i: bool(assignment[orig]) for i, orig in enumerate(inst.normalized.var_map, 1)}


def satisfying_graph(inst: ReductionInstance, assignment: Mapping[int, bool]) -> Realization:
    """The k-edge realization joining t to the true literal of each variable.

    ``assignment`` is keyed by original variable numbers.
    """
    try:
        compact = _compact(inst, assignment)
    except KeyError as e:
        raise ReductionError(f"assignment misses variable {e.args[0]}") from None
    if not inst.formula.satisfied_by(compact):
        raise ReductionError("assignment does not satisfy the formula")
    true_lits = [i if compact[i] else -i for i in range(1, inst.num_vars + 1)]
    edges = _base_edges(inst) + [("t", literal_name(l)) for l in true_lits]
    return _realization(inst, edges)


def decode_assignment(inst: ReductionInstance, r: Realization) -> Assignment:
    """Read the assignment off t's neighbours in a realization within budget."""
    if r.vertices != inst.set:
        raise ReductionError("realization is over a different vector set")
    report = verify_realization(r.graph, r.landmarks, inst.set)
    if not report.ok:
        raise ReductionError(f"not a realization: {report}")
    if r.num_edges > inst.bound_k:
        raise ReductionError(f"{r.num_edges} edges exceeds the bound {inst.bound_k}")
    t = inst.index_of("t")
    nbrs = {inst.names[inst.set[j]] for j in r.graph.adjacency()[t]}
    compact: Assignment = {}
    for i in range(1, inst.num_vars + 1):
        pos, neg = literal_name(i) in nbrs, literal_name(-i) in nbrs
        if pos == neg:
            raise ReductionError(f"t must be adjacent to exactly one literal of x{i}")
        compact[i] = pos
    if not inst.formula.satisfied_by(compact):
        raise ReductionError("decoded assignment does not satisfy the formula")
    if inst.normalized is None:
        return compact
    return inst.normalized.expand(compact)


def brute_force_sat(f: CnfFormula) -> Assignment | None:
    """First satisfying assignment in truth-table order (False before True)."""
    if f.num_vars > MAX_BRUTE_FORCE_VARS:
        raise ValueError(f"brute force is limited to {MAX_BRUTE_FORCE_VARS} variables")
    for values in product((False, True), repeat=f.num_vars):
        a = dict(enumerate(values, 1))
        if f.satisfied_by(a):
            return a
    return None
