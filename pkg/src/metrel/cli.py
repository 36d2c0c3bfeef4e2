"""Command-line front end and the text formats it reads and writes.

Vector-set file::

    # optional comments
    dim 2
    0 2
    1 1

Graph file: a vector-set section, a blank line, then one edge per line as
``0,2 -- 1,1``. Landmarks are implicit: the zero-coordinate vectors in
coordinate order.

Exit codes: 0 affirmative/ok, 1 negative answer, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterable, Sequence

from metrel.core import (
    DimensionError,
    GraphError,
    LabeledGraph,
    Realization,
    VectorSet,
    VectorSetError,
    format_vector,
    zero_landmarks,
)
from metrel.minimization import (
    DEFAULT_MAX_CANONICAL_EDGES,
    DEFAULT_MAX_VERTICES,
    LimitExceededError,
    bmetrel_decide,
    enumerate_minimal,
    is_uniquely_realizable,
    minimize_greedy,
    minimum_edges,
)
from metrel.realizability import NotRealizableError, canonical_realization, check_realizable
from metrel.satbridge import (
    DimacsError,
    ReductionError,
    decode_assignment,
    normalize_formula,
    parse_dimacs,
    reduce_3sat,
)
from metrel.trees import build_tree_realization, tree_realizable, uniquely_realizable_by_tree
from metrel.verification import verify_realization

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# formats


def _content_lines(lines: Iterable[str]):
    for lineno, raw in lines:
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _parse_set_lines(numbered: list[tuple[int, str]]) -> VectorSet:
    body = list(_content_lines(numbered))
    if not body:
        raise FormatError("missing 'dim <n>' line")
    lineno, first = body[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise FormatError(f"line {lineno}: expected 'dim <n>', got {first!r}")
    try:
        dim = int(parts[1])
    except ValueError:
        raise FormatError(f"line {lineno}: bad dimension {parts[1]!r}") from None
    if dim < 1:
        raise FormatError(f"line {lineno}: dimension must be positive")
    vectors = []
    for lineno, line in body[1:]:
        try:
            vec = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer entry in {line!r}") from None
        if len(vec) != dim:
            raise FormatError(f"line {lineno}: expected {dim} entries, got {len(vec)}")
        if any(c < 0 for c in vec):
            raise FormatError(f"line {lineno}: negative entry in {line!r}")
        vectors.append(vec)
    if not vectors:
        raise FormatError("vector set is empty")
    try:
        return VectorSet(vectors, dim=dim)
    except (VectorSetError, DimensionError) as e:
        raise FormatError(str(e)) from None


def parse_set(text: str) -> VectorSet:
    return _parse_set_lines(list(enumerate(text.splitlines(), 1)))


def format_set(s: VectorSet, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"dim {s.dim}")
    lines += [" ".join(map(str, v)) for v in s]
    return "\n".join(lines) + "\n"


def _parse_endpoint(tok: str, lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in tok.split(","))
    except ValueError:
        raise FormatError(f"line {lineno}: bad vertex {tok!r}") from None


def parse_graph(text: str) -> LabeledGraph:
    numbered = list(enumerate(text.splitlines(), 1))
    seen_dim = False
    split = len(numbered)
    for pos, (_, raw) in enumerate(numbered):
        line = raw.strip()
        if line.startswith("dim"):
            seen_dim = True
        elif not line and seen_dim:
            split = pos
            break
    s = _parse_set_lines(numbered[:split])
    edges = []
    for lineno, line in _content_lines(numbered[split:]):
        parts = line.split("--")
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'v1 -- v2', got {line!r}")
        x, y = (_parse_endpoint(p.strip(), lineno) for p in parts)
        for v in (x, y):
            if v not in s:
                raise FormatError(f"line {lineno}: {format_vector(v)} is not a listed vertex")
        if x == y:
            raise FormatError(f"line {lineno}: self-loop")
        edges.append((s.index(x), s.index(y)))
    return LabeledGraph(s, edges)


def format_graph(g: LabeledGraph, comments: Sequence[str] = ()) -> str:
    edge_lines = [
        f"{','.join(map(str, x))} -- {','.join(map(str, y))}" for x, y in g.vector_edges()
    ]
    return format_set(g.vertices, comments) + "\n" + "".join(line + "\n" for line in edge_lines)


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    """DOT text; landmark vertices (those with a zero entry) are double-circled."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i, v in enumerate(g.vertices):
        shape = "doublecircle" if 0 in v else "circle"
        lines.append(f'  v{i} [label="{format_vector(v)}", shape={shape}];')
    for a, b in g.sorted_edges():
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# command driver


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(message)


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise _InputError(f"cannot read {path}: {e.strerror}") from None


def _emit(out, text: str, path: str | None = None):
    if path:
        try:
            Path(path).write_text(text)
        except OSError as e:
            raise _InputError(f"cannot write {path}: {e.strerror}") from None
    else:
        out.write(text)


def _as_realization(g: LabeledGraph) -> Realization:
    return Realization(g, zero_landmarks(g.vertices))


def cmd_check(args, out) -> int:
    report = check_realizable(parse_set(_read(args.set)))
    if report.realizable:
        out.write("realizable\n")
        return EXIT_OK
    out.write("not realizable\n")
    for v in report.violations:
        out.write(f"{v}\n")
    if report.truncated:
        out.write("(more violations omitted)\n")
    return EXIT_NO


def cmd_canonical(args, out) -> int:
    r = canonical_realization(parse_set(_read(args.set)))
    _emit(out, format_graph(r.graph), args.output)
    return EXIT_OK


def cmd_minimize(args, out) -> int:
    r = minimize_greedy(parse_set(_read(args.set)), seed=args.seed)
    _emit(out, format_graph(r.graph, [f"minimal realization, seed {args.seed}, {r.num_edges} edges"]), args.output)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    found = enumerate_minimal(
        parse_set(_read(args.set)), max_vertices=args.max_vertices, max_canonical_edges=args.max_edges
    )
    out.write(f"{len(found)} minimal realizations\n")
    for k, r in enumerate(found, 1):
        out.write(f"\n# minimal realization {k}: {r.num_edges} edges\n")
        for x, y in r.graph.vector_edges():
            out.write(f"{','.join(map(str, x))} -- {','.join(map(str, y))}\n")
    return EXIT_OK


def cmd_minimum(args, out) -> int:
    s = parse_set(_read(args.set))
    if args.k is not None:
        if args.k < 0:
            raise _InputError("--k must be non-negative")
        yes = bmetrel_decide(s, args.k)
        out.write("yes\n" if yes else "no\n")
        return EXIT_OK if yes else EXIT_NO
    result = minimum_edges(s, workers=args.workers)
    out.write(f"{result.count}\n")
    text = format_graph(result.witness.graph, [f"minimum realization, {result.count} edges"])
    if args.output:
        _emit(out, text, args.output)
    else:
        out.write(text)
    return EXIT_OK


def cmd_unique(args, out) -> int:
    if is_uniquely_realizable(parse_set(_read(args.set))):
        out.write("unique\n")
        return EXIT_OK
    out.write("not unique\n")
    return EXIT_NO


def cmd_tree(args, out) -> int:
    s = parse_set(_read(args.set))
    report = tree_realizable(s)
    if not report:
        witness = " ".join(format_vector(v) for v in report.witness)
        out.write(f"not tree-realizable: condition {report.condition} fails at {witness}\n")
        return EXIT_NO
    out.write("tree-realizable\n")
    unique = uniquely_realizable_by_tree(s)
    out.write(f"unique realization: {'yes' if unique else 'no'}\n")
    if args.build:
        out.write(format_graph(build_tree_realization(s).graph))
    return EXIT_OK


def _instance_for(cnf_path: str):
    norm = normalize_formula(parse_dimacs(_read(cnf_path)))
    return norm, (reduce_3sat(norm) if norm.verdict == "reduced" else None)


def cmd_reduce(args, out) -> int:
    norm, inst = _instance_for(args.cnf)
    if inst is None:
        out.write(f"trivially-{norm.verdict}\n")
        return EXIT_OK if norm.verdict == "sat" else EXIT_NO
    comments = [f"bmetrel instance: k {inst.bound_k}"]
    comments += [f"role {name} {','.join(map(str, v))}" for name, v in inst.vectors.items()]
    text = format_set(inst.set, comments)
    if args.output:
        _emit(out, text, args.output)
        out.write(f"k {inst.bound_k}\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_decode(args, out) -> int:
    norm, inst = _instance_for(args.cnf)
    if inst is None:
        out.write(f"trivially-{norm.verdict}\n")
        return EXIT_OK if norm.verdict == "sat" else EXIT_NO
    g = parse_graph(_read(args.graph))
    if g.vertices != inst.set:
        out.write("graph vertex set differs from the reduction instance\n")
        return EXIT_NO
    report = verify_realization(g, zero_landmarks(g.vertices), g.vertices)
    if not report:
        out.write(f"not a realization: {report}\n")
        return EXIT_NO
    try:
        assignment = decode_assignment(inst, _as_realization(g))
    except ReductionError as e:
        out.write(f"{e}\n")
        return EXIT_NO
    out.write("v " + " ".join(str(v if val else -v) for v, val in assignment.items()) + " 0\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    s = parse_set(_read(args.set))
    g = parse_graph(_read(args.graph))
    if g.vertices != s:
        out.write("graph vertex set differs from the vector set\n")
        return EXIT_NO
    try:
        landmarks = zero_landmarks(s)
    except VectorSetError as e:
        out.write(f"{e}\n")
        return EXIT_NO
    report = verify_realization(g, landmarks, s)
    out.write(f"{report}\n")
    return EXIT_OK if report else EXIT_NO


def cmd_dot(args, out) -> int:
    _emit(out, to_dot(parse_graph(_read(args.graph))), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="metrel", description="Realizations of metric coordinate sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "report realizability conditions")
    sp.add_argument("set")
    sp = add("canonical", cmd_canonical, "print the canonical realization")
    sp.add_argument("set")
    sp.add_argument("-o", "--output")
    sp = add("minimize", cmd_minimize, "greedy minimal realization")
    sp.add_argument("set")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp = add("enumerate-minimal", cmd_enumerate, "all minimal realizations up to equivalence")
    sp.add_argument("set")
    sp.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    sp.add_argument("--max-edges", type=int, default=DEFAULT_MAX_CANONICAL_EDGES)
    sp = add("minimum", cmd_minimum, "minimum edge count and witness, or decide with --k")
    sp.add_argument("set")
    sp.add_argument("--k", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp = add("unique", cmd_unique, "decide unique realizability")
    sp.add_argument("set")
    sp = add("tree", cmd_tree, "decide realizability by a tree")
    sp.add_argument("set")
    sp.add_argument("--build", action="store_true")
    sp = add("reduce-sat", cmd_reduce, "emit the bounded realization instance of a 3SAT formula")
    sp.add_argument("cnf")
    sp.add_argument("-o", "--output")
    sp = add("decode-sat", cmd_decode, "read an assignment off a realization within the bound")
    sp.add_argument("cnf")
    sp.add_argument("graph")
    sp = add("verify", cmd_verify, "check that a graph realizes a set")
    sp.add_argument("set")
    sp.add_argument("graph")
    sp = add("dot", cmd_dot, "export a graph file as DOT")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output")
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (_InputError, FormatError, DimacsError) as e:
        err.write(f"metrel: error: {e}\n")
        return EXIT_INPUT
    except (NotRealizableError, LimitExceededError, ReductionError, GraphError, VectorSetError) as e:
        err.write(f"metrel: {e}\n")
        return EXIT_NO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
