import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metrel import (
    VectorSet,
    build_tree_realization,
    canonical_realization,
    enumerate_minimal,
    is_uniquely_realizable,
    project_to_canonical,
    split_strata,
    tree_realizable,
    uniquely_realizable_by_tree,
    verify_realization,
)
from metrel.realizability import NotRealizableError
from metrel.trees import NotTreeRealizableError, is_tree

from conftest import STAR, TREE5, TREE6
from oracles import random_realizable


def test_strata_tree5(tree5):
    st_ = split_strata(tree5)
    assert st_.s1 == {(2, 3), (3, 2)}
    assert st_.s0 == {(0, 3), (1, 2), (2, 1), (3, 0)}
    assert st_.s0_star == {(1, 2), (2, 1)}


def test_strata_tree6(tree6):
    assert split_strata(tree6).s0_star == {(1, 3), (3, 1)}


def test_strata_singleton():
    st_ = split_strata(VectorSet([(0,)]))
    assert st_.s0 == {(0,)} and not st_.s1 and not st_.s0_star


def test_tree_realizable_examples(tree5, tree6, star):
    assert tree_realizable(tree5)
    assert tree_realizable(tree6)
    report = tree_realizable(star)
    assert not report and report.condition == "i"
    x, y = report.witness
    assert any(a == b for a, b in zip(x, y))
    with pytest.raises(NotRealizableError):
        tree_realizable(VectorSet([(0, 2), (2, 0)]))


def test_build_tree5(tree5):
    t = build_tree_realization(tree5)
    expected = {
        ((0, 3), (1, 2)), ((1, 2), (2, 1)), ((2, 1), (3, 0)),
        ((1, 2), (2, 3)), ((2, 1), (3, 2)),
    }
    assert set(t.graph.vector_edges()) == expected
    assert is_tree(t.graph)


def test_build_path():
    t = build_tree_realization(VectorSet([(0,), (1,), (2,)]))
    assert set(t.graph.vector_edges()) == {((0,), (1,)), ((1,), (2,))}


def test_build_tree6_is_canonical(tree6):
    t = build_tree_realization(tree6)
    assert t.num_edges == 6
    assert t.edges == canonical_realization(tree6).edges


def test_build_rejects_non_tree(star):
    with pytest.raises(NotTreeRealizableError):
        build_tree_realization(star)
    with pytest.raises(NotTreeRealizableError):
        uniquely_realizable_by_tree(star)


def test_unique_by_tree(tree5, tree6):
    assert uniquely_realizable_by_tree(tree6)
    assert not uniquely_realizable_by_tree(tree5)
    assert uniquely_realizable_by_tree(VectorSet([(0,), (1,)]))


def _check_tree_structure(t):
    s = t.vertices
    strata = split_strata(s)
    g = nx.Graph(t.graph.vector_edges())
    g.add_nodes_from(s)
    landmarks = set(t.landmark_vectors())
    sub = g.subgraph(strata.s0)
    assert nx.is_tree(sub)
    assert all(v in landmarks for v in sub if sub.degree(v) <= 1 and len(sub) > 1)
    on_paths = set(landmarks)
    for a in landmarks:
        for b in landmarks:
            if a != b:
                on_paths.update(nx.shortest_path(g, a, b))
    assert on_paths == set(strata.s0)
    for x, y in t.graph.vector_edges():
        assert all((a - b) % 2 == 1 for a, b in zip(x, y))


@pytest.mark.parametrize("vectors", [TREE5, TREE6, [(0,), (1,), (2,)]])
def test_tree_structure(vectors):
    _check_tree_structure(build_tree_realization(VectorSet(vectors)))


def _random_tree_set(rng):
    n = rng.randint(2, 10)
    tree = nx.random_labeled_tree(n, seed=rng.randrange(2**32))
    leaves = [v for v in tree if tree.degree(v) == 1]
    w = rng.sample(leaves, rng.randint(1, min(3, len(leaves))))
    try:
        return project_to_canonical(tree, w).vertices
    except ValueError:
        return None


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_random_tree_sets(rnd):
    s = _random_tree_set(random.Random(rnd.random()))
    if s is None:
        return
    assert tree_realizable(s)
    t = build_tree_realization(s)
    assert verify_realization(t.graph, t.landmarks, s).ok and is_tree(t.graph)
    _check_tree_structure(t)
    trees = [r for r in enumerate_minimal(s, max_canonical_edges=40) if is_tree(r.graph)]
    assert [r.edges for r in trees] == [t.edges]
    if uniquely_realizable_by_tree(s):
        assert is_uniquely_realizable(s)
        assert is_tree(canonical_realization(s).graph)
    else:
        assert not is_tree(canonical_realization(s).graph)


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_tree_realizable_agrees_with_enumeration(rnd):
    s = VectorSet(random_realizable(random.Random(rnd.random()), max_vertices=9))
    has_tree = any(is_tree(r.graph) for r in enumerate_minimal(s, max_canonical_edges=40))
    assert bool(tree_realizable(s)) == has_tree
