import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cubemill.complexes import graph_complex
from cubemill.errors import NotFoldable, UnlabeledVertex
from cubemill.fixtures import fixture, grid3, rose, strip, tube
from cubemill.folding import (
    assert_folding,
    find_folding,
    framings,
    mirror_separates,
    mirrors,
    parallelism_classes,
    verify_folding,
)
from helpers import mirror_list


# ---------------------------------------------------------------------------
# verification


def test_fixture_labels_are_foldings():
    for name in ("sq1", "grid2", "book3", "cube1", "torus4", "gdelta2", "sphere"):
        f = fixture(name)
        assert verify_folding(f.complex, f.labels) is None, name


def test_folding_rejects_equal_endpoint_labels():
    X = fixture("sq1").complex
    labels = {v: (0, 0) for v in X.vertices}
    ob = verify_folding(X, labels)
    assert ob is not None and ob.kind == "edge"
    with pytest.raises(NotFoldable):
        assert_folding(X, labels)


def test_folding_rejects_non_injective_square():
    # opposite corners may not collide on the target square
    X = fixture("sq1").complex
    a = X.cells[0].corners[0]
    b = X.cells[3].corners[0]
    labels = {a: (0, 0), b: (0, 0)}
    for v in X.vertices:
        labels.setdefault(v, (0, 1) if v % 2 else (1, 0))
    assert verify_folding(X, labels) is not None


def test_missing_label_raises():
    X = fixture("sq1").complex
    with pytest.raises(UnlabeledVertex):
        verify_folding(X, {})


def test_wrong_length_label_raises():
    X = fixture("sq1").complex
    with pytest.raises(UnlabeledVertex):
        verify_folding(X, {v: (0,) for v in X.vertices})


# ---------------------------------------------------------------------------
# search


def test_find_folding_on_fixtures_matches_verifier():
    for name in ("sq1", "grid2", "book3", "cube1", "torus4"):
        X = fixture(name).complex
        labels = find_folding(X)
        assert verify_folding(X, labels) is None, name


def test_find_folding_graph_iff_bipartite():
    rng = random.Random(1405)
    for trial in range(60):
        n = rng.randint(2, 18)
        p = rng.uniform(0.1, 0.5)
        g = nx.gnp_random_graph(n, p, seed=rng.randint(0, 10**9))
        if not g.edges:
            continue
        X = graph_complex(g.edges)
        if nx.is_bipartite(g):
            assert verify_folding(X, find_folding(X)) is None
        else:
            with pytest.raises(NotFoldable):
                find_folding(X)


def test_find_folding_least_vertex_gets_zero_label():
    X = fixture("grid2").complex
    labels = find_folding(X)
    assert labels[min(X.vertices)] == (0, 0)


def test_rose_foldable_iff_even():
    for m in range(2, 9):
        X = rose(m)
        if m % 2 == 0:
            assert verify_folding(X, find_folding(X)) is None, m
        else:
            with pytest.raises(NotFoldable):
                find_folding(X)


def test_tube_never_foldable():
    for length in (1, 2, 3, 4):
        with pytest.raises(NotFoldable):
            find_folding(tube(length))


def test_strip_foldable():
    X = strip(3)
    assert verify_folding(X, find_folding(X)) is None


def test_zero_dimensional_complex_folds_trivially():
    X = graph_complex([], isolated=(0, 1, 2))
    assert find_folding(X) == {v: () for v in X.vertices}


@given(st.integers(3, 9), st.booleans())
def test_cycle_foldable_iff_even(n, shift):
    edges = [(i, (i + 1) % n) for i in range(n)]
    X = graph_complex(edges)
    if n % 2 == 0:
        assert verify_folding(X, find_folding(X)) is None
    else:
        with pytest.raises(NotFoldable):
            find_folding(X)


# ---------------------------------------------------------------------------
# parallelism classes


def test_parallelism_classes_of_grid():
    # opposition merges along each row and column but never across them
    X = fixture("grid2").complex
    classes = parallelism_classes(X)
    assert sorted(len(es) for es in classes.values()) == [3, 3, 3, 3]


def test_parallelism_classes_of_book():
    # the spine merges with every page's outer edge; each page's two side
    # edges pair up on their own
    X = fixture("book3").complex
    classes = parallelism_classes(X)
    assert sorted(len(es) for es in classes.values()) == [2, 2, 2, 4]


# ---------------------------------------------------------------------------
# mirrors


def test_grid2_mirror_shapes():
    ml = mirror_list("grid2")
    assert [(M.index, M.coordinate, M.side) for M in ml] == [
        (0, 0, 0),
        (1, 0, 0),
        (2, 0, 1),
        (3, 1, 0),
        (4, 1, 0),
        (5, 1, 1),
    ]
    X = fixture("grid2").complex
    for M in ml:
        # three vertical or horizontal lines: 3 vertices + 2 edges each
        dims = sorted(X.cells[c].dim for c in M.cells)
        assert dims == [0, 0, 0, 1, 1]


def test_book3_mirror_shapes():
    ml = mirror_list("book3")
    assert [(M.index, M.coordinate, M.side) for M in ml] == [
        (0, 0, 0),
        (1, 0, 1),
        (2, 1, 0),
        (3, 1, 1),
        (4, 1, 1),
        (5, 1, 1),
    ]


def test_mirrors_are_disjoint_per_side():
    for name in ("grid2", "book3", "cube1", "torus4"):
        ml = mirror_list(name)
        seen = {}
        for M in ml:
            key = (M.coordinate, M.side)
            for c in M.cells:
                assert (key, c) not in seen
                seen[(key, c)] = M.index


def test_framings_exist_on_interior_mirrors():
    X = fixture("grid2").complex
    for M in mirror_list("grid2"):
        fr = framings(X, M)
        interior = any(
            X.cells[c].dim == 1 and len(X.cofaces[c]) == 2 for c in M.cells
        )
        if interior:
            assert fr
        for sigma, (c1, c2) in fr:
            assert c1 < c2
            assert sigma in M.cells


def test_mirror_separation_on_grid():
    X = fixture("grid2").complex
    for M in mirror_list("grid2"):
        rep = mirror_separates(X, M)
        assert rep.separates
        # middle lines cut the grid in two; boundary lines leave one side
        interior = all(
            len(X.cofaces[c]) == 2 for c in M.cells if X.cells[c].dim == 1
        )
        assert rep.n_components == (2 if interior else 1)


def test_book3_spine_three_components():
    X = fixture("book3").complex
    (spine,) = [M for M in mirror_list("book3") if (M.coordinate, M.side) == (1, 0)]
    rep = mirror_separates(X, spine)
    assert rep.separates
    assert rep.n_components == 3
    assert rep.framing_count == len(framings(X, spine))


def test_torus_mirrors_do_not_separate():
    X = fixture("torus4").complex
    for M in mirror_list("torus4"):
        assert not mirror_separates(X, M).separates


def test_parallel_lines_are_separate_mirrors():
    # a 3x3 grid folds with period 2, so each side's preimage is two parallel
    # lines; they are distinct mirrors, never one disconnected pseudo-mirror
    X, labels = grid3()
    assert verify_folding(X, labels) is None
    ml = mirrors(X, labels)
    assert len(ml) == 8
    per_side = {}
    for M in ml:
        per_side.setdefault((M.coordinate, M.side), []).append(M)
    for group in per_side.values():
        assert len(group) == 2
        a, b = group
        assert not (a.cells & b.cells)
    for M in ml:
        # every mirror is a line of 4 vertices and 3 edges
        dims = sorted(X.cells[c].dim for c in M.cells)
        assert dims == [0, 0, 0, 0, 1, 1, 1]
