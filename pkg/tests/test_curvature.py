import pytest

from cubemill.complexes import CubicalComplex, SimplicialComplex
from cubemill.curvature import (
    check_npc,
    check_special,
    hyperplane_coordinate,
    hyperplanes,
    is_flag,
    mirror_carries_hyperplane_side,
)
from cubemill.fixtures import fixture, rose, simply_connected_names
from cubemill.folding import find_folding
from helpers import mirror_list


# ---------------------------------------------------------------------------
# flagness


def test_empty_triangle_is_not_flag():
    S = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    ok, witness = is_flag(S)
    assert not ok
    assert witness == (0, 1, 2)


def test_filled_triangle_is_flag():
    ok, witness = is_flag(SimplicialComplex([(0, 1, 2)]))
    assert ok and witness is None


def test_four_cycle_is_flag():
    S = SimplicialComplex([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert is_flag(S)[0]


def test_empty_tetrahedron_boundary_of_triangles_is_not_flag():
    S = SimplicialComplex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    ok, witness = is_flag(S)
    assert not ok
    assert witness == (0, 1, 2, 3)


# ---------------------------------------------------------------------------
# the link condition


def test_npc_on_fixtures():
    for name in ("sq1", "grid2", "book3", "cube1", "torus4", "gdelta2", "sphere"):
        assert check_npc(fixture(name).complex).ok, name


def test_npc_fails_on_three_squares_around_a_corner_of_a_cube_shape():
    # three squares pairwise sharing edges at one vertex, no filling cube:
    # the link is the empty triangle
    X = CubicalComplex.from_maximal_cells(
        [(0, 1, 2, 4), (0, 2, 3, 6), (0, 1, 3, 5)]
    )
    report = check_npc(X)
    assert not report.ok
    assert any(v.kind == "not-flag" for v in report.violations)


def test_npc_violation_payload():
    X = CubicalComplex.from_maximal_cells(
        [(0, 1, 2, 4), (0, 2, 3, 6), (0, 1, 3, 5)]
    )
    payload = check_npc(X).to_payload()
    assert payload["ok"] is False
    assert payload["violations"]


# ---------------------------------------------------------------------------
# hyperplanes


def test_cube_has_three_hyperplanes():
    X = fixture("cube1").complex
    hps = hyperplanes(X)
    assert len(hps) == 3
    for hp in hps:
        assert len(hp.edges) == 4
        assert len(hp.carriers) >= 1


def test_hyperplane_coordinates_unique_on_fixtures():
    for name in ("sq1", "grid2", "book3", "cube1", "torus4", "gdelta2", "sphere"):
        f = fixture(name)
        for hp in hyperplanes(f.complex):
            c = hyperplane_coordinate(f.complex, f.labels, hp)
            assert 0 <= c < f.complex.dim


def test_hyperplane_mixing_rejected():
    # an L of two squares folded with a single coordinate flip per class, then
    # fed labels that merge the classes across a corner
    X = rose(2)
    labels = find_folding(X)
    hps = hyperplanes(X)
    # rose(2) shares vertex 0 between its two squares; its two pages fold to
    # the same coordinates, classes stay pure
    for hp in hps:
        hyperplane_coordinate(X, labels, hp)
    # force a mix: relabel so one edge of a class flips the other coordinate
    bad = dict(labels)
    e = hps[0].edges[0]
    a, b = X.cells[e].corners
    bad[b] = tuple(reversed(bad[a]))
    with pytest.raises(ValueError):
        for hp in hyperplanes(X):
            hyperplane_coordinate(X, bad, hp)


# ---------------------------------------------------------------------------
# specialness


def test_fixtures_have_no_pathologies():
    for name in simply_connected_names():
        report = check_special(fixture(name).complex)
        assert report.ok, (name, report)


def test_torus_is_special_too():
    assert check_special(fixture("torus4").complex).ok


def test_self_osculation_detected():
    # two squares in a row share their middle edge's class; gluing a third
    # square's corner back to the far end makes two class edges meet at a
    # vertex without a common square
    X = CubicalComplex.from_maximal_cells(
        [(0, 1, 2, 3), (2, 3, 4, 5), (4, 5, 0, 6)]
    )
    report = check_special(X)
    assert not report.ok
    assert report.self_osculations or report.inter_osculations


def test_pathology_payload_shape():
    payload = check_special(fixture("sq1").complex).to_payload()
    assert payload == {
        "ok": True,
        "self_intersections": [],
        "self_osculations": [],
        "inter_osculations": [],
    }


# ---------------------------------------------------------------------------
# mirrors carrying hyperplane sides


def test_mirrors_carry_their_hyperplane_sides():
    for name in ("grid2", "book3", "cube1"):
        f = fixture(name)
        X = f.complex
        for hp in hyperplanes(X):
            coord = hyperplane_coordinate(X, f.labels, hp)
            for M in mirror_list(name):
                if M.coordinate != coord:
                    continue
                report = mirror_carries_hyperplane_side(X, f.labels, M, hp, M.side)
                assert report.consistent, (name, M.index, hp.index)
