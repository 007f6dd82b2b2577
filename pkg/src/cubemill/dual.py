"""The dual cubical complex of an admissible complex, with its height function.

Dual vertices are the cells of the source; the height of a dual vertex is the
dimension of its cell. Dual cubes are intervals of the face poset: the
interval from a vertex-cell to a top cell spans a maximal dual cube, and every
dual cell is an interval [a, b] of dimension dim(b) - dim(a). Structurally
the dual complex is the cubical subdivision, which is why it exists (and is
strictly embedded) even when the source has doubled cells.
"""

from dataclasses import dataclass, field

import networkx as nx

from .complexes import (
    CubicalComplex,
    SimplicialComplex,
    cubical_subdivision,
    link,
    verify_cw,
)
from .curvature import is_flag
from .errors import NotAdmissible, NotTopCell


@dataclass
class DualComplex:
    complex: CubicalComplex
    source: CubicalComplex
    heights: dict  # dual vertex id (= source cell id) -> dimension of that cell
    _graph: nx.Graph = field(default=None, repr=False, compare=False)
    _square_index: dict = field(default=None, repr=False, compare=False)

    def height(self, v):
        return self.heights[v]

    def skeleton(self):
        """The dual 1-skeleton as a simple graph, cached."""
        if self._graph is None:
            g = nx.Graph()
            g.add_nodes_from(self.complex.vertices)
            for cube in self.complex.cells.values():
                if cube.dim == 1:
                    g.add_edge(cube.corners[0], cube.corners[1])
            self._graph = g
        return self._graph

    def adjacent(self, u, v):
        return self.skeleton().has_edge(u, v)

    def neighbors(self, v):
        return sorted(self.skeleton().neighbors(v))

    def square_by_corners(self, corners):
        """The dual square with the given corner set, or None."""
        if self._square_index is None:
            idx = {}
            for cid, cube in self.complex.cells.items():
                if cube.dim == 2:
                    idx[frozenset(cube.corners)] = cid
            self._square_index = idx
        return self._square_index.get(frozenset(corners))

    def to_payload(self):
        return {
            "counts": {str(d): n for d, n in sorted(self.complex.counts().items())},
            "heights": {str(v): h for v, h in sorted(self.heights.items())},
        }


def build_dual(X):
    """The dual complex of an admissible cubical complex.

    Refuses inadmissible input: the dual's cells are poset intervals and the
    height axioms below are only meaningful over a complex whose cells meet
    along common faces.
    """
    rep = verify_cw(X)
    if not rep.ok:
        raise NotAdmissible(f"{len(rep.findings)} admissibility findings")
    D = cubical_subdivision(X)
    heights = {v: X.cells[v].dim for v in D.vertices}
    return DualComplex(D, X, heights)


def dual_tile(D, top):
    """All dual cells lying over faces of the given source top cell.

    A dual cell [a, b] belongs to the tile of ``top`` exactly when b is a face
    of ``top``, equivalently when every corner of the dual cell is one.
    """
    tops = set(D.source.top_cells())
    if top not in tops:
        raise NotTopCell(f"cell {top} is not a top cell of the source")
    sub = D.source.subcells(top)
    return frozenset(
        cid
        for cid, cube in D.complex.cells.items()
        if set(cube.corners) <= sub
    )


def tops_containing(D, dual_vertices):
    """Source top cells whose tile contains every one of the dual vertices."""
    vs = set(dual_vertices)
    out = []
    for t in D.source.top_cells():
        if vs <= D.source.subcells(t):
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class DualReport:
    checks: tuple  # (name, status, detail)

    @property
    def ok(self):
        return all(status != "fail" for (_n, status, _d) in self.checks)

    def to_payload(self):
        return {
            "ok": self.ok,
            "checks": [
                {"name": n, "status": s, "detail": d} for (n, s, d) in self.checks
            ],
        }


def verify_dual_axioms(D):
    """Exhaustively check the height axioms of a dual complex.

    Edges change height by one; squares carry heights h, h+1, h+1, h+2 with
    the extremes on one diagonal; every cube is a poset interval with a unique
    lowest and highest corner; vertex links are flag with flag ascending and
    descending full sublinks; and every 4-cycle of the skeleton with a unique
    height minimum and maximum spans a stored square.
    """
    X = D.complex
    h = D.heights
    checks = []

    bad = [
        cube.cid
        for cube in X.cells.values()
        if cube.dim == 1 and abs(h[cube.corners[0]] - h[cube.corners[1]]) != 1
    ]
    checks.append(_verdict("edge-heights", bad))

    bad = []
    for cube in X.cells.values():
        if cube.dim != 2:
            continue
        c = cube.corners
        d1 = sorted((h[c[0]], h[c[3]]))
        d2 = sorted((h[c[1]], h[c[2]]))
        flat, split = (d1, d2) if d1[0] == d1[1] else (d2, d1)
        if flat[0] != flat[1] or split != [flat[0] - 1, flat[0] + 1]:
            bad.append(cube.cid)
    checks.append(_verdict("square-heights", bad))

    bad = []
    for cube in X.cells.values():
        k = cube.dim
        lows = [v for v in cube.corners if h[v] == min(h[u] for u in cube.corners)]
        highs = [v for v in cube.corners if h[v] == max(h[u] for u in cube.corners)]
        if len(lows) != 1 or len(highs) != 1:
            bad.append(cube.cid)
            continue
        lo, hi = lows[0], highs[0]
        if h[hi] - h[lo] != k:
            bad.append(cube.cid)
            continue
        sub_hi = D.source.subcells(hi)
        for v in cube.corners:
            if v not in sub_hi or lo not in D.source.subcells(v):
                bad.append(cube.cid)
                break
    checks.append(_verdict("cube-intervals", bad))

    bad_links = []
    bad_sublinks = []
    for v in sorted(X.vertices):
        lk = link(X, v)
        if lk.bigons:
            bad_links.append(v)
            continue
        flag_ok, _w = is_flag(lk.complex)
        if not flag_ok:
            bad_links.append(v)
        other = {e: _other_end(X, e, v) for e in lk.complex.vertices}
        up = {e for e, w in other.items() if h[w] > h[v]}
        down = {e for e in lk.complex.vertices if e not in up}
        for side in (up, down):
            sub = [f for f in lk.complex.faces if f <= side]
            if sub and not is_flag(SimplicialComplex(sub))[0]:
                bad_sublinks.append(v)
                break
    checks.append(_verdict("links-flag", bad_links))
    checks.append(_verdict("sublinks-flag", bad_sublinks))

    g = D.skeleton()
    bad = []
    for w in sorted(X.vertices):
        down_w = [u for u in g.neighbors(w) if h[u] == h[w] - 1]
        for i in range(len(down_w)):
            for j in range(i + 1, len(down_w)):
                a, b = down_w[i], down_w[j]
                commons = [
                    u
                    for u in set(g.neighbors(a)) & set(g.neighbors(b))
                    if h[u] == h[w] - 2
                ]
                for u in commons:
                    if D.square_by_corners({u, a, b, w}) is None:
                        bad.append((u, a, b, w))
    checks.append(_verdict("interval-complete", bad))

    return DualReport(tuple(checks))


def _verdict(name, bad):
    if not bad:
        return (name, "pass", "")
    return (name, "fail", f"{len(bad)} violations, first {sorted(bad)[:3]}")


def _other_end(X, edge_cid, v):
    a, b = X.cells[edge_cid].corners
    if a == v:
        return b
    if b == v:
        return a
    return None


# ---------------------------------------------------------------------------
# mirrors on the dual side


@dataclass(frozen=True)
class DualMirror:
    mirror: object  # the source Mirror
    vertices: frozenset  # dual vertices over mirror cells
    cells: frozenset  # dual cells of the full subcomplex over the mirror
    components: tuple  # complement components (frozensets of dual vertices)
    component_of: dict  # complement dual vertex -> component index

    def region_contains(self, v):
        return v in self.vertices


def dual_mirror(D, M):
    """The full dual subcomplex over a mirror and its complement components.

    Complement components are taken in the cover graph: dual vertices outside
    the mirror region, joined by dual edges with both ends outside.
    """
    verts = frozenset(v for v in D.complex.vertices if v in M.cells)
    cells = frozenset(
        cid
        for cid, cube in D.complex.cells.items()
        if set(cube.corners) <= verts
    )
    g = nx.Graph()
    outside = [v for v in D.complex.vertices if v not in verts]
    g.add_nodes_from(outside)
    for cube in D.complex.cells.values():
        if cube.dim == 1:
            a, b = cube.corners
            if a not in verts and b not in verts:
                g.add_edge(a, b)
    comps = sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])
    components = tuple(frozenset(c) for c in comps)
    component_of = {}
    for i, comp in enumerate(components):
        for v in comp:
            component_of[v] = i
    return DualMirror(M, verts, cells, components, component_of)
