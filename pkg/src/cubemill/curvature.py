"""Curvature and hyperplane hygiene for cubical complexes.

Nonpositive curvature is the Gromov link condition: every vertex link is a
flag simplicial complex. Links that fail to be simplicial (doubled simplices
from two cells inducing the same edge set) are reported alongside flag
failures. Hyperplanes are parallelism classes of edges under square
opposition; the specialness check reports self-intersections,
self-osculations and inter-osculations.
"""

from dataclasses import dataclass

import networkx as nx

from .complexes import SimplicialComplex, all_links, name_key
from .folding import _DSU, _label_of


def is_flag(S):
    """(True, None) when every clique of the 1-skeleton spans a simplex;
    otherwise (False, witness) with a least non-spanning clique.

    Cliques are enumerated in increasing size so the witness is minimal;
    among minimal failures the lexicographically least vertex set is chosen.
    """
    if not isinstance(S, SimplicialComplex):
        raise TypeError("expected a simplicial complex")
    g = S.skeleton_graph()
    failures = []
    failing_size = None
    for clique in nx.enumerate_all_cliques(g):
        if len(clique) < 3:
            continue
        if failing_size is not None and len(clique) > failing_size:
            break
        if frozenset(clique) not in S.faces:
            failing_size = len(clique)
            failures.append(tuple(sorted(clique, key=name_key)))
    if not failures:
        return True, None
    return False, min(failures, key=name_key)


@dataclass(frozen=True)
class NpcViolation:
    vertex: int
    kind: str  # bigon | not-flag
    detail: tuple


@dataclass(frozen=True)
class NpcReport:
    violations: tuple

    @property
    def ok(self):
        return not self.violations

    def to_payload(self):
        return {
            "ok": self.ok,
            "violations": [
                {"vertex": v.vertex, "kind": v.kind, "detail": list(v.detail)}
                for v in self.violations
            ],
        }


def check_npc(X):
    """Gromov link condition: every vertex link simplicial and flag."""
    violations = []
    for lk in all_links(X):
        for pair in lk.bigons:
            violations.append(NpcViolation(lk.vertex, "bigon", pair))
        ok, witness = is_flag(lk.complex)
        if not ok:
            violations.append(NpcViolation(lk.vertex, "not-flag", witness))
    return NpcReport(tuple(violations))


# ---------------------------------------------------------------------------
# hyperplanes


@dataclass(frozen=True)
class Hyperplane:
    index: int
    edges: tuple  # sorted edge cell ids
    carriers: tuple  # sorted ids of cells of dim >= 2 containing a class edge

    def to_payload(self):
        return {"index": self.index, "edges": list(self.edges), "carriers": list(self.carriers)}


def hyperplanes(X):
    """Edge classes under square opposition, with their carrier cells."""
    dsu = _DSU(X.by_dim.get(1, []))
    for sq in X.by_dim.get(2, []):
        f = X.cells[sq].facets
        dsu.union(f[0], f[1])
        dsu.union(f[2], f[3])
    classes = {}
    for e in X.by_dim.get(1, []):
        classes.setdefault(dsu.find(e), []).append(e)
    out = []
    for idx, root in enumerate(sorted(classes)):
        edges = tuple(sorted(classes[root]))
        eset = set(edges)
        carriers = sorted(
            cid
            for cid in X.cells
            if X.cells[cid].dim >= 2 and any(f in eset for f in X.subcells(cid))
        )
        out.append(Hyperplane(idx, edges, tuple(carriers)))
    return out


def hyperplane_coordinate(X, labels, hp):
    """The single folding coordinate flipped by every edge of the hyperplane.

    Returns the coordinate index; raises ValueError when the class mixes
    coordinates (that would contradict the folding).
    """
    n = X.dim
    coords = set()
    for e in hp.edges:
        a, b = (
            _label_of(labels, v, n) for v in X.cells[e].corners
        )
        diff = [i for i in range(n) if a[i] != b[i]]
        if len(diff) != 1:
            raise ValueError(f"edge {e} flips {len(diff)} coordinates")
        coords.add(diff[0])
    if len(coords) != 1:
        raise ValueError(f"hyperplane mixes folding coordinates {sorted(coords)}")
    return coords.pop()


# ---------------------------------------------------------------------------
# specialness


@dataclass(frozen=True)
class PathologyReport:
    self_intersections: tuple  # (hyperplane index, square id)
    self_osculations: tuple  # (hyperplane index, vertex, edge, edge)
    inter_osculations: tuple  # (h1, h2, crossing square, vertex, edge, edge)

    @property
    def ok(self):
        return not (self.self_intersections or self.self_osculations or self.inter_osculations)

    def to_payload(self):
        return {
            "ok": self.ok,
            "self_intersections": [list(x) for x in self.self_intersections],
            "self_osculations": [list(x) for x in self.self_osculations],
            "inter_osculations": [list(x) for x in self.inter_osculations],
        }


def check_special(X):
    """Detect hyperplane pathologies.

    Self-intersection: one hyperplane carries both opposition pairs of a
    square. Self-osculation: two distinct edges of one hyperplane share a
    vertex without a common square. Inter-osculation: two hyperplanes both
    cross a common square and osculate at a vertex.
    """
    hps = hyperplanes(X)
    hp_of = {}
    for hp in hps:
        for e in hp.edges:
            hp_of[e] = hp.index

    self_int = []
    crossing_pairs = {}
    for sq in X.by_dim.get(2, []):
        f = X.cells[sq].facets
        h_a = hp_of[f[0]]
        h_b = hp_of[f[2]]
        if h_a == h_b:
            self_int.append((h_a, sq))
        else:
            crossing_pairs.setdefault(tuple(sorted((h_a, h_b))), sq)

    # osculation: same-vertex edge pairs with no common square
    self_osc = []
    inter_osc_candidates = {}
    for v in X.vertices:
        edges_at = [c for c in X.cells_at_vertex[v] if X.cells[c].dim == 1]
        for i in range(len(edges_at)):
            for j in range(i + 1, len(edges_at)):
                e, e2 = edges_at[i], edges_at[j]
                sq_e = {p for (p, _, _) in X.cofaces[e]}
                sq_e2 = {p for (p, _, _) in X.cofaces[e2]}
                if sq_e & sq_e2:
                    continue
                if hp_of[e] == hp_of[e2]:
                    self_osc.append((hp_of[e], v, e, e2))
                else:
                    key = tuple(sorted((hp_of[e], hp_of[e2])))
                    inter_osc_candidates.setdefault(key, (v, e, e2))

    inter = []
    for key in sorted(inter_osc_candidates):
        if key in crossing_pairs:
            v, e, e2 = inter_osc_candidates[key]
            inter.append((key[0], key[1], crossing_pairs[key], v, e, e2))

    return PathologyReport(
        tuple(sorted(self_int)), tuple(sorted(self_osc)), tuple(sorted(inter))
    )


# ---------------------------------------------------------------------------
# mirrors versus hyperplane sides


@dataclass(frozen=True)
class CarryReport:
    carried: bool
    consistent: bool
    side_faces: tuple


def mirror_carries_hyperplane_side(X, labels, mirror, hp, side):
    """Does the mirror contain the side-``side`` faces of the hyperplane's carrier?

    For each carrier cube the side face is the facet whose corners all fold to
    ``side`` in the hyperplane's coordinate. Containment is all-or-nothing for
    a genuine mirror; ``consistent`` reports that, and ``carried`` is true when
    every side face lies in the mirror (vacuously true when there are none).
    """
    n = X.dim
    coord = hyperplane_coordinate(X, labels, hp)
    lab = {v: _label_of(labels, v, n) for v in X.vertices}
    side_faces = set()
    for cid in hp.carriers:
        cube = X.cells[cid]
        # the cube coordinate that flips the folding coordinate of the class
        jflip = None
        for j in range(cube.dim):
            a = lab[cube.corners[0]]
            b = lab[cube.corners[1 << j]]
            if a[coord] != b[coord]:
                jflip = j
                break
        if jflip is None:
            continue
        base = lab[cube.corners[0]][coord]
        s = 0 if base == side else 1
        side_faces.add(cube.facets[2 * jflip + s])
    inside = side_faces & mirror.cells
    consistent = not inside or side_faces <= mirror.cells
    carried = not side_faces or side_faces <= mirror.cells
    return CarryReport(carried, consistent, tuple(sorted(side_faces)))
