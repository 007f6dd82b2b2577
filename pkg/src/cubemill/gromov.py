"""Hyperbolization of simplicial complexes by cylinder models.

Every folded n-simplex is replaced by a copy of a fixed model complex; copies
are glued along boundary strata purely by name equality. The model of
dimension m is built recursively:

* dimension 0: a point, dimension 1: an edge;
* dimension m >= 2: let B_m be the hyperbolized barycentric subdivision of
  the boundary of the m-simplex (itself an assembly of (m-1)-models). The
  label swap 0 <-> 1 induces an involution sigma of B_m whose fixed cells are
  those with componentwise invariant chains. B_m splits as U union sigma(U)
  with intersection Fix (a closed half, extracted as the incidence component
  of the vertex over the face {0}, plus Fix); the model is the cylinder
  B_m x [-1,1] with (u,1) glued to (u,-1) for u in U. Its boundary is the
  double of sigma(U) along Fix, again a copy of B_m, and boundary cells are
  named by B_m cells directly, which is what makes assembly gluing by name
  sound.

The construction keeps the halving property as runtime assertions: if the
complement of the fixed locus ever fails to split into two swapped halves,
the build aborts rather than producing a wrong complex.
"""

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .complexes import (
    CubicalComplex,
    SimplicialComplex,
    barsub,
    name_key,
    verify_cw,
)
from .errors import NotFoldable, UnsupportedDimension
from .folding import canonical_barsub_folding, verify_folding, verify_simplicial_folding

MAX_MODEL_DIM = 3


@dataclass(frozen=True)
class Model:
    m: int
    cells: dict  # name -> (corner names bitmask order, facet names (axis, side) order)
    boundary: dict  # boundary cell name -> (face label frozenset, strat name)
    folding: dict  # vertex name -> m-bit tuple


@dataclass(frozen=True)
class Assembly:
    cells: dict  # name -> (corners, facets)
    folding: dict  # vertex name -> bit tuple
    tiles: dict  # source top simplex -> tuple of cell names
    provenance: dict  # name -> source face (frozenset of source vertices)


def boundary_complex(m):
    """The boundary of the m-simplex on vertex set 0..m."""
    return SimplicialComplex(combinations(range(m + 1), m))


def assemble(K, labels):
    """Glue one model copy per maximal face of the folded complex ``K``.

    ``labels`` must be a simplicial folding: every maximal face carries each
    of the labels 0..dim exactly once. Interior model cells of the copy over
    face ``s`` are named ("i", s, cell); boundary cells over the subface with
    label set F are shared between copies and named ("f", subface, strat).
    A collision assertion guards the gluing: equal names must carry equal
    local structure.
    """
    err = verify_simplicial_folding(K, labels)
    if err is not None:
        raise NotFoldable(err)
    n = K.dim
    mdl = model(n)
    cells = {}
    folding = {}
    tiles = {}
    provenance = {}
    for s in sorted(K.maximal, key=name_key):
        by_label = {labels[v]: v for v in s}

        def glue(x, _by_label=by_label, _s=s):
            entry = mdl.boundary.get(x)
            if entry is None:
                return ("i", _s, x)
            face, y = entry
            tau = frozenset(_by_label[j] for j in face)
            return ("f", tau, y)

        names = []
        for x in sorted(mdl.cells, key=name_key):
            co, fa = mdl.cells[x]
            nm = glue(x)
            names.append(nm)
            entry = (tuple(glue(c) for c in co), tuple(glue(f) for f in fa))
            if nm in cells:
                if cells[nm] != entry:
                    raise AssertionError(f"gluing collision at {nm!r}")
            else:
                cells[nm] = entry
                provenance[nm] = s if nm[0] == "i" else nm[1]
                if len(entry[0]) == 1:
                    src = x if nm[0] == "i" else ("b", nm[2])
                    folding[nm] = mdl.folding[src]
        tiles[s] = tuple(sorted(names, key=name_key))
    return Assembly(cells, folding, tiles, provenance)


# ---------------------------------------------------------------------------
# the recursive models

_models = {}


def _swap_subset(S):
    table = {0: 1, 1: 0}
    return frozenset(table.get(x, x) for x in S)


def _swap_chain(chain):
    return frozenset(_swap_subset(S) for S in chain)


def _sigma_name(name):
    kind = name[0]
    if kind in ("i", "f"):
        return (kind, _swap_chain(name[1]), name[2])
    raise AssertionError(f"unexpected cell name {name!r}")


def _face_label(name):
    # the open face of the target simplex a B_m cell sits over: the largest
    # subset in its chain
    return max(name[1], key=len)


def _extract_half(cells):
    """Split B_m as U union sigma(U) with intersection Fix, or abort."""
    sigma = {nm: _sigma_name(nm) for nm in cells}
    for nm, im in sigma.items():
        if im not in cells:
            raise AssertionError(f"label swap leaves the complex at {nm!r}")
        if sigma[im] != nm:
            raise AssertionError("label swap is not an involution")
    for nm, (co, fa) in cells.items():
        co2, fa2 = cells[sigma[nm]]
        if {sigma[c] for c in co} != set(co2) or {sigma[f] for f in fa} != set(fa2):
            raise AssertionError(f"label swap is not an automorphism at {nm!r}")
    fix = frozenset(nm for nm in cells if sigma[nm] == nm)
    for nm in fix:
        if nm[0] == "i":
            raise AssertionError("a top-chain cell is fixed by the label swap")

    g = nx.Graph()
    movable = [nm for nm in cells if nm not in fix]
    g.add_nodes_from(movable)
    for nm in movable:
        for f in cells[nm][1]:
            if f not in fix:
                g.add_edge(nm, f)
    seeds = [
        nm
        for nm, (co, _fa) in cells.items()
        if len(co) == 1 and nm not in fix and _face_label(nm) == frozenset({0})
    ]
    if len(seeds) != 1:
        raise AssertionError(f"expected one vertex over the face {{0}}, got {len(seeds)}")
    U = frozenset(nx.node_connected_component(g, seeds[0])) | fix
    V = frozenset(sigma[nm] for nm in U)
    if U | V != set(cells) or U & V != fix:
        raise AssertionError("the fixed locus does not halve the complex")
    return sigma, fix, U


def model(m):
    """The hyperbolizing model of the m-simplex, memoized per process."""
    if m in _models:
        return _models[m]
    if m < 0:
        raise ValueError("negative dimension")
    if m > MAX_MODEL_DIM:
        raise UnsupportedDimension(
            f"hyperbolization models are built up to dimension {MAX_MODEL_DIM}"
        )
    if m == 0:
        point = ("o",)
        mdl = Model(0, {point: ((point,), ())}, {}, {point: ()})
    elif m == 1:
        S = barsub(boundary_complex(1))
        B = assemble(S, canonical_barsub_folding(S))
        y0 = next(nm for nm in B.cells if _face_label(nm) == frozenset({0}))
        y1 = next(nm for nm in B.cells if _face_label(nm) == frozenset({1}))
        v0, v1 = ("b", y0), ("b", y1)
        edge = ("e",)
        cells = {
            v0: ((v0,), ()),
            v1: ((v1,), ()),
            edge: ((v0, v1), (v0, v1)),
        }
        boundary = {v0: (frozenset({0}), y0), v1: (frozenset({1}), y1)}
        mdl = Model(1, cells, boundary, {v0: (0,), v1: (1,)})
    else:
        S = barsub(boundary_complex(m))
        B = assemble(S, canonical_barsub_folding(S))
        sigma, fix, U = _extract_half(B.cells)
        bcells = B.cells

        def top_name(b, t):
            if b in fix:
                return ("b", b)
            if b in U:
                return ("g", b)
            return ("b", b) if t == 1 else ("b", sigma[b])

        cells = {}
        for b, (co, fa) in bcells.items():
            d = len(co).bit_length() - 1
            cells[("c", b, 0)] = (
                tuple(("c", z, 0) for z in co),
                tuple(("c", f, 0) for f in fa),
            )
            for t in (1, -1):
                corners = tuple(("c", z, 0) for z in co) + tuple(
                    top_name(z, t) for z in co
                )
                facets = tuple(("c", f, t) for f in fa) + (("c", b, 0), top_name(b, t))
                assert len(facets) == 2 * (d + 1)
                cells[("c", b, t)] = (corners, facets)
        for u in sorted(U - fix, key=name_key):
            co, fa = bcells[u]
            cells[("g", u)] = (
                tuple(top_name(z, 1) for z in co),
                tuple(top_name(f, 1) for f in fa),
            )
        boundary = {}
        for y, (co, fa) in bcells.items():
            cells[("b", y)] = (
                tuple(("b", z) for z in co),
                tuple(("b", f) for f in fa),
            )
            boundary[("b", y)] = (_face_label(y), y)

        # Vertices fold to their B_m label with the cylinder coordinate
        # appended: 0 on the middle copy, 1 on the glued top and on the
        # boundary. The boundary label is independent of which cylinder end a
        # name came from because strat labels ignore the chain component.
        folding = {}
        for b, lab in B.folding.items():
            folding[("c", b, 0)] = lab + (0,)
            folding[top_name(b, 1)] = lab + (1,)
        for nm, (co, _fa) in cells.items():
            if len(co) == 1 and nm not in folding:
                assert nm[0] == "b"
                folding[nm] = B.folding[nm[1]] + (1,)
        mdl = Model(m, cells, boundary, folding)
    _models[m] = mdl
    return mdl


# ---------------------------------------------------------------------------
# public construction


@dataclass(frozen=True)
class GromovResult:
    complex: CubicalComplex
    folding: dict  # vertex id -> bit tuple
    tiles: dict  # source top simplex (frozenset) -> tuple of cell ids
    provenance: dict  # cell id -> ("interior"|"stratum", source face frozenset)
    source: SimplicialComplex
    source_labels: dict


def gromov_hyperbolize(K, labels=None):
    """Hyperbolize a simplicial complex of dimension <= 3.

    With ``labels`` a simplicial folding the complex is assembled directly;
    without one the barycentric subdivision with its dimension labels is used
    (always a folding). Returns the cubical complex, its induced cube
    folding, the tile map, and per-cell provenance.
    """
    if not isinstance(K, SimplicialComplex):
        raise TypeError("expected a simplicial complex")
    if K.dim > MAX_MODEL_DIM:
        raise UnsupportedDimension(
            f"dimension {K.dim} exceeds the model cap {MAX_MODEL_DIM}"
        )
    if labels is None:
        K = barsub(K)
        labels = canonical_barsub_folding(K)
    asm = assemble(K, labels)
    X = CubicalComplex.from_named_cells(asm.cells)
    cid_of = {nm: cid for cid, nm in X.names.items()}
    folding = {vid: asm.folding[nm] for vid, nm in X.vertex_names.items()}
    tiles = {
        s: tuple(sorted(cid_of[nm] for nm in names)) for s, names in asm.tiles.items()
    }
    provenance = {}
    for cid, nm in X.names.items():
        provenance[cid] = ("interior", nm[1]) if nm[0] == "i" else ("stratum", nm[1])
    return GromovResult(X, folding, tiles, provenance, K, dict(labels))


# ---------------------------------------------------------------------------
# verification


def _smoothed(g):
    """Smooth away degree-2 vertices of a multigraph (loops stop smoothing)."""
    g = nx.MultiGraph(g)
    changed = True
    while changed:
        changed = False
        for v in list(g.nodes):
            if g.degree(v) != 2:
                continue
            ends = [b if a == v else a for a, b, _k in g.edges(v, keys=True)]
            if len(ends) != 2 or v in ends:
                continue  # a loop at v; leave it
            g.remove_node(v)
            g.add_edge(ends[0], ends[1])
            changed = True
            break
    return g


def _vertex_link_multigraph(X, v):
    """The link of a vertex as a true multigraph (bigons kept as parallel edges)."""
    g = nx.MultiGraph()
    for cid in X.cells_at_vertex[v]:
        cube = X.cells[cid]
        if cube.dim == 1:
            g.add_node(cid)
        elif cube.dim == 2:
            b = X.corner_position(cid, v)
            e1, e2 = X.edges_at_corner(cid, b)
            g.add_edge(e1, e2)
    return g


def _source_link_multigraph(K, v):
    g = nx.MultiGraph()
    for f in K.faces:
        if v not in f:
            continue
        rest = sorted(f - {v}, key=name_key)
        if len(rest) == 1:
            g.add_node(rest[0])
        elif len(rest) == 2:
            g.add_edge(rest[0], rest[1])
    return g


@dataclass(frozen=True)
class GromovReport:
    checks: tuple  # (name, status, detail), status in pass|fail|n/a

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


def verify_gromov_properties(result):
    """Run every applicable structural check on a hyperbolization result.

    Checks: relaxed admissibility of the output, dimension and homogeneity,
    foldability of the induced labeling, per-tile isomorphism with the model,
    link preservation at source vertices (links compared up to graph
    homeomorphism; applicable for sources of dimension <= 2), and
    boundarylessness preservation when the source is boundaryless.
    """
    X = result.complex
    K = result.source
    n = K.dim
    checks = []

    rep = verify_cw(X)
    checks.append(
        (
            "cw-admissible",
            "pass" if rep.ok else "fail",
            "" if rep.ok else f"{len(rep.findings)} bad pairs",
        )
    )
    ok_dim = X.dim == n and X.is_homogeneous()
    checks.append(
        ("dimension-homogeneous", "pass" if ok_dim else "fail", f"dim {X.dim}")
    )

    ob = verify_folding(X, result.folding)
    checks.append(
        ("foldable", "pass" if ob is None else "fail", "" if ob is None else str(ob))
    )

    mdl = model(n)
    bad_tiles = []
    for s, cids in sorted(result.tiles.items(), key=lambda kv: name_key(kv[0])):
        by_model = {}
        for cid in cids:
            nm = X.names[cid]
            key = nm[2] if nm[0] == "i" else ("b", nm[2])
            by_model[key] = cid
        if set(by_model) != set(mdl.cells):
            bad_tiles.append(s)
            continue
        good = True
        for key, cid in by_model.items():
            mco, mfa = mdl.cells[key]
            cube = X.cells[cid]
            if {by_model[f] for f in mfa} != set(cube.facets):
                good = False
                break
            if {by_model[c] for c in mco} != {X.zero_cell[v] for v in cube.corners}:
                good = False
                break
        if not good:
            bad_tiles.append(s)
    checks.append(
        (
            "tiles-isomorphic",
            "pass" if not bad_tiles else "fail",
            "" if not bad_tiles else f"{len(bad_tiles)} tiles differ from the model",
        )
    )

    if n == 0:
        checks.append(("links-preserved", "pass", "links are empty"))
    elif n <= 2:
        bad_links = []
        stratum_vertex = {}
        for cid, nm in X.names.items():
            if X.cells[cid].dim == 0 and nm[0] == "f" and len(nm[1]) == 1:
                (src_v,) = tuple(nm[1])
                stratum_vertex[src_v] = X.cells[cid].corners[0]
        for v in sorted(K.vertices, key=name_key):
            img = stratum_vertex.get(v)
            if img is None:
                bad_links.append((v, "no image vertex"))
                continue
            a = _smoothed(_source_link_multigraph(K, v))
            b = _smoothed(_vertex_link_multigraph(X, img))
            if not nx.is_isomorphic(a, b):
                bad_links.append((v, "links not homeomorphic"))
        checks.append(
            (
                "links-preserved",
                "pass" if not bad_links else "fail",
                "" if not bad_links else f"{len(bad_links)} vertices differ",
            )
        )
    else:
        checks.append(("links-preserved", "n/a", "source links are not graphs"))

    if _simplicial_boundaryless(K):
        checks.append(
            ("boundaryless-preserved", "pass" if X.is_boundaryless() else "fail", "")
        )
    else:
        checks.append(("boundaryless-preserved", "n/a", "source has boundary"))

    return GromovReport(tuple(checks))


def _simplicial_boundaryless(K):
    n = K.dim
    if n == 0:
        return True
    if not K.is_pure():
        return False
    for f in K.faces_of_dim(n - 1):
        holders = [g for g in K.maximal if f < g]
        if len(holders) != 2:
            return False
    return True
