"""Cell-identity cubical complexes and simplicial complexes.

Cubes are stored with explicit identity: a cell is a ``Cube`` with an id, a
corner array, and a facet list, not a bare vertex set. Two admissibility levels
coexist:

* strict: cubes are embedded and any two cells meet in at most one common
  face. Raw corner-list input is validated at this level
  (:func:`validate_cubical`) and cells are determined by their corner sets.
* relaxed: cubes are embedded and any two cells meet in a union of pairwise
  vertex-disjoint common faces (:func:`verify_cw`). Hyperbolization quotients
  live here; they contain doubled cells (distinct squares with identical
  corner sets), which is why cell identity is explicit.

Corner arrays are in bitmask position order: a k-cube's corner at index ``b``
sits at the cube corner whose i-th coordinate is bit i of ``b``. Facet lists
are in ``(coordinate, side)`` order: ``facets[2*i + s]`` is the face where
coordinate ``i`` equals ``s``. Vertex ids are opaque integers.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .errors import CellNotFound, FormatError, NotAdmissible, NotASubdivision

# ---------------------------------------------------------------------------
# ordering helper for heterogeneous construction names


def name_key(x):
    """Total order key for ints, strings, tuples and frozensets, recursively.

    Construction names mix all four; Python refuses to compare them directly.
    """
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, (frozenset, set)):
        return (2, tuple(sorted(name_key(e) for e in x)))
    if isinstance(x, tuple):
        return (3, tuple(name_key(e) for e in x))
    raise TypeError(f"unorderable name component: {x!r}")


# ---------------------------------------------------------------------------
# corner-array combinatorics


def array_dim(arr):
    n = len(arr)
    k = n.bit_length() - 1
    if n != 1 << k:
        raise FormatError(f"corner list length {n} is not a power of two")
    return k


def face_array(arr, i, s):
    """Corner array of the facet ``coordinate i = side s``, bitmask order kept."""
    return tuple(a for b, a in enumerate(arr) if (b >> i) & 1 == s)


def _bit_perm_table(k, perm):
    # table[b] = image of bitmask b when source bit i moves to dest bit perm[i]
    n = 1 << k
    table = [0] * n
    for b in range(n):
        c = 0
        for i in range(k):
            if (b >> i) & 1:
                c |= 1 << perm[i]
        table[b] = c
    return table


@lru_cache(maxsize=None)
def _symmetries(k):
    # all (table, mask) pairs for the 2^k * k! cube symmetries
    out = []
    for perm in permutations(range(k)):
        table = _bit_perm_table(k, perm)
        for m in range(1 << k):
            out.append((perm, tuple(table), m))
    return tuple(out)


def canonical_corner_array(arr):
    """Lexicographically least corner array over all cube symmetries."""
    arr = tuple(arr)
    k = array_dim(arr)
    if k == 0:
        return arr
    n = len(arr)
    best = None
    for _, table, m in _symmetries(k):
        out = [None] * n
        for b in range(n):
            out[table[b] ^ m] = arr[b]
        if best is None or out < best:
            best = out
    return tuple(best)


def canonicalize_cell(arr, facets):
    """Canonicalize a corner array and reindex its facet list consistently.

    The symmetry ``g(b) = perm(b) xor m`` moving ``arr`` to its canonical form
    sends the old facet ``(i, s)`` to the new facet
    ``(perm[i], s xor bit(m, perm[i]))``.
    """
    arr = tuple(arr)
    facets = tuple(facets)
    k = array_dim(arr)
    if k == 0:
        return arr, facets
    n = len(arr)
    best = None
    for perm, table, m in _symmetries(k):
        out = [None] * n
        for b in range(n):
            out[table[b] ^ m] = arr[b]
        out = tuple(out)
        if best is None or out < best[0]:
            best = (out, perm, m)
    out, perm, m = best
    new_facets = [None] * (2 * k)
    for i in range(k):
        for s in (0, 1):
            new_facets[2 * perm[i] + (s ^ ((m >> perm[i]) & 1))] = facets[2 * i + s]
    return out, tuple(new_facets)


@lru_cache(maxsize=None)
def _subface_sets(arr):
    """All corner sets of faces of the cube with corner array ``arr`` (itself included)."""
    k = array_dim(arr)
    out = {frozenset(arr)}
    for i in range(k):
        for s in (0, 1):
            out |= _subface_sets(face_array(arr, i, s))
    return frozenset(out)


# ---------------------------------------------------------------------------
# validation of raw corner lists (strict level)


@dataclass(frozen=True)
class Finding:
    kind: str  # RepeatedCorner | NonFaceIntersection | MissingFace
    cells: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple

    @property
    def ok(self):
        return not self.findings

    def to_payload(self):
        return {
            "ok": self.ok,
            "findings": [
                {"kind": f.kind, "cells": list(f.cells), "detail": f.detail}
                for f in self.findings
            ],
        }


def validate_cubical(corner_lists, explicit=False):
    """Check a family of corner lists at the strict admissibility level.

    Parameters
    ----------
    corner_lists : iterable of corner lists in bitmask order.
    explicit : bool
        When true the family is taken as the complete cell set and every
        facet of every listed cell must itself be listed (MissingFace);
        otherwise the closure is implied and only the listed cells are
        checked against each other.

    Returns
    -------
    ValidationReport with RepeatedCorner, NonFaceIntersection and MissingFace
    findings. Cells are referred to by their index in the input.
    """
    cells = [tuple(c) for c in corner_lists]
    findings = []
    clean = {}
    for idx, arr in enumerate(cells):
        array_dim(arr)
        if len(set(arr)) != len(arr):
            findings.append(Finding("RepeatedCorner", (idx,), f"corners {arr}"))
            continue
        clean[idx] = canonical_corner_array(arr)

    by_canon = {}
    for idx, canon in clean.items():
        by_canon.setdefault(canon, []).append(idx)
    for canon, idxs in sorted(by_canon.items()):
        if len(idxs) > 1:
            findings.append(
                Finding(
                    "NonFaceIntersection",
                    tuple(idxs),
                    "distinct cells share the corner set "
                    f"{sorted(set(canon))}",
                )
            )

    if explicit:
        present = set(by_canon)
        for idx, canon in sorted(clean.items()):
            k = array_dim(canon)
            for i in range(k):
                for s in (0, 1):
                    sub = canonical_corner_array(face_array(canon, i, s))
                    if sub not in present:
                        findings.append(
                            Finding(
                                "MissingFace",
                                (idx,),
                                f"facet with corners {sorted(set(sub))} absent",
                            )
                        )

    # pairwise single-common-face test; faces of the listed cells inherit it
    idxs = sorted(clean)
    for a, b in combinations(idxs, 2):
        A, B = clean[a], clean[b]
        if A == B:
            continue  # already reported as a duplicate pair
        inter = frozenset(A) & frozenset(B)
        if not inter:
            continue
        if inter not in _subface_sets(A) or inter not in _subface_sets(B):
            findings.append(
                Finding(
                    "NonFaceIntersection",
                    (a, b),
                    f"intersection {sorted(inter)} is not a common face",
                )
            )
    return ValidationReport(tuple(findings))


# ---------------------------------------------------------------------------
# the complex proper


@dataclass(frozen=True)
class Cube:
    cid: int
    corners: tuple  # vertex ids, bitmask position order, canonical
    facets: tuple  # cell ids, (coordinate, side) order

    @property
    def dim(self):
        return len(self.corners).bit_length() - 1


class CubicalComplex:
    """Immutable cubical complex with explicit cell identity.

    ``kind`` is "cubical" for strict corner-set-determined complexes and "cw"
    for relaxed complexes that may contain doubled cells. Cell ids are
    contiguous from zero in canonical order (dimension, canonical corner
    array, construction name).
    """

    def __init__(self, cubes, kind="cubical", names=None, vertex_names=None):
        self.cells = {c.cid: c for c in cubes}
        if sorted(self.cells) != list(range(len(self.cells))):
            raise ValueError("cell ids must be contiguous from zero")
        self.kind = kind
        self.names = dict(names) if names else None
        self.vertex_names = dict(vertex_names) if vertex_names else None
        self._check_local_structure()
        self._index()

    # -- construction -------------------------------------------------

    @classmethod
    def from_maximal_cells(cls, corner_lists, check=True):
        """Build the closure of the given maximal cells as a strict complex."""
        lists = [tuple(c) for c in corner_lists]
        if check:
            report = validate_cubical(lists)
            if not report.ok:
                raise NotAdmissible(report)
        canon = {}  # canonical array -> None, then -> cid

        def add(arr):
            a = canonical_corner_array(arr)
            if a in canon:
                return
            canon[a] = None
            k = array_dim(a)
            for i in range(k):
                for s in (0, 1):
                    add(face_array(a, i, s))

        for arr in lists:
            if len(set(arr)) != len(arr):
                raise NotAdmissible(f"repeated corners in {arr}")
            add(arr)
        order = sorted(canon, key=lambda a: (array_dim(a), a))
        for cid, a in enumerate(order):
            canon[a] = cid
        cubes = []
        for a in order:
            k = array_dim(a)
            facets = tuple(
                canon[canonical_corner_array(face_array(a, i, s))]
                for i in range(k)
                for s in (0, 1)
            )
            cubes.append(Cube(canon[a], a, facets))
        return cls(cubes, kind="cubical")

    @classmethod
    def from_named_cells(cls, named, kind="cw"):
        """Finalize a named cell dictionary into a complex.

        ``named`` maps construction names to ``(corners, facets)`` where both
        reference other names; corners reference 0-cell names in bitmask
        order. Vertex ids and cell ids are assigned by canonical sort and the
        name tables are retained.
        """
        zero_names = sorted(
            (n for n, (co, fa) in named.items() if len(co) == 1), key=name_key
        )
        vid = {n: i for i, n in enumerate(zero_names)}
        for n, (co, fa) in named.items():
            if len(co) == 1 and co[0] != n:
                raise ValueError(f"a 0-cell must be its own corner: {n!r}")
        pre = {}
        for n, (co, fa) in named.items():
            arr = tuple(vid[c] for c in co)
            carr, cfacets = canonicalize_cell(arr, fa)
            pre[n] = (carr, cfacets)
        order = sorted(pre, key=lambda n: (array_dim(pre[n][0]), pre[n][0], name_key(n)))
        cid = {n: i for i, n in enumerate(order)}
        cubes = []
        for n in order:
            carr, cfacets = pre[n]
            cubes.append(Cube(cid[n], carr, tuple(cid[f] for f in cfacets)))
        names = {cid[n]: n for n in order}
        vertex_names = {v: n for n, v in vid.items()}
        return cls(cubes, kind=kind, names=names, vertex_names=vertex_names)

    # -- indexes ---------------------------------------------------------

    def _check_local_structure(self):
        for c in self.cells.values():
            k = c.dim
            if len(set(c.corners)) != len(c.corners):
                raise ValueError(f"cube {c.cid} is not embedded: {c.corners}")
            if len(c.facets) != 2 * k:
                raise ValueError(f"cube {c.cid} has {len(c.facets)} facets, wanted {2*k}")
            if len(set(c.facets)) != len(c.facets):
                raise ValueError(f"cube {c.cid} repeats a facet")
            for i in range(k):
                for s in (0, 1):
                    f = self.cells.get(c.facets[2 * i + s])
                    if f is None:
                        raise ValueError(f"cube {c.cid} references missing facet")
                    if set(f.corners) != set(face_array(c.corners, i, s)):
                        raise ValueError(
                            f"cube {c.cid} facet ({i},{s}) corners disagree"
                        )

    def _index(self):
        self.by_dim = {}
        for c in self.cells.values():
            self.by_dim.setdefault(c.dim, []).append(c.cid)
        for d in self.by_dim:
            self.by_dim[d].sort()
        self.vertices = sorted(v for (v,) in (self.cells[c].corners for c in self.by_dim.get(0, [])))
        self.zero_cell = {self.cells[c].corners[0]: c for c in self.by_dim.get(0, [])}
        self.cells_at_vertex = {v: [] for v in self.vertices}
        for c in sorted(self.cells):
            for v in set(self.cells[c].corners):
                self.cells_at_vertex[v].append(c)
        self.cofaces = {c: [] for c in self.cells}
        for c in sorted(self.cells):
            cube = self.cells[c]
            for i in range(cube.dim):
                for s in (0, 1):
                    self.cofaces[cube.facets[2 * i + s]].append((c, i, s))
        self._subcells = {}

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self):
        return max(self.by_dim) if self.by_dim else -1

    def cell(self, cid):
        try:
            return self.cells[cid]
        except KeyError:
            raise CellNotFound(f"no cell {cid}") from None

    def counts(self):
        return {d: len(cs) for d, cs in sorted(self.by_dim.items())}

    def euler_characteristic(self):
        return sum((-1) ** d * len(cs) for d, cs in self.by_dim.items())

    def top_cells(self):
        return sorted(c for c in self.cells if not self.cofaces[c])

    def is_homogeneous(self):
        n = self.dim
        return all(self.cells[c].dim == n for c in self.top_cells())

    def is_boundaryless(self):
        # every codimension-1 cell bounds exactly two top cells
        n = self.dim
        for c in self.by_dim.get(n - 1, []):
            tops = [p for (p, _, _) in self.cofaces[c] if self.cells[p].dim == n]
            if len(tops) != 2:
                return False
        return True

    def subcells(self, cid):
        """All faces of a cell, itself included, as a frozenset of cell ids."""
        got = self._subcells.get(cid)
        if got is not None:
            return got
        cube = self.cell(cid)
        acc = {cid}
        for f in cube.facets:
            acc |= self.subcells(f)
        out = frozenset(acc)
        self._subcells[cid] = out
        return out

    def face_of(self, cid, constraints):
        """The face of ``cid`` with the given coordinates pinned to sides.

        ``constraints`` maps coordinate indexes of the cell to sides. Resolved
        by corner set rather than by facet-index descent: a facet cell's own
        canonical frame need not agree with the frame the parent induces on
        it, so chained facet lookups can silently flip sides. Within one
        embedded cube a face is determined by its corners.
        """
        cube = self.cell(cid)
        k = cube.dim
        want = frozenset(
            cube.corners[b]
            for b in range(1 << k)
            if all((b >> j) & 1 == s for j, s in constraints.items())
        )
        target = k - len(constraints)
        matches = [
            f
            for f in self.subcells(cid)
            if self.cells[f].dim == target and frozenset(self.cells[f].corners) == want
        ]
        if len(matches) != 1:
            raise CellNotFound(
                f"cell {cid} has {len(matches)} faces with corners {sorted(want)}"
            )
        return matches[0]

    def corner_position(self, cid, v):
        cube = self.cell(cid)
        try:
            return cube.corners.index(v)
        except ValueError:
            raise CellNotFound(f"vertex {v} is not a corner of cell {cid}") from None

    def edges_at_corner(self, cid, b):
        """Cell ids of the cube's edges at corner position ``b``, one per coordinate."""
        cube = self.cell(cid)
        out = []
        for i in range(cube.dim):
            constraints = {j: (b >> j) & 1 for j in range(cube.dim) if j != i}
            out.append(self.face_of(cid, constraints))
        return out

    def covers(self):
        """All codimension-1 inclusion pairs (face cid, cell cid)."""
        out = []
        for c in sorted(self.cells):
            for f in self.cells[c].facets:
                out.append((f, c))
        return out


# ---------------------------------------------------------------------------
# relaxed admissibility (embedded cubes, disjoint-unions-of-faces intersections)


def verify_cw(X):
    """Check the relaxed admissibility level on a cell-identity complex.

    Every cube must be embedded (checked at construction) and every pair of
    cells must intersect in a union of pairwise vertex-disjoint common faces:
    the maximal common faces are vertex-disjoint and their corners cover the
    corner-set intersection.
    """
    findings = []
    seen = set()
    for v in X.vertices:
        at = X.cells_at_vertex[v]
        for a, b in combinations(at, 2):
            if (a, b) in seen:
                continue
            seen.add((a, b))
            ca, cb = X.cells[a], X.cells[b]
            inter = set(ca.corners) & set(cb.corners)
            common = X.subcells(a) & X.subcells(b)
            maximal = [
                c
                for c in common
                if not any(c != d and c in X.subcells(d) for d in common)
            ]
            covered = set()
            disjoint = True
            for c in maximal:
                cs = set(X.cells[c].corners)
                if covered & cs:
                    disjoint = False
                covered |= cs
            if not disjoint or covered != inter:
                findings.append(
                    Finding(
                        "NonFaceIntersection",
                        (a, b),
                        "maximal common faces "
                        f"{sorted(maximal)} do not tile the corner intersection",
                    )
                )
    return ValidationReport(tuple(findings))


# ---------------------------------------------------------------------------
# links


@dataclass(frozen=True)
class LinkResult:
    vertex: int
    complex: "SimplicialComplex"  # vertices are edge cell ids
    bigons: tuple  # pairs of cell ids inducing the same link simplex

    @property
    def simplicial(self):
        return not self.bigons


def link(X, v):
    """Link of a vertex as a simplicial complex on the incident edge cells.

    Each k-cube incident to ``v`` contributes the (k-1)-simplex of its k edges
    at the corner holding ``v``. Two distinct cells inducing the same simplex
    of dimension >= 1 are reported as a bigon; such links are not simplicial
    and fail the curvature check.
    """
    if v not in X.zero_cell:
        raise CellNotFound(f"no vertex {v}")
    induced = {}
    for cid in X.cells_at_vertex[v]:
        cube = X.cells[cid]
        if cube.dim == 0:
            continue
        b = X.corner_position(cid, v)
        simplex = frozenset(X.edges_at_corner(cid, b))
        induced.setdefault(simplex, []).append(cid)
    bigons = tuple(
        tuple(sorted(cids))
        for simplex, cids in sorted(induced.items(), key=lambda kv: name_key(kv[0]))
        if len(simplex) >= 2 and len(cids) > 1
    )
    sc = SimplicialComplex(induced.keys())
    return LinkResult(v, sc, bigons)


def all_links(X):
    return [link(X, v) for v in X.vertices]


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplex:
    """Finite simplicial complex over hashable vertex labels.

    Built from maximal faces; the closure under nonempty subsets is stored.
    """

    def __init__(self, maximal_faces):
        faces = set()
        for f in maximal_faces:
            f = frozenset(f)
            if not f:
                continue
            for r in range(1, len(f) + 1):
                for sub in combinations(sorted(f, key=name_key), r):
                    faces.add(frozenset(sub))
        self.faces = frozenset(faces)
        self.maximal = tuple(
            sorted(
                (f for f in faces if not any(f < g for g in faces)),
                key=lambda f: (len(f), name_key(f)),
            )
        )
        self.vertices = sorted({v for f in faces for v in f}, key=name_key)

    @property
    def dim(self):
        return max((len(f) - 1 for f in self.faces), default=-1)

    def faces_of_dim(self, k):
        return sorted((f for f in self.faces if len(f) == k + 1), key=name_key)

    def is_pure(self):
        n = self.dim
        return all(len(f) - 1 == n for f in self.maximal)

    def skeleton_graph(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for f in self.faces_of_dim(1):
            a, b = sorted(f, key=name_key)
            g.add_edge(a, b)
        return g

    def counts(self):
        out = {}
        for f in self.faces:
            out[len(f) - 1] = out.get(len(f) - 1, 0) + 1
        return dict(sorted(out.items()))

    def euler_characteristic(self):
        return sum((-1) ** (len(f) - 1) for f in self.faces)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)


# ---------------------------------------------------------------------------
# barycentric subdivision (order complex of the face poset)


def barsub(X):
    """Barycentric subdivision with provenance.

    For a simplicial complex the new vertices are the faces themselves
    (frozensets); simplices are chains under inclusion. For a cubical complex
    the new vertices are cell ids and simplices are chains in the face poset.
    Either way the result is simplicial of the same dimension.
    """
    if isinstance(X, SimplicialComplex):
        chains = []

        def grow(chain, face):
            chains.append(tuple(chain))
            # extend downward by one dimension at a time to enumerate flags
            if len(face) == 1:
                return
            for v in sorted(face, key=name_key):
                sub = face - {v}
                grow([sub] + chain, sub)

        for f in X.maximal:
            grow([f], f)
        # a chain is maximal when it runs from a vertex up to its maximal face
        maximal = [frozenset(c) for c in chains if len(c[-1]) == len(c)]
        return SimplicialComplex(maximal)
    if isinstance(X, CubicalComplex):
        flags = []

        def grow(chain, cid):
            cube = X.cells[cid]
            if cube.dim == 0:
                flags.append(frozenset(chain))
                return
            for f in sorted(set(cube.facets)):
                grow(chain + [f], f)

        for t in X.top_cells():
            grow([t], t)
        return SimplicialComplex(flags)
    raise TypeError("barsub expects a simplicial or cubical complex")


def dim_labels(S):
    """The dimension labeling of a barycentric subdivision: face -> dim.

    Valid for complexes whose vertices are frozensets (simplicial provenance);
    for cubical provenance pass the source to measure cell dimensions instead.
    """
    out = {}
    for v in S.vertices:
        if not isinstance(v, frozenset):
            raise TypeError("dim_labels needs frozenset vertices from barsub")
        out[v] = len(v) - 1
    return out


# ---------------------------------------------------------------------------
# cubical subdivision


def cubical_subdivision(X):
    """Standard cubical subdivision: one vertex per cell, one k-cube per
    (corner, k-cell) pair. Vertex ids of the result are cell ids of ``X``.

    The result is always strict, even when the source is a relaxed complex
    with doubled cells, because subdivision cubes are poset intervals and an
    interval is determined by its corner set.
    """
    maximal = []
    for t in X.top_cells():
        cube = X.cells[t]
        k = cube.dim
        if k == 0:
            maximal.append((t,))
            continue
        for b in range(1 << k):
            arr = []
            for m in range(1 << k):
                constraints = {j: (b >> j) & 1 for j in range(k) if not (m >> j) & 1}
                arr.append(X.face_of(t, constraints))
            maximal.append(tuple(arr))
    return CubicalComplex.from_maximal_cells(maximal, check=False)


def check_subdivision(X, S):
    """Verify that ``S`` is the cubical subdivision of ``X``.

    Raises NotASubdivision with the first mismatch; vertex ids of ``S`` must
    be the cell ids of ``X`` and the cell census must match exactly.
    """
    want = cubical_subdivision(X)
    if sorted(S.vertices) != sorted(want.vertices):
        raise NotASubdivision(
            f"vertex sets differ: {len(S.vertices)} given, {len(want.vertices)} expected"
        )
    got = {(c.dim, c.corners) for c in S.cells.values()}
    expected = {(c.dim, c.corners) for c in want.cells.values()}
    if got != expected:
        diff = sorted(expected ^ got)[:3]
        raise NotASubdivision(f"cell census differs near {diff}")
    return True


# ---------------------------------------------------------------------------
# small builders


def graph_complex(edges, isolated=()):
    """1-dimensional cubical complex from an edge list over integer vertex ids."""
    maximal = [tuple(e) for e in edges]
    maximal.extend((v,) for v in isolated)
    return CubicalComplex.from_maximal_cells(maximal)


def simplicial_graph_as_cubical(S):
    """Convert a simplicial complex of dimension <= 1 into a cubical graph."""
    if S.dim > 1:
        raise TypeError("only graphs convert directly")
    order = {v: i for i, v in enumerate(S.vertices)}
    edges = [tuple(order[v] for v in sorted(f, key=name_key)) for f in S.faces_of_dim(1)]
    lone = [
        order[v]
        for v in S.vertices
        if not any(v in f for f in S.faces_of_dim(1))
    ]
    return graph_complex(edges, isolated=lone)
