"""Foldings of cubical complexes, mirrors, framings, and separation.

A folding of an n-dimensional cubical complex labels every vertex with a
corner of the n-cube so that every cell maps injectively onto a face of the
target cube. Equivalently every edge flips exactly one coordinate and the
corner labels of every k-cube form a k-face. Graphs fold onto the interval,
so a graph is foldable exactly when it is bipartite.

A mirror is a connected component of the preimage of a codimension-1 face of
the target cube: the full subcomplex of cells all of whose vertices carry a
fixed value in one coordinate. Mirrors are closed subcomplexes.
"""

from dataclasses import dataclass

from .complexes import CubicalComplex, SimplicialComplex
from .errors import NotFoldable, UnlabeledVertex

# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class FoldingObstruction:
    kind: str  # edge | cube
    cell: int
    detail: str


def _label_of(labels, v, n):
    try:
        lab = labels[v]
    except KeyError:
        raise UnlabeledVertex(f"vertex {v} has no label") from None
    lab = tuple(lab)
    if len(lab) != n or any(x not in (0, 1) for x in lab):
        raise UnlabeledVertex(f"vertex {v} label {lab} is not a corner of the {n}-cube")
    return lab


def verify_folding(X, labels):
    """First obstruction to ``labels`` being a folding of ``X``, or None.

    Cells are scanned in canonical id order so the witness is deterministic.
    Missing or malformed labels raise UnlabeledVertex; semantic failures are
    returned as a FoldingObstruction.
    """
    n = X.dim
    lab = {v: _label_of(labels, v, n) for v in X.vertices}
    for cid in sorted(X.cells):
        cube = X.cells[cid]
        k = cube.dim
        if k == 0:
            continue
        corner_labels = [lab[v] for v in cube.corners]
        if k == 1:
            a, b = corner_labels
            if sum(x != y for x, y in zip(a, b)) != 1:
                return FoldingObstruction(
                    "edge", cid, f"endpoint labels {a} and {b} do not flip exactly one coordinate"
                )
            continue
        bits = [int("".join(map(str, reversed(c))), 2) for c in corner_labels]
        if len(set(bits)) != len(bits):
            return FoldingObstruction("cube", cid, "corner labels repeat")
        base = bits[0]
        xors = {b ^ base for b in bits}
        span = 0
        for x in xors:
            span |= x
        if bin(span).count("1") != k or len(xors) != 1 << k:
            return FoldingObstruction(
                "cube", cid, f"corner labels do not form a {k}-face of the target cube"
            )
    return None


def assert_folding(X, labels):
    ob = verify_folding(X, labels)
    if ob is not None:
        raise NotFoldable("invalid folding", ob)
    return True


# ---------------------------------------------------------------------------
# search


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the least representative so class order is canonical
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def parallelism_classes(X):
    """Edge classes under square opposition, keyed by least edge id."""
    dsu = _DSU(X.by_dim.get(1, []))
    for sq in X.by_dim.get(2, []):
        f = X.cells[sq].facets
        dsu.union(f[0], f[1])
        dsu.union(f[2], f[3])
    classes = {}
    for e in X.by_dim.get(1, []):
        classes.setdefault(dsu.find(e), []).append(e)
    return {root: tuple(sorted(es)) for root, es in sorted(classes.items())}


def find_folding(X):
    """Search for a folding of ``X`` onto the cube of its dimension.

    Parallelism classes are assigned coordinates by backtracking in canonical
    class order, pruning when a cube would see the same coordinate twice; at
    complete assignments each coordinate must admit a side potential (an even
    parity condition checked by BFS). The first success in search order is
    returned: least vertex of every component gets the all-zeros label.

    Raises NotFoldable when the search is exhausted.
    """
    n = X.dim
    if n <= 0:
        return {v: () for v in X.vertices}
    classes = parallelism_classes(X)
    roots = sorted(classes)
    root_of = {}
    for r, es in classes.items():
        for e in es:
            root_of[e] = r

    # each cube of dim >= 2 lists the classes of its coordinate directions
    cube_dirs = []
    for cid in sorted(X.cells):
        cube = X.cells[cid]
        if cube.dim < 2:
            continue
        dirs = []
        for i in range(cube.dim):
            constraints = {j: 0 for j in range(cube.dim) if j != i}
            dirs.append(root_of[X.face_of(cid, constraints)])
        if len(set(dirs)) != len(dirs):
            raise NotFoldable(
                "two directions of one cube lie in the same parallelism class",
                FoldingObstruction("cube", cid, "parallel directions collide"),
            )
        cube_dirs.append(tuple(dirs))

    watching = {r: [] for r in roots}
    for idx, dirs in enumerate(cube_dirs):
        for r in dirs:
            watching[r].append(idx)

    assign = {}
    taken = [set() for _ in cube_dirs]  # coordinates already used per cube

    adj = {v: [] for v in X.vertices}
    for e in X.by_dim.get(1, []):
        a, b = X.cells[e].corners
        adj[a].append((b, e))
        adj[b].append((a, e))

    def parity_labels():
        # one BFS assigns the whole label vector; per-edge only the edge's
        # coordinate may flip, all others must agree
        lab = {}
        for start in X.vertices:
            if start in lab:
                continue
            lab[start] = tuple(0 for _ in range(n))
            queue = [start]
            while queue:
                v = queue.pop(0)
                for w, e in adj[v]:
                    i = assign[root_of[e]]
                    want = tuple(
                        (x ^ 1 if j == i else x) for j, x in enumerate(lab[v])
                    )
                    if w in lab:
                        if lab[w] != want:
                            return None
                    else:
                        lab[w] = want
                        queue.append(w)
        return lab

    def search(pos):
        if pos == len(roots):
            return parity_labels()
        r = roots[pos]
        for coord in range(n):
            bad = False
            for idx in watching[r]:
                if coord in taken[idx]:
                    bad = True
                    break
            if bad:
                continue
            assign[r] = coord
            for idx in watching[r]:
                taken[idx].add(coord)
            got = search(pos + 1)
            if got is not None:
                return got
            for idx in watching[r]:
                taken[idx].discard(coord)
            del assign[r]
        return None

    labels = search(0)
    if labels is None:
        raise NotFoldable(
            "no coordinate assignment of the parallelism classes satisfies parity"
        )
    assert verify_folding(X, labels) is None
    return labels


# ---------------------------------------------------------------------------
# simplicial foldings (used by hyperbolization inputs)


def verify_simplicial_folding(S, labels):
    """Check a vertex labeling of a pure n-complex onto the n-simplex.

    Every maximal face must carry all n+1 labels exactly once. Returns None
    or a human-readable obstruction string.
    """
    if not isinstance(S, SimplicialComplex):
        raise TypeError("expected a simplicial complex")
    n = S.dim
    for v in S.vertices:
        if v not in labels:
            raise UnlabeledVertex(f"vertex {v!r} has no label")
        if labels[v] not in range(n + 1):
            raise UnlabeledVertex(f"vertex {v!r} label {labels[v]!r} outside 0..{n}")
    if not S.is_pure():
        return "complex is not homogeneous"
    for f in S.maximal:
        got = sorted(labels[v] for v in f)
        if got != list(range(n + 1)):
            return f"maximal face {sorted(f, key=str)} carries labels {got}"
    return None


def canonical_barsub_folding(S):
    """Dimension labels of a barycentric subdivision: face -> len(face)-1.

    This is always a valid simplicial folding of ``barsub`` output.
    """
    return {v: len(v) - 1 for v in S.vertices}


# ---------------------------------------------------------------------------
# mirrors


@dataclass(frozen=True)
class Mirror:
    index: int
    coordinate: int
    side: int
    cells: frozenset  # cell ids, a closed connected subcomplex

    def to_payload(self):
        return {
            "index": self.index,
            "coordinate": self.coordinate,
            "side": self.side,
            "cells": sorted(self.cells),
        }


def mirrors(X, labels):
    """All mirrors of the folding, in canonical (coordinate, side, least cell) order."""
    n = X.dim
    lab = {v: _label_of(labels, v, n) for v in X.vertices}
    out = []
    for i in range(n):
        for side in (0, 1):
            member = [
                cid
                for cid in sorted(X.cells)
                if all(lab[v][i] == side for v in X.cells[cid].corners)
            ]
            if not member:
                continue
            dsu = _DSU(member)
            member_set = set(member)
            for v in X.vertices:
                at = [c for c in X.cells_at_vertex[v] if c in member_set]
                for c in at[1:]:
                    dsu.union(at[0], c)
            comps = {}
            for c in member:
                comps.setdefault(dsu.find(c), []).append(c)
            for root in sorted(comps):
                out.append((i, side, root, frozenset(comps[root])))
    out.sort(key=lambda entry: entry[:3])
    return [
        Mirror(idx, i, side, cells) for idx, (i, side, _root, cells) in enumerate(out)
    ]


def framings(X, M):
    """All framings of a mirror: (cell, (C1, C2)) with C1 < C2 top cells whose
    whole intersection lies inside the mirror and contains the cell."""
    tops = X.top_cells()
    out = []
    for a in range(len(tops)):
        for b in range(a + 1, len(tops)):
            common = X.subcells(tops[a]) & X.subcells(tops[b])
            if not common or not common <= M.cells:
                continue
            for sigma in sorted(common):
                out.append((sigma, (tops[a], tops[b])))
    return out


@dataclass(frozen=True)
class SeparationReport:
    mirror: int
    separates: bool
    n_components: int
    component_of: dict  # top cell -> component index
    framing_count: int


def mirror_separates(X, M):
    """Does the mirror separate all of its framings?

    Components are those of the top-cube adjacency graph with adjacencies
    through mirror cells deleted: two top cells are adjacent when they share
    a codimension-1 face outside the mirror.
    """
    tops = X.top_cells()
    dsu = _DSU(tops)
    for cid in sorted(X.cells):
        cube = X.cells[cid]
        if cid in M.cells:
            continue
        holder = [p for (p, _, _) in X.cofaces[cid] if not X.cofaces[p]]
        if cube.dim == X.dim - 1 and len(holder) > 1:
            for other in holder[1:]:
                dsu.union(holder[0], other)
    comps = {}
    for t in tops:
        comps.setdefault(dsu.find(t), []).append(t)
    comp_of = {}
    for idx, root in enumerate(sorted(comps)):
        for t in comps[root]:
            comp_of[t] = idx
    fr = framings(X, M)
    separated = all(comp_of[c1] != comp_of[c2] for (_s, (c1, c2)) in fr)
    return SeparationReport(M.index, separated, len(comps), comp_of, len(fr))
