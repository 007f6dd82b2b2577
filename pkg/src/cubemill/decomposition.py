"""Decomposition of a foldable complex along one folding coordinate.

Fixing a coordinate, the mirrors of that coordinate slice the complex into
chambers: components of the top-cube adjacency graph once adjacencies through
the sliced cells are deleted. The bipartite incidence graph between mirrors
and chambers is a tree exactly on simple enough sources, so its verdicts
(connected, acyclic, leafless) are reported rather than enforced; a cycle
diagnoses a non-simply-connected source and a leaf diagnoses boundary.
"""

from dataclasses import dataclass

import networkx as nx

from ._concurrency import parallel_map
from .folding import _DSU, mirrors


@dataclass(frozen=True)
class TreeOfSpaces:
    coordinate: int
    mirror_indices: tuple  # positions in the canonical mirror list
    chambers: tuple  # per chamber: sorted tuple of top cell ids
    edges: tuple  # (mirror index, chamber position) incidences
    connected: bool
    acyclic: bool
    leafless: bool

    @property
    def is_tree(self):
        return self.connected and self.acyclic

    def graph(self):
        g = nx.Graph()
        g.add_nodes_from(("mirror", m) for m in self.mirror_indices)
        g.add_nodes_from(("chamber", k) for k in range(len(self.chambers)))
        g.add_edges_from((("mirror", m), ("chamber", k)) for m, k in self.edges)
        return g

    def to_payload(self):
        return {
            "coordinate": self.coordinate,
            "mirrors": list(self.mirror_indices),
            "chambers": [list(c) for c in self.chambers],
            "edges": [list(e) for e in self.edges],
            "connected": self.connected,
            "acyclic": self.acyclic,
            "leafless": self.leafless,
        }


def build_tree(Y, labels, i, mirror_list=None):
    """The mirror/chamber incidence graph for folding coordinate ``i``.

    Mirrors of both sides of the coordinate become one vertex class; the
    chambers are components of top-cube adjacency avoiding those mirrors'
    cells. One edge joins a mirror and a chamber when some cell of the mirror
    is a face of a top cube of the chamber.
    """
    if not 0 <= i < Y.dim:
        raise ValueError(f"coordinate {i} out of range for dimension {Y.dim}")
    ml = mirrors(Y, labels) if mirror_list is None else mirror_list
    mine = [M for M in ml if M.coordinate == i]
    cut = set()
    for M in mine:
        cut |= M.cells

    tops = Y.top_cells()
    dsu = _DSU(tops)
    for cid in sorted(Y.cells):
        if cid in cut or Y.cells[cid].dim != Y.dim - 1:
            continue
        holder = [p for (p, _, _) in Y.cofaces[cid] if not Y.cofaces[p]]
        for other in holder[1:]:
            dsu.union(holder[0], other)
    grouped = {}
    for t in tops:
        grouped.setdefault(dsu.find(t), []).append(t)
    chambers = tuple(sorted((tuple(sorted(g)) for g in grouped.values())))

    edges = []
    for M in mine:
        for k, chamber in enumerate(chambers):
            if any(Y.subcells(t) & M.cells for t in chamber):
                edges.append((M.index, k))

    g = nx.Graph()
    g.add_nodes_from(("mirror", M.index) for M in mine)
    g.add_nodes_from(("chamber", k) for k in range(len(chambers)))
    g.add_edges_from((("mirror", m), ("chamber", k)) for m, k in edges)
    connected = nx.is_connected(g) if g.number_of_nodes() else True
    acyclic = nx.is_forest(g) if g.number_of_nodes() else True
    leafless = all(d >= 2 for _n, d in g.degree)

    return TreeOfSpaces(
        i,
        tuple(M.index for M in mine),
        chambers,
        tuple(sorted(edges)),
        connected,
        acyclic,
        leafless,
    )


def build_all_trees(Y, labels):
    """One decomposition per folding coordinate, built independently."""
    ml = mirrors(Y, labels)
    return tuple(
        parallel_map(lambda i: build_tree(Y, labels, i, mirror_list=ml), range(Y.dim))
    )
