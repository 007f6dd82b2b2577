"""Edge paths in the dual complex and the surgery calculus on loops.

Paths live on dual vertices; every step crosses a dual edge, so heights
change by exactly one. Loops repeat their basepoint. The calculus rewrites
a loop by height-raising square slides and backtrack removals inside a single
tile, and splits loops that cross framed mirrors into strictly shorter
pieces by projecting a minimal bridge onto its supporting mirror region.
Every operation emits replayable moves; ``verify_certificate`` replays them
against the dual complex without trusting the producer.

Determinism: mirrors are scanned in their canonical order, gaps and bridges
break ties toward the least start index and least length, slides raise all
interior minima of a sweep together, and a slide's new vertex is the least
fourth corner completing a stored dual square.
"""

from dataclasses import dataclass

import networkx as nx

from .dual import dual_mirror, tops_containing
from .errors import (
    CarrierViolation,
    CellNotFound,
    NoCrossing,
    NonSeparatingMirror,
    NotABridge,
    NotInTile,
    Unsupported,
)
from .folding import mirror_separates, mirrors


# ---------------------------------------------------------------------------
# paths


def check_edge_path(D, vertices):
    """Validate a dual vertex sequence as an edge path and return it."""
    p = tuple(vertices)
    if not p:
        raise ValueError("a path needs at least one vertex")
    for v in p:
        if v not in D.heights:
            raise CellNotFound(f"{v} is not a dual vertex")
    for a, b in zip(p, p[1:]):
        if not D.adjacent(a, b):
            raise ValueError(f"{a} -> {b} is not a dual edge")
        if abs(D.heights[a] - D.heights[b]) != 1:
            raise ValueError(f"{a} -> {b} does not change height by one")
    return p


def path_length(p):
    return len(p) - 1


def path_height(D, p):
    return max(D.heights[v] for v in p)


def is_loop(p):
    return len(p) >= 1 and p[0] == p[-1]


def rotate_loop(p, k):
    """Move the basepoint of a loop forward by ``k`` positions."""
    if not is_loop(p):
        raise ValueError("only loops rotate")
    core = p[:-1] if len(p) > 1 else p
    k %= len(core)
    if k == 0:
        return p
    out = core[k:] + core[:k]
    return out + (out[0],)


def tile_of(D, p):
    """The least source top cell whose tile contains the whole path."""
    tops = tops_containing(D, set(p))
    if not tops:
        raise NotInTile("no tile contains the path")
    return min(tops)


def in_tile(D, p):
    return bool(tops_containing(D, set(p)))


def random_loop(D, rng, max_len=12):
    """A random loop of length at most ``max_len`` in the dual skeleton.

    A random walk spends half the budget, then a shortest path closes the
    loop; heights alternate parity along edges, so the closing path cannot
    overrun the remaining half.
    """
    if max_len < 2:
        raise ValueError("loops need length at least 2")
    g = D.skeleton()
    start = rng.choice(sorted(g.nodes))
    walk = [start]
    for _ in range(max_len // 2):
        walk.append(rng.choice(sorted(g.neighbors(walk[-1]))))
    back = nx.shortest_path(g, walk[-1], start)
    return tuple(walk + back[1:])


# ---------------------------------------------------------------------------
# crossings


@dataclass(frozen=True)
class CrossingProfile:
    mirror_index: int
    runs: tuple  # per run: tuple of path positions inside the mirror region
    crossing_flags: tuple  # per run: whether the flanks lie in different components
    count: int
    all_inside: bool

    def to_payload(self):
        return {
            "mirror": self.mirror_index,
            "runs": [list(r) for r in self.runs],
            "crossings": self.count,
            "all_inside": self.all_inside,
        }


def crossings(D, p, M, _dm=None):
    """The crossing profile of a path against a separating framed mirror.

    A run is a maximal stretch of the path inside the mirror region; it is a
    crossing when both flanking vertices exist and lie in different complement
    components. Loops are scanned cyclically so a run through the basepoint
    counts once.
    """
    sep = mirror_separates(D.source, M)
    if not sep.separates:
        raise NonSeparatingMirror(f"mirror {M.index} does not separate")
    dm = _dm if _dm is not None else dual_mirror(D, M)
    loop = is_loop(p) and len(p) > 1

    if loop:
        core = p[:-1]
        n = len(core)
        inside = [v in dm.vertices for v in core]
        if all(inside):
            return CrossingProfile(M.index, (), (), 0, True)
        if not any(inside):
            return CrossingProfile(M.index, (), (), 0, False)
        start = next(i for i in range(n) if not inside[i])
        runs = []
        run = []
        for step in range(1, n + 1):
            i = (start + step) % n
            if inside[i]:
                run.append(i)
            elif run:
                runs.append(tuple(run))
                run = []
        flags = []
        for r in runs:
            before = core[(r[0] - 1) % n]
            after = core[(r[-1] + 1) % n]
            flags.append(dm.component_of[before] != dm.component_of[after])
    else:
        inside = [v in dm.vertices for v in p]
        if all(inside):
            return CrossingProfile(M.index, (), (), 0, True)
        runs = []
        run = []
        for i, flag in enumerate(inside):
            if flag:
                run.append(i)
            elif run:
                runs.append(tuple(run))
                run = []
        if run:
            runs.append(tuple(run))
        flags = []
        for r in runs:
            if r[0] == 0 or r[-1] == len(p) - 1:
                flags.append(False)
                continue
            before, after = p[r[0] - 1], p[r[-1] + 1]
            flags.append(dm.component_of[before] != dm.component_of[after])

    return CrossingProfile(
        M.index, tuple(runs), tuple(flags), sum(flags), False
    )


# ---------------------------------------------------------------------------
# moves and certificates


@dataclass(frozen=True)
class BacktrackRemoval:
    j: int  # requires p[j] == p[j+2]; removes positions j+1 and j+2


@dataclass(frozen=True)
class SquareSlide:
    j: int  # replaces p[j]
    w: int  # the new vertex
    square: int  # dual square with corners {p[j-1], p[j], p[j+1], w}


@dataclass(frozen=True)
class Rotate:
    k: int  # loops only: move the basepoint forward by k


@dataclass(frozen=True)
class MoveChain:
    moves: tuple  # in-place moves ending at a constant loop


@dataclass(frozen=True)
class Split:
    rotate: int  # rotation bringing the bridge to the basepoint
    mirror_index: int  # the crossed mirror that triggered surgery
    support_index: int  # the support mirror of the projected bridge
    bridge: tuple  # q1, a prefix of the rotated loop
    projected: tuple  # the bridge projected into the support region
    left: object  # certificate for bridge . reversed(projected)
    right: object  # certificate for projected . rest-of-loop


def _apply_backtrack(p, j):
    if j < 0 or j + 2 >= len(p) or p[j] != p[j + 2]:
        return None
    return p[: j + 1] + p[j + 3 :]


def _apply_slide(D, p, j, w, square):
    if j <= 0 or j >= len(p) - 1:
        return None
    sq = D.complex.cells.get(square)
    if sq is None or sq.dim != 2:
        return None
    if frozenset(sq.corners) != frozenset({p[j - 1], p[j], p[j + 1], w}):
        return None
    if len({p[j - 1], p[j], p[j + 1], w}) != 4:
        return None
    return p[:j] + (w,) + p[j + 1 :]


def _strip_backtracks(p, moves=None):
    """Remove backtracks leftmost-first, recording moves when asked."""
    changed = True
    while changed:
        changed = False
        for j in range(len(p) - 2):
            if p[j] == p[j + 2]:
                p = _apply_backtrack(p, j)
                if moves is not None:
                    moves.append(BacktrackRemoval(j))
                changed = True
                break
    return p


# ---------------------------------------------------------------------------
# efficiency inside a tile


def _slide_target(D, prev, cur, nxt):
    """The least vertex completing {prev, cur, nxt} to a stored dual square."""
    g = D.skeleton()
    h = D.heights
    cands = []
    for w in set(g.neighbors(prev)) & set(g.neighbors(nxt)):
        if h[w] != h[cur] + 2:
            continue
        sq = D.square_by_corners({cur, prev, nxt, w})
        if sq is not None:
            cands.append((w, sq))
    if not cands:
        raise AssertionError(
            f"no dual square raises the local minimum {prev}, {cur}, {nxt}"
        )
    return min(cands)


def _raise_minima_once(D, p, moves):
    """One sweep: slide every interior strict local minimum that is not a
    backtrack. Minima are never adjacent, so the batch is safe."""
    h = D.heights
    spots = [
        j
        for j in range(1, len(p) - 1)
        if h[p[j - 1]] == h[p[j]] + 1
        and h[p[j + 1]] == h[p[j]] + 1
        and p[j - 1] != p[j + 1]
    ]
    for j in spots:
        w, sq = _slide_target(D, p[j - 1], p[j], p[j + 1])
        moves.append(SquareSlide(j, w, sq))
        p = p[:j] + (w,) + p[j + 1 :]
    return p, bool(spots)


def make_efficient(D, p):
    """Raise every interior local minimum of a path lying in a tile.

    Returns the rewritten path together with the move list. The result has no
    interior strict local minima and no backtracks; heights climb to a single
    peak and descend. Paths outside every tile are refused.
    """
    p = check_edge_path(D, p)
    tile_of(D, p)
    moves = []
    guard = 4 * (len(p) + 2) * (D.source.dim + 2) + 16
    while True:
        guard -= 1
        if guard < 0:
            raise AssertionError("efficiency sweep failed to terminate")
        p, raised = _raise_minima_once(D, p, moves)
        before = len(p)
        p = _strip_backtracks(p, moves)
        if not raised and len(p) == before:
            break
    return p, tuple(moves)


def contract_in_tile(D, p):
    """Contract a loop lying in a tile to its basepoint, emitting moves.

    Each round rotates a height maximum to the basepoint, raises all interior
    minima, and strips backtracks; heights are bounded by the tile dimension,
    so the loop shrinks to a point.
    """
    p = check_edge_path(D, p)
    if not is_loop(p):
        raise ValueError("only loops contract")
    tile_of(D, p)
    h = D.heights
    moves = []
    guard = 8 * (len(p) + 2) * (D.source.dim + 2) + 16
    while len(p) > 1:
        guard -= 1
        if guard < 0:
            raise AssertionError("contraction failed to terminate")
        core = p[:-1]
        top = max(h[v] for v in core)
        if h[p[0]] != top:
            k = next(i for i, v in enumerate(core) if h[v] == top)
            moves.append(Rotate(k))
            p = rotate_loop(p, k)
        p, _raised = _raise_minima_once(D, p, moves)
        p = _strip_backtracks(p, moves)
    return p, tuple(moves)


# ---------------------------------------------------------------------------
# bridges


@dataclass(frozen=True)
class Bridge:
    start: int  # position in the ambient path
    length: int
    path: tuple
    support_index: int  # least mirror the subpath bridges


def _bridges_for_mirror(D, p, dm):
    """Start/end pairs of subpaths whose endpoints lie in the region without
    the whole subpath lying inside."""
    n = len(p)
    inside = [v in dm.vertices for v in p]
    out = []
    for a in range(n):
        if not inside[a]:
            continue
        for b in range(a + 1, n):
            if not inside[b]:
                continue
            if not all(inside[a : b + 1]):
                out.append((a, b))
    return out


def bridges(D, p, mirror_list):
    """Every bridge subpath of ``p``, tagged with its least supporting mirror."""
    p = tuple(p)
    found = {}
    for M in mirror_list:
        dm = dual_mirror(D, M)
        for a, b in _bridges_for_mirror(D, p, dm):
            found.setdefault((a, b), M.index)
    return [
        Bridge(a, b - a, p[a : b + 1], idx) for (a, b), idx in sorted(found.items())
    ]


def minimal_bridge(D, p, mirror_list):
    """The least minimal bridge of a path: no proper subpath is a bridge;
    ties break to the least start, then the least length."""
    all_bridges = bridges(D, p, mirror_list)
    if not all_bridges:
        raise NotABridge("the path has no bridge subpath")
    spans = {(br.start, br.start + br.length) for br in all_bridges}
    minimal = [
        br
        for br in all_bridges
        if not any(
            (a, b) != (br.start, br.start + br.length)
            and br.start <= a
            and b <= br.start + br.length
            for (a, b) in spans
        )
    ]
    return min(minimal, key=lambda br: (br.start, br.length))


def _axes(cube, labels):
    """Map each folding coordinate a cube flips to its local axis and the
    coordinate value at corner zero."""
    lab0 = labels[cube.corners[0]]
    axis_of = {}
    for j in range(cube.dim):
        labj = labels[cube.corners[1 << j]]
        diffs = [c for c in range(len(lab0)) if lab0[c] != labj[c]]
        if len(diffs) != 1:
            raise AssertionError("cube corners disagree in more than one label")
        axis_of[diffs[0]] = (j, lab0[diffs[0]])
    return axis_of


def project_bridge(D, q, M, mirror_list, labels):
    """Project a minimal bridge onto the region of its supporting mirror.

    Every cell a minimal bridge visits lies in some tile that meets the
    mirror; the cell's image is the face of the least such tile pinned at the
    mirror coordinate and at the coordinate of every other mirror that
    contains the cell and meets the mirror. The image does not depend on the
    tile chosen, consecutive images are equal or adjacent, and the endpoints
    are fixed. Repeats and backtracks are stripped from the image.
    """
    q = check_edge_path(D, q)
    dm = dual_mirror(D, M)
    if q[0] not in dm.vertices or q[-1] not in dm.vertices:
        raise NotABridge("bridge endpoints must lie in the mirror region")
    if all(v in dm.vertices for v in q):
        raise NotABridge("the path lies inside the mirror region")

    relevant = [
        N for N in mirror_list if N.index != M.index and N.cells & M.cells
    ]

    image = []
    for v in q:
        carriers = [
            t for t in tops_containing(D, {v}) if D.source.subcells(t) & M.cells
        ]
        if not carriers:
            raise CarrierViolation(
                f"no tile meeting the mirror carries the visited cell {v}"
            )
        tau = min(carriers)
        axis_of = _axes(D.source.cells[tau], labels)

        def pin(N, constraints):
            if N.coordinate not in axis_of:
                raise CarrierViolation(
                    "the carrier does not flip a pinned coordinate"
                )
            j, bit0 = axis_of[N.coordinate]
            side = bit0 ^ N.side
            if constraints.setdefault(j, side) != side:
                raise AssertionError("inconsistent projection constraints")

        constraints = {}
        pin(M, constraints)
        for N in relevant:
            if v in N.cells:
                pin(N, constraints)
        image.append(D.source.face_of(tau, constraints))

    for a, b in zip(image, image[1:]):
        if a != b and not D.adjacent(a, b):
            raise AssertionError("projection steps are neither equal nor adjacent")
    for v in image:
        if v not in dm.vertices:
            raise AssertionError("projection left the mirror region")
    if image[0] != q[0] or image[-1] != q[-1]:
        raise AssertionError("projection moved a bridge endpoint")

    out = [image[0]]
    for v in image[1:]:
        if v != out[-1]:
            out.append(v)
    return _strip_backtracks(tuple(out))


# ---------------------------------------------------------------------------
# surgery


@dataclass(frozen=True)
class SurgeryStep:
    mirror_index: int
    rotate: int
    bridge: tuple
    support_index: int
    projected: tuple
    left: tuple  # bridge . reversed(projected)
    right: tuple  # projected . rest of the rotated loop


def surgery_step(D, p, mirror_list, labels):
    """One splitting step on a loop that crosses a framed mirror.

    Scans mirrors in canonical order for the first with crossings, picks the
    shortest cyclic gap between consecutive crossing runs, takes the least
    minimal bridge inside the gap, projects it, and returns the two strictly
    shorter loops with the data needed to certify the split.
    """
    p = check_edge_path(D, p)
    if not is_loop(p) or len(p) < 2:
        raise ValueError("surgery applies to loops of positive length")

    chosen = None
    for M in mirror_list:
        prof = crossings(D, p, M)
        if prof.count > 0:
            chosen = (M, prof)
            break
    if chosen is None:
        raise NoCrossing("the loop crosses no framed mirror")
    M, prof = chosen

    core = p[:-1]
    n = len(core)
    runs = [r for r, flag in zip(prof.runs, prof.crossing_flags) if flag]
    gaps = []
    for i, r in enumerate(runs):
        nxt = runs[(i + 1) % len(runs)]
        start = r[-1]
        end = nxt[0]
        length = (end - start) % n
        if length == 0:
            length = n
        gaps.append((length, start, end))
    length, start, end = min(gaps)

    rotated = rotate_loop(p, start)
    gap_path = rotated[: length + 1]

    br = minimal_bridge(D, gap_path, mirror_list)
    N = mirror_list[br.support_index]
    projected = project_bridge(D, br.path, N, mirror_list, labels)

    rot = (start + br.start) % n
    rotated = rotate_loop(p, rot)
    q1 = br.path
    if rotated[: len(q1)] != q1:
        raise AssertionError("bridge is not a prefix of the rotated loop")
    q2 = rotated[len(q1) - 1 :]

    left = q1 + tuple(reversed(projected))[1:]
    right = projected + q2[1:]

    if path_length(left) > path_length(p) - 2:
        raise AssertionError("left loop failed to shrink")
    if path_length(right) > path_length(p) - 2:
        raise AssertionError("right loop failed to shrink")
    return SurgeryStep(
        M.index, rot, q1, br.support_index, projected, left, right
    )


def contract_loop(D, p, labels):
    """Contract a loop to a point, producing a replayable certificate tree.

    Requires every framed mirror of the folding to separate; otherwise the
    contraction is refused as unsupported. Loops inside a tile contract by
    moves; crossing loops split by surgery and recurse on strictly shorter
    pieces.
    """
    p = check_edge_path(D, p)
    if not is_loop(p):
        raise ValueError("only loops contract")
    mirror_list = mirrors(D.source, labels)
    for M in mirror_list:
        if not mirror_separates(D.source, M).separates:
            raise Unsupported(f"mirror {M.index} does not separate")
    return _contract(D, p, mirror_list, labels)


def _contract(D, p, mirror_list, labels):
    crossing = any(
        crossings(D, p, M).count > 0 for M in mirror_list
    )
    if not crossing:
        _final, moves = contract_in_tile(D, p)
        return MoveChain(moves)
    step = surgery_step(D, p, mirror_list, labels)
    left = _contract(D, step.left, mirror_list, labels)
    right = _contract(D, step.right, mirror_list, labels)
    return Split(
        step.rotate,
        step.mirror_index,
        step.support_index,
        step.bridge,
        step.projected,
        left,
        right,
    )


# ---------------------------------------------------------------------------
# replay


def verify_certificate(D, p, cert):
    """Replay a certificate against the dual complex; True when every move is
    legal and every leaf ends constant. Nothing from the certificate is
    trusted: squares are looked up, adjacency is rechecked, prefixes are
    compared."""
    try:
        p = check_edge_path(D, p)
    except (ValueError, CellNotFound):
        return False
    if not is_loop(p):
        return False
    return _replay(D, p, cert)


def _replay(D, p, cert):
    if isinstance(cert, MoveChain):
        for mv in cert.moves:
            p = _replay_move(D, p, mv)
            if p is None:
                return False
        return len(p) == 1
    if isinstance(cert, Split):
        if len(p) < 2:
            return False
        core_len = len(p) - 1
        if not (0 <= cert.rotate < core_len):
            return False
        rotated = rotate_loop(p, cert.rotate)
        q1 = tuple(cert.bridge)
        if len(q1) < 2 or rotated[: len(q1)] != q1:
            return False
        proj = tuple(cert.projected)
        if len(proj) < 1 or proj[0] != q1[0] or proj[-1] != q1[-1]:
            return False
        try:
            check_edge_path(D, proj)
        except (ValueError, CellNotFound):
            return False
        q2 = rotated[len(q1) - 1 :]
        left = q1 + tuple(reversed(proj))[1:]
        right = proj + q2[1:]
        return _replay(D, left, cert.left) and _replay(D, right, cert.right)
    return False


def _replay_move(D, p, mv):
    if isinstance(mv, BacktrackRemoval):
        return _apply_backtrack(p, mv.j)
    if isinstance(mv, SquareSlide):
        return _apply_slide(D, p, mv.j, mv.w, mv.square)
    if isinstance(mv, Rotate):
        if not is_loop(p) or len(p) < 2 or not (0 <= mv.k < len(p) - 1):
            return None
        return rotate_loop(p, mv.k)
    return None
