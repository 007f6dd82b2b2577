"""Built-in complexes used by the command line tools and the test suite.

The registry carries each fixture's complex together with the folding labels
it ships with. Simply connected fixtures are the ones whose loops the
contraction calculus must handle end to end; the torus is the standard
non-separating counterexample, and the two hyperbolized fixtures have
nontrivial loops by construction.
"""

from dataclasses import dataclass
from functools import lru_cache

from .complexes import CubicalComplex, SimplicialComplex, barsub
from .folding import canonical_barsub_folding
from .gromov import boundary_complex, gromov_hyperbolize


@dataclass(frozen=True)
class Fixture:
    name: str
    complex: CubicalComplex
    labels: dict  # vertex id -> coordinate bit tuple
    simply_connected: bool
    description: str


def _sq1():
    X = CubicalComplex.from_maximal_cells([(0, 1, 2, 3)])
    labels = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)}
    return X, labels, True, "a single square"


def _grid2():
    def v(x, y):
        return 3 * y + x

    squares = [
        (v(x, y), v(x + 1, y), v(x, y + 1), v(x + 1, y + 1))
        for x in range(2)
        for y in range(2)
    ]
    X = CubicalComplex.from_maximal_cells(squares)
    labels = {v(x, y): (x % 2, y % 2) for x in range(3) for y in range(3)}
    return X, labels, True, "a 2 by 2 grid of squares"


def _book3():
    squares = [(0, 1, 2 * i + 2, 2 * i + 3) for i in range(3)]
    X = CubicalComplex.from_maximal_cells(squares)
    labels = {0: (0, 0), 1: (1, 0)}
    for i in range(3):
        labels[2 * i + 2] = (0, 1)
        labels[2 * i + 3] = (1, 1)
    return X, labels, True, "three squares sharing a spine edge"


def _cube1():
    X = CubicalComplex.from_maximal_cells([tuple(range(8))])
    labels = {v: ((v >> 0) & 1, (v >> 1) & 1, (v >> 2) & 1) for v in range(8)}
    return X, labels, True, "a single solid cube"


def _torus4():
    def v(x, y):
        return 4 * (y % 4) + (x % 4)

    squares = [
        (v(x, y), v(x + 1, y), v(x, y + 1), v(x + 1, y + 1))
        for x in range(4)
        for y in range(4)
    ]
    X = CubicalComplex.from_maximal_cells(squares)
    labels = {v(x, y): (x % 2, y % 2) for x in range(4) for y in range(4)}
    return X, labels, False, "a flat 4 by 4 torus"


def _gdelta2():
    K = SimplicialComplex([(0, 1, 2)])
    r = gromov_hyperbolize(K, {0: 0, 1: 1, 2: 2})
    return r.complex, r.folding, False, "the hyperbolized triangle"


def _sphere():
    S = barsub(boundary_complex(3))
    r = gromov_hyperbolize(S, canonical_barsub_folding(S))
    return (
        r.complex,
        r.folding,
        False,
        "the hyperbolized barycentric boundary of the 3-simplex",
    )


_REGISTRY = {
    "sq1": _sq1,
    "grid2": _grid2,
    "book3": _book3,
    "cube1": _cube1,
    "torus4": _torus4,
    "gdelta2": _gdelta2,
    "sphere": _sphere,
}

FIXTURE_NAMES = tuple(sorted(_REGISTRY))


@lru_cache(maxsize=None)
def fixture(name):
    builder = _REGISTRY.get(name)
    if builder is None:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    X, labels, sc, desc = builder()
    return Fixture(name, X, labels, sc, desc)


def simply_connected_names():
    return tuple(n for n in FIXTURE_NAMES if fixture(n).simply_connected)


# ---------------------------------------------------------------------------
# extra shapes for exercising edge cases


def rose(m):
    """m squares around a center: a wedge pair for m = 2, a cyclic umbrella
    sharing consecutive spoke edges for m >= 3. Foldable exactly when m is
    even."""
    if m < 2:
        raise ValueError("need at least two squares")
    if m == 2:
        return CubicalComplex.from_maximal_cells([(0, 1, 2, 3), (0, 4, 5, 6)])
    c = 0
    u = [1 + i for i in range(m)]
    w = [1 + m + i for i in range(m)]
    squares = [(c, u[i], u[(i + 1) % m], w[i]) for i in range(m)]
    return CubicalComplex.from_maximal_cells(squares)


def tube(length):
    """A triangular prism tube of the given length; never foldable."""

    def v(i, j):
        return 3 * j + (i % 3)

    squares = [
        (v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1))
        for j in range(length)
        for i in range(3)
    ]
    return CubicalComplex.from_maximal_cells(squares)


def strip(length):
    """A flat row of squares; the planar, foldable cousin of the tube."""

    def v(x, y):
        return (length + 1) * y + x

    squares = [(v(x, 0), v(x + 1, 0), v(x, 1), v(x + 1, 1)) for x in range(length)]
    return CubicalComplex.from_maximal_cells(squares)


def grid3():
    """A 3 by 3 grid of squares with its checkerboard folding."""

    def v(x, y):
        return 4 * y + x

    squares = [
        (v(x, y), v(x + 1, y), v(x, y + 1), v(x + 1, y + 1))
        for x in range(3)
        for y in range(3)
    ]
    X = CubicalComplex.from_maximal_cells(squares)
    labels = {v(x, y): (x % 2, y % 2) for x in range(4) for y in range(4)}
    return X, labels


def two_triangles():
    """Two triangles glued along an edge, with a folding reusing label 0."""
    K = SimplicialComplex([(0, 1, 2), (1, 2, 3)])
    return K, {0: 0, 1: 1, 2: 2, 3: 0}


def cone4():
    """A cone over a 4-cycle; the apex link is the full cycle."""
    K = SimplicialComplex([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1)])
    return K, {0: 0, 1: 1, 2: 2, 3: 1, 4: 2}


def doubled_square_lists():
    """Two squares with the same corner set; fails strict validation."""
    return [(0, 1, 2, 3), (1, 0, 3, 2)]
