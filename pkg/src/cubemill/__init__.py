"""Foldable cubical complexes, hyperbolization, dual complexes, path surgery."""

from .complexes import (
    Cube,
    CubicalComplex,
    LinkResult,
    SimplicialComplex,
    ValidationReport,
    all_links,
    barsub,
    check_subdivision,
    cubical_subdivision,
    link,
    validate_cubical,
    verify_cw,
)
from .curvature import (
    Hyperplane,
    check_npc,
    check_special,
    hyperplane_coordinate,
    hyperplanes,
    is_flag,
    mirror_carries_hyperplane_side,
)
from .decomposition import TreeOfSpaces, build_all_trees, build_tree
from .dual import (
    DualComplex,
    build_dual,
    dual_mirror,
    dual_tile,
    tops_containing,
    verify_dual_axioms,
)
from .errors import (
    CarrierViolation,
    CellNotFound,
    CubemillError,
    FormatError,
    NoCrossing,
    NonSeparatingMirror,
    NotABridge,
    NotAdmissible,
    NotASubdivision,
    NotFoldable,
    NotInTile,
    NotTopCell,
    UnlabeledVertex,
    Unsupported,
    UnsupportedDimension,
)
from .folding import (
    Mirror,
    assert_folding,
    find_folding,
    framings,
    mirror_separates,
    mirrors,
    parallelism_classes,
    verify_folding,
    verify_simplicial_folding,
)
from .formats import (
    dumps_json,
    parse_certificate,
    parse_complex,
    parse_folding,
    serialize_certificate,
    serialize_complex,
    serialize_folding,
)
from .gromov import gromov_hyperbolize, model, verify_gromov_properties
from .surgery import (
    bridges,
    check_edge_path,
    contract_in_tile,
    contract_loop,
    crossings,
    make_efficient,
    minimal_bridge,
    project_bridge,
    random_loop,
    surgery_step,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Cube",
    "CubicalComplex",
    "LinkResult",
    "SimplicialComplex",
    "ValidationReport",
    "all_links",
    "barsub",
    "check_subdivision",
    "cubical_subdivision",
    "link",
    "validate_cubical",
    "verify_cw",
    "Hyperplane",
    "check_npc",
    "check_special",
    "hyperplane_coordinate",
    "hyperplanes",
    "is_flag",
    "mirror_carries_hyperplane_side",
    "TreeOfSpaces",
    "build_all_trees",
    "build_tree",
    "DualComplex",
    "build_dual",
    "dual_mirror",
    "dual_tile",
    "tops_containing",
    "verify_dual_axioms",
    "CarrierViolation",
    "CellNotFound",
    "CubemillError",
    "FormatError",
    "NoCrossing",
    "NonSeparatingMirror",
    "NotABridge",
    "NotAdmissible",
    "NotASubdivision",
    "NotFoldable",
    "NotInTile",
    "NotTopCell",
    "UnlabeledVertex",
    "Unsupported",
    "UnsupportedDimension",
    "Mirror",
    "assert_folding",
    "find_folding",
    "framings",
    "mirror_separates",
    "mirrors",
    "parallelism_classes",
    "verify_folding",
    "verify_simplicial_folding",
    "dumps_json",
    "parse_certificate",
    "parse_complex",
    "parse_folding",
    "serialize_certificate",
    "serialize_complex",
    "serialize_folding",
    "gromov_hyperbolize",
    "model",
    "verify_gromov_properties",
    "bridges",
    "check_edge_path",
    "contract_in_tile",
    "contract_loop",
    "crossings",
    "make_efficient",
    "minimal_bridge",
    "project_bridge",
    "random_loop",
    "surgery_step",
    "verify_certificate",
    "__version__",
]
