"""Minimal 3-triangulations of toroidal polyhedra with exact rational geometry."""

from .congraph import (
    ConnectionGraph,
    Decomposition,
    MVerdict,
    Piece,
    build_graph,
    check_m_division,
    is_planar,
    is_single_cycle,
    isomorphic,
    load_fixture,
    validate_decomposition,
)
from .constructions import (
    ConstructionOutput,
    attach_simple,
    bipyramid,
    chain_csaszar,
    chain_csaszar_shared_tet,
    csaszar,
    cycle_closure,
    glue_on_face,
    pyramid,
    schoenhardt,
    toroid_p9,
)
from .engine import (
    Certificate,
    SearchStatus,
    Triangulation,
    candidate_tets,
    certify_minimal,
    is_inner_tet,
    is_valid_triangulation,
    lower_bound,
    search,
)
from .geometry import Point3, orient3d, tet_volume6, tets_classify, triangles_classify
from .surface import TriMesh, enclosed_volume6, is_embedded, parse_off, point_in_solid, validate, write_off

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ConnectionGraph",
    "ConstructionOutput",
    "Decomposition",
    "MVerdict",
    "Piece",
    "Point3",
    "SearchStatus",
    "TriMesh",
    "Triangulation",
    "attach_simple",
    "bipyramid",
    "build_graph",
    "candidate_tets",
    "certify_minimal",
    "chain_csaszar",
    "chain_csaszar_shared_tet",
    "check_m_division",
    "csaszar",
    "cycle_closure",
    "enclosed_volume6",
    "glue_on_face",
    "is_embedded",
    "is_inner_tet",
    "is_planar",
    "is_single_cycle",
    "is_valid_triangulation",
    "isomorphic",
    "load_fixture",
    "lower_bound",
    "orient3d",
    "parse_off",
    "point_in_solid",
    "pyramid",
    "schoenhardt",
    "search",
    "tet_volume6",
    "tets_classify",
    "toroid_p9",
    "triangles_classify",
    "validate",
    "validate_decomposition",
    "write_off",
]
