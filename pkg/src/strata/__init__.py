"""Exact-arithmetic intersection (co)homology for triangulated pseudomanifolds.

Simplicial complexes with rational-coefficient homology, intersection
homology for arbitrary perversities, duality and de Rham style checks, and
a closed-form integrability calculus for monomial horn metrics.
"""

from .builders import (
    circle,
    cone_over,
    octahedron,
    pinched_torus,
    point,
    projective_plane,
    sphere,
    suspended_torus,
    torus,
)
from .chains import (
    ChainComplexData,
    RationalSparseMatrix,
    betti_numbers,
    boundary_matrix,
    chain_complex,
    dump_matrix,
    kernel_basis,
    parse_matrix,
    rank,
)
from .errors import (
    DomainError,
    HypothesesUnmetError,
    InputFormatError,
    InvariantViolationError,
    MalformedInputError,
    NotFoundError,
    ResourceCapError,
    StrataError,
)
from .horn import HornMetric, MonomialForm, l1_test, linf_test, validate, volume
from .intersection import (
    Filtration,
    IntersectionChainComplex,
    Perversity,
    default_filtration,
    intersection_betti,
    intersection_chain_complex,
    is_allowable,
    regular_part,
)
from .simplicial import (
    Orientation,
    PseudomanifoldReport,
    Simplex,
    SimplicialComplex,
    barycentric_subdivide,
    check_orientable,
    cone,
    face_closure,
    full_subcomplex,
    link,
    product,
    skeleton,
    suspension,
    validate_pseudomanifold,
)
from .verify import (
    DeRhamTable,
    DualityReport,
    StokesReport,
    check_gm_duality,
    check_lefschetz,
    cone_check,
    de_rham_table,
    duality_range_check,
    stokes_report,
)

__version__ = "0.1.0"
