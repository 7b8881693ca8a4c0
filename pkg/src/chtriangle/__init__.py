"""Complex hyperbolic triangle groups with an ideal corner.

Construction of the (m, n, ideal) triangle group families, trace-based
isometry classification in SU(2,1), Heisenberg boundary geometry with the
Cygan metric and Ford isometric spheres, three non-discreteness
certificates with interval scans over the angular invariant, and an exact
cyclotomic refutation engine for finite-order elliptic traces.
"""

__version__ = "0.1.0"

from .classify import Classification, IsometryClass, classify, discriminant, trace
from .criteria import (
    NondiscretenessReport,
    ScanResult,
    TableResult,
    jorgensen_condition,
    nondiscreteness_report,
    order_k_locus,
    regular_elliptic_criterion,
    reproduce_table,
    scan_intervals,
    shimizu_condition,
    word_3132_analysis,
    word_order_cos_window,
)
from .cyclotomic import (
    CandidateTrace,
    CyclotomicInt,
    RefutationReport,
    circle_condition,
    euler_phi,
    phi_inequality,
    refute_finite_order,
    trace_circle_rightmost,
)
from .heisenberg import (
    ExtendedPoint,
    HeisenbergPoint,
    IsometricSphere,
    boundary_action,
    cygan_distance,
    cygan_distance_ext,
    heis_inverse,
    heis_mul,
    heis_norm,
    heisenberg_translation,
    isometric_sphere,
    shimizu_violation,
    translation_length,
)
from .linalg import (
    INFINITY,
    bergman_distance,
    cvector,
    form_inverse,
    hermitian_form,
    involution_from_polar,
    is_unitary_for_form,
    normalize_to_su,
    psi,
    vector_type,
    z_chain_polar,
    zr_chain_polar,
)
from .triangles import (
    TriangleGroup,
    TriangleType,
    angular_invariant,
    build_mn_inf,
    build_n_inf_inf,
    parameter_t,
    trace_word_123,
    trace_word_3132,
)

__all__ = [name for name in dir() if not name.startswith("_")]
