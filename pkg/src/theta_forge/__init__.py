"""Exact theta-congruent number toolkit over Q and real quadratic fields."""

from .curve import (
    INFINITY,
    PI_OVER_2,
    PI_OVER_3,
    TWO_PI_OVER_3,
    CurveParams,
    Point,
    ThetaSlope,
    TorsionGroup,
    TorsionReport,
    WeierstrassK,
    build_curve,
    certify_non_torsion,
    ell_add,
    four_torsion_in_K,
    psi3,
    quadratic_twist,
    scalar_mul,
    three_torsion_in_K,
    torsion_subgroup,
    transport_twist_point,
)
from .engine import (
    RankEvidence,
    SearchConfig,
    Status,
    Verdict,
    classify,
    oracle_triangle_search,
    search_points,
    twist_rank_evidence,
)
from .field import (
    QQ,
    FieldDesc,
    QuadElem,
    factor_smooth,
    is_positive_embedded,
    is_square_rational,
    qr_mod_p,
    quad_arith,
    sqrt_in_field,
)
from .poly import (
    GaloisType,
    Obstruction,
    PolyQ,
    QuarticReport,
    build_f_quartic,
    cubic_field_obstruction,
    mod_s_root_analysis,
    quartic_analyze,
    rational_roots,
    roots_in_quadratic_field,
)
from .triangle import (
    TriangleK,
    phi_triangle_to_point,
    psi_point_to_triangle,
    verify_triangle,
)

__version__ = "0.1.0"
