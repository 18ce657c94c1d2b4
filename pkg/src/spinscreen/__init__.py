"""Wigner 6j symbols on the (j12, j23) screen and the geometry of their tetrahedra."""

from .angular import HalfInt, ScreenDomain, SixJLabels, screen_domain, triangle_ok
from .errors import (
    EmptyDomain,
    InvalidSchedule,
    NoRoot,
    NotATriangle,
    OracleRangeExceeded,
    OutOfScreen,
    RecurrenceBreakdown,
)
from .exact import (
    ExactRadical,
    LimitRow,
    ThreeJLabels,
    exact_screen,
    exact_unitarity_defect,
    limit_ls_from_fd,
    sixj,
    sixj_exact,
    threej_exact,
    threej_limit_estimate,
)
from .geometry import (
    ConfigClass,
    CurveSample,
    Tetra,
    TetraEdges,
    caustic_mirror_distance,
    classify_point,
    limit_det_ratio,
    sample_caustic,
    sample_ridges,
    threej_caustic_det,
    volume_squared_cm,
    volume_squared_gram,
)
from .oracle import sixj_oracle_cg
from .recurrence import Screen, build_screen, orthonormality_defect, sixj_column, transpose_defect
from .symmetry import (
    PieroCertificate,
    ReggeData,
    canonical_form,
    classical_orbit,
    degeneracy_flags,
    degenerate_corners,
    full_orbit,
    piero_axis,
    regge_rho,
    regge_transform,
    regge_twin,
    screen_canonical,
    screen_orbit,
    size_from_regge,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
