"""Multi-point Pade approximants over interpolation tables, with potential-theoretic
estimates of continuation regions, radii and poles."""

from mpade.analysis import (
    ErrorCurve,
    ExclusionFamily,
    Grid,
    NewtonRadius,
    PoleCluster,
    RateEstimate,
    RegionReport,
    continuation_radius,
    divergence_growth,
    error_curve,
    exclusion_family,
    pointwise_radius,
    pole_tracks,
    rate_estimate,
    region_report,
    rstar,
)
from mpade.errors import *  # noqa: F401,F403
from mpade.funcspec import FunctionSpec, compose, evaluate, hermite_table, jet, parse, render
from mpade.numkernel import ComplexPoly, RootMultiset, null_vector, poly_eval, poly_mul, poly_roots
from mpade.pade import PadeApproximant, build, build_row, newton_An, normalize_den, reduce
from mpade.potential import (
    AllAtPoint,
    ArcsineSegment,
    ChebyshevSegment,
    CompactSetSample,
    Dirac,
    Disk,
    ExplicitList,
    FinitePointSet,
    PointMasses,
    RootsOfUnity,
    RowWiseTable,
    Segment,
    UniformCircle,
    green_value,
    log_potential,
    r0,
    rho,
    weakstar_discrepancy,
)

__version__ = "0.1.0"
