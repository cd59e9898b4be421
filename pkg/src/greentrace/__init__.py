"""Planar domains from the boundary flux of their Green's function.

The forward operator sends a normalized conformal map ``f: D -> Omega`` to the
flux ``phi(s) = 1 / (2*pi*|f'|)`` along the boundary; :func:`reconstruct`
inverts it.
"""

from .analysis import (
    SymmetryReport,
    UnivalenceReport,
    curvature_from_flux,
    curvature_geometric,
    d2n_curvature_form,
    paatero_check,
    reflection_symmetry,
    rotational_symmetry,
    symmetry_report,
)
from .errors import (
    ConvergenceFailure,
    DegenerateDerivative,
    EvaluationTooCloseToBoundary,
    GreentraceError,
    GridTooCoarse,
    InconsistentAnchors,
    NonPositiveModulus,
    NonPositiveSample,
    NormalizationViolation,
    SelfIntersectingBoundary,
    SeriesNotConverged,
    UnwrapAmbiguity,
)
from .estimator import GreenFluxReconstructor
from .forward import PolynomialMap, SampledBoundaryMap, boundary_modulus_of, conformal_map_of, forward_operator
from .harmonic import FourierCoefficients, analyze, differentiate, hilbert, schwarz_extend, synthesize
from .inverse import Reconstruction, reconstruct, reconstruct_free
from .mapping import (
    Anchors,
    BoundaryTrace,
    ConformalMap,
    eval_f,
    eval_fprime,
    eval_fsecond,
    from_boundary_modulus,
    green_level_curve,
    trace_boundary,
)
from .profile import CumulativePhase, FluxProfile, build_phase, invert_phase, validate_flux

__version__ = "0.1.0"
