"""nuspect: a desk-scale laboratory for spectral set convergence.

Finite matrices and structured infinite-operator models, their spectra and
Fredholm refinements, Riesz projections by contour quadrature, Aluthge
similarity constructions, and quantitative checkers for the convergence of
spectral sets along operator sequences.
"""

from .config import DEFAULT, Tolerances, within
from .errors import (
    AdmissibilityError,
    ContourSpectrumError,
    ContractError,
    ConvergenceError,
    DomainError,
    EnclosureUnavailableError,
    HypothesisError,
    NuspectError,
    OracleUnavailableError,
    ScenarioParseError,
    ScenarioValidationError,
    ShapeError,
    SingularMatrixError,
    UndefinedIndexError,
)
from .linalg import (
    ComplexMatrix,
    EigenResult,
    SvdResult,
    eigenvalues,
    matmul,
    operator_norm,
    polar_decompose,
    psd_power,
    solve,
    svd,
)
from .setlimits import (
    CloudSequence,
    PointCloud,
    cluster_components,
    directed_distance,
    hausdorff_distance,
    liminf_estimate,
    limsup_estimate,
)
from .models import (
    ConstantTail,
    DiagonalModel,
    FiniteMatrixModel,
    GeometricTail,
    HarmonicTail,
    NormEnclosure,
    PerturbedModel,
    ShiftedModel,
    ToeplitzModel,
    TruncationSpec,
    WeightedShiftModel,
    compose_difference_product,
    difference_norm,
    model_from_json,
    model_norm,
    model_to_json,
    symbol_eval,
    truncate,
)
from .spectra import (
    IndexMap,
    SpectrumReport,
    ap_spectrum_grid,
    essential_and_weyl,
    fredholm_index_map,
    full_report,
    riesz_points,
    spectral_radius_gelfand,
    spectrum,
    surjectivity_spectrum_grid,
)
from .contours import (
    CauchyContour,
    CirclePiece,
    PolygonPiece,
    ProjectionReport,
    contour_in_resolvent,
    nonzero_under_radius_perturbation,
    projector_family_convergence,
    spectral_projection,
    verify_projection,
)
from .hyponormal import (
    SimilarityReport,
    aluthge,
    is_p_hyponormal,
    kernel_split_similarity,
    resolvent_distance_identity,
    shift_hyponormality,
)
from .nulab import (
    CheckReport,
    Classification,
    NuDiagnostics,
    OperatorSequence,
    classify_convergence,
    nu_diagnostics,
    nu_nonuniqueness_demo,
)
from .scenario import (
    Scenario,
    ScenarioReport,
    builtin_scenarios,
    emit_report,
    load_builtin,
    parse_scenario,
    run_scenario,
)

__version__ = "0.1.0"
