"""Geometry of thermodynamic state space from energy Hessians.

The package builds the second-derivative metric of an equation of state,
its scalar curvature by several independent routes, the conformally
related entropy-representation metric, degeneracy loci and critical
points, the Hessian-image surface classification, and geodesics of the
metric connection.
"""

from .errors import (
    DomainError,
    FrameSingular,
    NoCriticalPoint,
    NoRoot,
    SingularState,
    StepFailure,
    ThermogeomError,
    UnsupportedModel,
)
from .expressions import Expression, parse_expression
from .eos_models import (
    Berthelot,
    Chart,
    Coefficients,
    CoefficientPartials,
    ConstantCv,
    ConstitutiveModel,
    DerivativeStack,
    GasParameters,
    IdealGas,
    NumericEnergy,
    StatePoint,
    VanDerWaals,
    load_model,
    make_model,
    vdw_entropy,
)
from .metric_core import (
    MetricTensor2,
    SignatureClass,
    SignatureKind,
    determinant_report,
    eigen_signature,
    identity_residuals,
    ruppeiner_metric,
    speed_of_sound,
    weinhold_metric,
)
from .curvature import (
    CurvatureReport,
    FlatnessClass,
    curvature_report,
    laplace_beltrami_log_t,
    negativity_test,
    ruppeiner_direct_curvature,
    ruppeiner_from_weinhold,
    scalar_curvature_closed2d,
    scalar_curvature_constant_cv,
    scalar_curvature_elementary,
    scalar_curvature_tensorial,
    zero_curvature_classify,
)
from .hessian_surface import (
    HessianPoint,
    RadialClass,
    hessian_map,
    radial_pairing,
)
from .critical_locus import (
    CriticalPoint,
    LocusPolyline,
    RootKind,
    coexistence_curve,
    critical_point,
    degeneracy_locus,
    reduced_curves,
    spinodal_slope,
    vdw_volume_roots,
)
from .geodesics import (
    ChristoffelSet,
    GeodesicState,
    GeodesicTrajectory,
    TerminationReason,
    christoffel_elementary,
    integrate_geodesic,
)

__version__ = "0.1.0"

__all__ = [
    "Berthelot",
    "Chart",
    "ChristoffelSet",
    "Coefficients",
    "CoefficientPartials",
    "ConstantCv",
    "ConstitutiveModel",
    "CriticalPoint",
    "CurvatureReport",
    "DerivativeStack",
    "DomainError",
    "Expression",
    "FlatnessClass",
    "FrameSingular",
    "GasParameters",
    "GeodesicState",
    "GeodesicTrajectory",
    "HessianPoint",
    "IdealGas",
    "LocusPolyline",
    "MetricTensor2",
    "NoCriticalPoint",
    "NoRoot",
    "NumericEnergy",
    "RadialClass",
    "RootKind",
    "SignatureClass",
    "SignatureKind",
    "SingularState",
    "StatePoint",
    "StepFailure",
    "TerminationReason",
    "ThermogeomError",
    "UnsupportedModel",
    "VanDerWaals",
    "christoffel_elementary",
    "coexistence_curve",
    "critical_point",
    "curvature_report",
    "degeneracy_locus",
    "determinant_report",
    "eigen_signature",
    "hessian_map",
    "identity_residuals",
    "integrate_geodesic",
    "laplace_beltrami_log_t",
    "load_model",
    "make_model",
    "negativity_test",
    "parse_expression",
    "radial_pairing",
    "reduced_curves",
    "ruppeiner_direct_curvature",
    "ruppeiner_from_weinhold",
    "ruppeiner_metric",
    "scalar_curvature_closed2d",
    "scalar_curvature_constant_cv",
    "scalar_curvature_elementary",
    "scalar_curvature_tensorial",
    "speed_of_sound",
    "spinodal_slope",
    "vdw_entropy",
    "vdw_volume_roots",
    "weinhold_metric",
    "zero_curvature_classify",
]
