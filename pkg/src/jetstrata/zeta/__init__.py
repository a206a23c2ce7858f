from .motivic import (
    BivariateRational,
    IndeterminateForm,
    MissingClasses,
    MotivicZetaExpr,
    PoleMarker,
    motivic_series,
    motivic_zeta,
    to_bivariate,
    top_from_motivic,
    top_rational_from_motivic,
)
from .reconstruct import InconsistentFit, InterpolationFailure, reconstruct_motivic
from .resolution import (
    BlowupStep,
    BlowupTower,
    ResolutionData,
    ResolutionError,
    Stratum,
    load_resolution,
    load_tower,
    numerical_data,
    validate,
)
from .topological import NonLinearDenominator, pole_bound_check, poles, topological_zeta
