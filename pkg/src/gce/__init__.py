"""Entanglement of two-mode Gaussian states from purity measurements.

Classifies two-mode Gaussian states as separable, possibly entangled or
certainly entangled from the three purities (mu1, mu2, mu) alone, and
brackets their logarithmic negativity by the exact values attained on the
extremal states at those purities.
"""

from .core import (
    CovarianceMatrix,
    Diagnostic,
    Invariants,
    PurityPoint,
    StandardForm,
    SymplecticSpectrum,
    default_tolerance,
    from_json,
    from_standard_form,
    invariants,
    is_physical,
    purities,
    symplectic_spectrum,
    to_json,
    to_standard_form,
)
from .entangle import (
    EntanglementReport,
    RegionLabel,
    SlopeCheck,
    classify,
    delta_monotonicity_check,
    is_separable,
    log_negativity,
    ppt_smallest_eigenvalue,
)
from .errors import (
    ConfigurationError,
    GceError,
    InactiveBranchError,
    MalformedInputError,
    OutOfRegionError,
    UnphysicalStateError,
)
from .estimator import EstimateResult, en_max, en_min, entanglement_report, estimate
from .extremal import (
    SqueezedThermalParams,
    glems,
    glems_closed_form,
    gmemms,
    gmems,
    gmems_squeezing,
    squeezed_thermal,
)
from .oracle import (
    SampleConfig,
    crosscheck_closed_forms,
    random_standard_form,
    validate_bounds,
)
from .param import (
    check_purity_constraints,
    delta_bounds,
    purity_from_json,
    purity_point,
    purity_to_json,
    standard_form_from_purities,
)

__version__ = "0.1.0"

__all__ = [
    "CovarianceMatrix",
    "StandardForm",
    "Invariants",
    "SymplecticSpectrum",
    "PurityPoint",
    "Diagnostic",
    "RegionLabel",
    "EntanglementReport",
    "SlopeCheck",
    "EstimateResult",
    "SqueezedThermalParams",
    "SampleConfig",
    "GceError",
    "MalformedInputError",
    "UnphysicalStateError",
    "OutOfRegionError",
    "InactiveBranchError",
    "ConfigurationError",
    "default_tolerance",
    "invariants",
    "symplectic_spectrum",
    "is_physical",
    "purities",
    "to_standard_form",
    "from_standard_form",
    "to_json",
    "from_json",
    "purity_point",
    "standard_form_from_purities",
    "delta_bounds",
    "check_purity_constraints",
    "purity_to_json",
    "purity_from_json",
    "ppt_smallest_eigenvalue",
    "log_negativity",
    "is_separable",
    "classify",
    "delta_monotonicity_check",
    "gmems",
    "glems",
    "glems_closed_form",
    "gmemms",
    "squeezed_thermal",
    "gmems_squeezing",
    "en_max",
    "en_min",
    "estimate",
    "entanglement_report",
    "random_standard_form",
    "validate_bounds",
    "crosscheck_closed_forms",
    "__version__",
]
