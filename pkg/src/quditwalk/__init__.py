"""Multi-component discrete-time quantum walks with spin-j rotation coins,
their exact pseudovelocity limit laws, and the large-j structure of those
laws."""

from .analysis import (
    ConvexityReport,
    critical_j,
    curvature_at_origin,
    pike_weight,
    pike_weight_paths,
    pike_weight_scaled,
    pike_zero_region,
    rescaled_density,
)
from .coin import EulerAngles, rotation_matrix, small_d, small_d_coeff
from .density import (
    LimitSpec,
    WeightMatrix,
    continuous_density,
    delta_mass,
    konno_density,
    limit_bin_masses,
    limit_moment,
    offdiag_poly,
    weight_matrix_direct,
    weight_matrix_second,
    weight_matrix_top,
    weight_scalar,
)
from .errors import DegenerateSpecError, DomainError
from .halfint import HalfInt, components, dimension
from .qudit import PRESET_NAMES, Qudit, preset_qudit
from .walk import (
    BinnedDensity,
    Distribution,
    WaveField,
    binned_density,
    evolve,
    initial_state,
    position_distribution,
    pseudovelocity_moment,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "BinnedDensity",
    "ConvexityReport",
    "DegenerateSpecError",
    "Distribution",
    "DomainError",
    "EulerAngles",
    "HalfInt",
    "LimitSpec",
    "PRESET_NAMES",
    "Qudit",
    "WaveField",
    "WeightMatrix",
    "binned_density",
    "components",
    "continuous_density",
    "critical_j",
    "curvature_at_origin",
    "delta_mass",
    "dimension",
    "evolve",
    "initial_state",
    "konno_density",
    "limit_bin_masses",
    "limit_moment",
    "offdiag_poly",
    "pike_weight",
    "pike_weight_paths",
    "pike_weight_scaled",
    "pike_zero_region",
    "position_distribution",
    "preset_qudit",
    "pseudovelocity_moment",
    "rescaled_density",
    "rotation_matrix",
    "small_d",
    "small_d_coeff",
    "step",
    "weight_matrix_direct",
    "weight_matrix_second",
    "weight_matrix_top",
    "weight_scalar",
]
