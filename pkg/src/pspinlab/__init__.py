"""Numerical laboratory for transverse-field p-spin glasses on the hypercube.

Matrix-free Hamiltonians H = U + Gamma T on Q_n, exact stationary
Gaussian disorder sampling, quenched pressure estimators (dense, closed
form, stochastic Lanczos quadrature), limit formulas with rigorous
finite-size bound sandwiches, and large-deviation cluster geometry.
"""

from .analytics import (
    BETA_CRITICAL,
    Phase,
    PhasePoint,
    RayCovariance,
    cluster_failure_bound,
    critical_field,
    gaussian_min_bound,
    gibbs_lower_bound,
    golden_thompson_upper_bound,
    h_function,
    par_pressure,
    qrem_pressure,
    ray_count_bound,
    ray_covariance_cap,
    ray_covariance_sum,
    ray_event_bound,
    rem_pressure,
)
from .bits import MAX_DIMENSION, fwht, popcount, popcount_array
from .configurations import (
    INFINITE_ORDER,
    ModelKind,
    ModelParameters,
    SpinConfiguration,
    enumerate_configurations,
    flip,
    hamming_distance,
    overlap,
)
from .disorder import (
    DisorderField,
    SamplerKind,
    WalshSpectrum,
    covariance_profile,
    default_sampler,
    exact_covariance,
    sample_field,
    spectral_field_values,
    spherical_delta_bound,
    spherical_delta_exact,
    walsh_spectrum,
)
from .errors import (
    ConfigError,
    ContractViolationError,
    ConvergenceError,
    PspinError,
    ResourceLimitError,
)
from .geometry import (
    ClusterComponent,
    ClusterReport,
    Ray,
    cluster_report,
    component_diameter,
    count_rays,
    deviation_set,
    edge_connected_components,
    enclosing_ball,
    enumerate_rays,
    is_edge_connected_ray,
)
from .harness import (
    ExperimentConfig,
    HarnessResult,
    SweepRecord,
    derive_seed,
    emit,
    load_config,
    run_audit_bounds,
    run_clusters,
    run_converge,
    run_covariance,
    run_experiment,
    run_monotonicity,
    run_phase_diagram,
    run_pressure,
    run_self_average,
)
from .operators import (
    HamiltonianOperator,
    VertexSet,
    apply_boundary,
    apply_restricted,
    apply_transverse,
    ball,
    decomposition_residual,
    dense_hamiltonian,
    dense_restricted,
    operator_norm_estimate,
    transverse_ball_norm_bound,
)
from .persistence import config_hash, load_field, save_field
from .pressure import (
    PressureEstimate,
    PressureMethod,
    SlqQuadratures,
    dense_spectrum,
    ground_energy,
    pressure_classical,
    pressure_exact,
    pressure_from_quadratures,
    pressure_from_spectrum,
    pressure_slq,
    slq_quadratures,
)

__version__ = "0.1.0"
