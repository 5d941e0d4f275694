"""Dilatively stable processes: simulation, transforms, and scaling checks.

The package builds additive processes whose finite dimensional
log-characteristic functions scale jointly in time and argument, realises
them as random integrals of exponential weights against time-changed Levy
drivers, maps them through the Lamperti-type transform family, and verifies
every scaling law statistically through empirical characteristic functions
with closed-form oracles where those exist.
"""

from .drivers import (
    CompoundPoissonDriver,
    GammaDriver,
    GaussianDriver,
    GaussianJumps,
    SymmetricStableDriver,
    TwoPointJumps,
    driver_from_dict,
    driver_to_dict,
    has_finite_log_moment,
    max_moment_order,
    mean_rate,
    sample_increment,
    sample_increments,
    sample_two_sided,
    unit_levy_exponent,
    variance_rate,
)
from .ecf import (
    DilativeLaw,
    EcfEstimate,
    EnsembleConfig,
    IdtLaw,
    PathEnsemble,
    ScalingReport,
    ScalingRow,
    TestPoint,
    TimeStableLaw,
    TranslativeLaw,
    apply_transforms,
    check_scaling,
    derive_rng,
    estimate_ecf,
    estimate_log_cf,
    increment_pair,
    marginal_points,
    oracle_joint_log_cf,
    oracle_log_cf,
    simulate_ensemble,
    transform_ensemble,
)
from .errors import (
    DegenerateDelta,
    DilastabError,
    GridMissingOrigin,
    GridMissingUnit,
    InadmissibleParams,
    LowMagnitude,
    NonPositiveTime,
    NotEnoughSamples,
    OffGrid,
    OracleOutOfDomain,
    TimeChangeRange,
    WrongRegime,
)
from .integrator import PATH_ROLES, SamplePath, TimeGrid, ibp_integral, rs_integral
from .processes import (
    DilationParams,
    SimulationPlan,
    extract_background,
    lamperti_inverse,
    lamperti_transform,
    ou_evolve,
    ou_from_integral,
    plan_dilative,
    reparam_idt,
    reparam_time_stable,
    simulate_dilative,
    simulate_driving,
)
from .timechange import TimeChange, tau, tau_density, tau_inv
from .validation import (
    CONDITION_A,
    CONDITION_B,
    DEGENERATE_EQUAL,
    INADMISSIBLE,
    SELFSIMILAR,
    AdmissibilityVerdict,
    admissibility,
    cascade_partial_sums,
    required_moment_order,
)

__version__ = "0.1.0"
