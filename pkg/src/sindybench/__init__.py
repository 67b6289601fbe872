"""Sparse identification of polynomial ODEs, with a benchmark harness.

Reconstructs governing equations from chaotic trajectory data via four
sparse-regression solvers plus a weak (integral) formulation, selects
hyperparameters by ensemble-averaged corrected AIC, and correlates model
errors with dynamical properties of the underlying systems.
"""

from .errors import (
    ConfigurationError,
    DivergenceError,
    EvaluationError,
    ParseError,
    SindyBenchError,
)
from .features import (
    RegressionProblem,
    WeakConfig,
    assemble_pointwise,
    assemble_weak,
    evaluate_library,
    finite_difference,
    problem_to_csv,
)
from .metrics import (
    CorrelationFit,
    ModelErrors,
    PropertyRecord,
    StabilityCensus,
    best_fit_r2,
    coefficient_error,
    description_length,
    largest_lyapunov,
    nonlinearity_score,
    rmse_error,
    scale_separation,
    stability_census,
)
from .optimizers import (
    FitResult,
    OptimizerConfig,
    SubsetFit,
    exhaustive_best_subset,
    fit,
    lasso_cd,
    miosr,
    sr3,
    stlsq,
)
from .selection import (
    EnsembleResult,
    ParetoScanResult,
    ScanRecord,
    aic_c,
    exact_pointwise_problem,
    fit_ensemble,
    hyperparameter_grid,
    pareto_scan,
    subsample_rows,
    write_scan_csv,
)
from .simulate import (
    NoiseSpec,
    Trajectory,
    add_noise,
    integrate,
    read_trajectory_csv,
    sample_trajectory,
    write_trajectory_csv,
)
from .systems import (
    MonomialBasis,
    PolynomialSystem,
    builtin_registry,
    get_system,
    jacobian_eval,
    load_system,
    monomial_basis,
    rhs_eval,
    save_system,
)

__version__ = "0.1.0"
