"""Hermite-Padé polynomials and coefficient prediction for power series."""

from .approximant import ApproximantValue, eval_at, roots_of_section
from .errors import (
    AlgserError,
    BranchAmbiguity,
    CoefficientOverflow,
    DegreeCollapse,
    InsufficientCoefficients,
    InvalidSpec,
    NoConvergence,
    SingularSystem,
    SpecMismatch,
    ZeroDenominator,
    ZeroTruthWarning,
)
from .hermite_pade import (
    DegreeSpec,
    PolynomialSet,
    build_system,
    dense_solve,
    required_input_length,
    solve_hpp,
    verify_order,
)
from .oracles import EXAMPLES, PredictionRow, parse_oracle, reference_errors, taylor
from .predictor import (
    PredictionState,
    compute_C,
    compute_DJ,
    predict_k,
    predict_next,
    predict_quadratic_fast,
    residual_RJ,
)
from .series import PowerSeries, mul, pow, poly_times_series, truncate

__version__ = "0.1.0"
