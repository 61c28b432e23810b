"""Optimal multi-space frame designs under joint norm constraints.

Computes the exact minimum of the joint frame operator distance over
families with prescribed joint norms, builds optimal families, checks
local minima by projected gradient descent and handles the G-frame variant.
"""

from .descent import DescentConfig, DescentTrace, descend, grad_theta, multistart, theta
from .errors import (
    ConvergenceError,
    DegenerateVector,
    DimensionMismatch,
    InternalContradiction,
    InvalidProblem,
    InvalidWeights,
    MajorizationViolated,
    MultiDesignError,
    NonHermitianInput,
    ProblemFormatError,
)
from .gframes import GOperatorFamily, gframe_feasible, gframe_optimize, gframe_solve
from .linalg import eig_hermitian, frame_operator, jfod_squared
from .majorization import is_majorized, is_submajorized, waterfill_solve
from .spectrum import OptimalSpectra, ProblemData, WaterfillSolution, compute_b, compute_optimal_spectra, minimum_value, solve
from .synthesis import Design, GramTarget, hermitian_with_diag_and_spectrum, optimal_design, synthesize_optimal_design

__version__ = "0.1.0"
