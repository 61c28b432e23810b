"""Best approximation of a positive matrix by G-Bessel sequences with prescribed norms.

A G-Bessel sequence here is a list of ``m`` operators ``T_i : C^d -> C^n``
with ``||T_i||_F^2 = alpha_i``; its frame operator is ``sum_i T_i^* T_i``.
Such frame operators are exactly those of vector families of ``n*m``
vectors with squared norms ``alpha_i / n`` (each repeated ``n`` times), so
the approximation problem reduces to the single-space vector problem and
the optimal operators are obtained by cutting the optimal synthesis matrix
into consecutive blocks of ``n`` rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidWeights
from .linalg import as_hermitian, eig_hermitian, frame_operator
from .majorization import is_majorized
from .spectrum import ProblemData, solve
from .synthesis import synthesize_optimal_design

NORM_RTOL = 1e-10


@dataclass
class GOperatorFamily:
    """Operators ``T_i`` stored as ``(n, d)`` complex matrices."""

    operators: list[np.ndarray]

    def __post_init__(self):
        self.operators = [np.asarray(t, dtype=complex) for t in self.operators]
        shapes = {t.shape for t in self.operators}
        if len(shapes) != 1 or any(t.ndim != 2 for t in self.operators):
            raise DimensionMismatch(f"operators must share one (n, d) shape, got {sorted(shapes)}")

    @property
    def analysis_dim(self) -> int:
        return self.operators[0].shape[0]

    @property
    def domain_dim(self) -> int:
        return self.operators[0].shape[1]

    def squared_norms(self) -> np.ndarray:
        return np.array([float(np.sum(np.abs(t) ** 2)) for t in self.operators])


def _check_alpha(alpha) -> np.ndarray:
    a = np.asarray(alpha, dtype=float).ravel()
    if a.size == 0 or not np.all(np.isfinite(a)) or np.any(a <= 0):
        raise InvalidWeights("alpha must be a non-empty vector of positive weights")
    if np.any(np.diff(a) > 0):
        raise InvalidWeights("alpha must be non-increasing")
    return a


def expanded_weights(alpha, analysis_dim: int) -> np.ndarray:
    """``(alpha_1/n * 1_n, ..., alpha_m/n * 1_n)``."""
    if analysis_dim < 1:
        raise DimensionMismatch("analysis dimension must be positive")
    a = _check_alpha(alpha)
    return np.repeat(a / analysis_dim, analysis_dim)


def gframe_feasible(spectrum, alpha, analysis_dim: int) -> bool:
    """Whether some family in the norm class has frame operator with eigenvalues ``spectrum``."""
    lam = np.asarray(spectrum, dtype=float).ravel()
    return is_majorized(expanded_weights(alpha, analysis_dim), lam)


def gframe_operator(family: GOperatorFamily) -> np.ndarray:
    """``sum_i T_i^* T_i``."""
    s = sum(t.conj().T @ t for t in family.operators)
    return 0.5 * (s + s.conj().T)


def lift(vectors: np.ndarray, m: int, analysis_dim: int) -> GOperatorFamily:
    """Operators ``T_i = W_i T`` from ``n*m`` vectors given row-wise.

    ``T`` maps ``x`` to ``(<x, f_k>)_k``, so its rows are ``f_k^*``; ``W_i``
    keeps coordinates ``(i-1)n+1 .. in`` in the standard basis of ``C^n``.
    """
    f = np.asarray(vectors, dtype=complex)
    if f.shape[0] != m * analysis_dim:
        raise DimensionMismatch(f"expected {m * analysis_dim} vectors, got {f.shape[0]}")
    t = f.conj()
    return GOperatorFamily([t[i * analysis_dim:(i + 1) * analysis_dim] for i in range(m)])


@dataclass(frozen=True)
class GFrameSolution:
    min_value: float
    family: GOperatorFamily
    vector_problem: ProblemData
    vectors: np.ndarray
    delta: np.ndarray


def gframe_optimize(a, alpha, analysis_dim: int) -> tuple[float, GOperatorFamily]:
    """Minimal ``||A - S_F||_F^2`` over the norm class and an optimal family attaining it."""
    sol = gframe_solve(a, alpha, analysis_dim)
    return sol.min_value, sol.family


def gframe_solve(a, alpha, analysis_dim: int) -> GFrameSolution:
    """Like :func:`gframe_optimize`, keeping the intermediate vector problem.

    Raises:
        DimensionMismatch: if ``dim(A) > m * analysis_dim`` (the reduced vector
            problem needs at least as many vectors as the dimension).
        InvalidWeights: if ``alpha`` is not positive and non-increasing.
    """
    a = as_hermitian(a)
    weights = expanded_weights(alpha, analysis_dim)
    m = weights.size // analysis_dim
    d = a.shape[0]
    if d > weights.size:
        raise DimensionMismatch(f"dim(A) = {d} exceeds the {weights.size} available vectors")
    problem = ProblemData.from_operators(weights, [a])
    _, spectra = solve(problem)
    design = synthesize_optimal_design(problem, spectra)
    vectors = design.families[0]
    family = lift(vectors, m, analysis_dim)
    return GFrameSolution(spectra.min_value, family, problem, vectors, spectra.delta[0])


def schatten_distances(a, s, ps=(1, 2, 4, np.inf)) -> dict:
    """Schatten-p norms of ``A - S`` from the eigenvalues of the Hermitian difference."""
    ev = np.abs(eig_hermitian(as_hermitian(a) - as_hermitian(s)).values)
    out = {}
    for p in ps:
        key = "inf" if np.isinf(p) else str(int(p)) if float(p).is_integer() else str(p)
        out[key] = float(ev.max(initial=0.0)) if np.isinf(p) else float(np.sum(ev ** p) ** (1.0 / p))
    return out


def vector_frame_operator(sol: GFrameSolution) -> np.ndarray:
    return frame_operator(sol.vectors)
