"""Optimal spectra for the joint frame operator distance.

Given weights ``alpha`` (length ``n``), a dimension profile ``d`` and the
decreasing spectra ``lambda_j`` of the initial frame operators, the minimum of

    Theta(Phi) = sum_j ||S_j^0 - S_{F_j}||_F^2

over designs with ``sum_j ||f_ij||^2 = alpha_i`` is ``sum_j ||delta_j||^2``
where ``delta_j = min(b[:d_j], lambda_j)`` and ``b`` is a non-decreasing,
block-constant vector of length ``d_1`` built by blockwise waterfilling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InternalContradiction, InvalidProblem
from .linalg import as_family, as_hermitian, eig_hermitian, frame_operator
from .majorization import MAJORIZATION_RTOL, is_majorized, waterfill_solve

SPECTRUM_NOISE = 1e-10


def _check_nonincreasing(v: np.ndarray, tol: float = 0.0) -> bool:
    return bool(np.all(np.diff(v) <= tol))


@dataclass
class ProblemData:
    """Weights, dimension profile and initial spectra of one approximation problem.

    ``operators`` (the initial frame operators ``S_j^0``) and ``bases``
    (unitary ``V_j`` whose columns are eigenvectors matching ``spectra``) are
    optional; without them the initial operators are taken to be
    ``diag(lambda_j)`` in the standard basis.
    """

    weights: np.ndarray
    dims: tuple[int, ...]
    spectra: list[np.ndarray]
    operators: list[np.ndarray] | None = None
    bases: list[np.ndarray] | None = None

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float).ravel()
        self.dims = tuple(int(d) for d in self.dims)
        self.spectra = [np.asarray(s, dtype=float).ravel() for s in self.spectra]
        a = self.weights
        if a.size == 0 or not np.all(np.isfinite(a)):
            raise InvalidProblem("weights must be a non-empty finite vector")
        if np.any(a <= 0):
            raise InvalidProblem("weights must be positive")
        if not _check_nonincreasing(a):
            raise InvalidProblem("weights must be non-increasing")
        if len(self.dims) == 0 or min(self.dims) < 1:
            raise InvalidProblem("dims must be positive integers")
        if not _check_nonincreasing(np.asarray(self.dims)):
            raise InvalidProblem("dims must be non-increasing")
        if self.dims[0] > a.size:
            raise InvalidProblem("dims[0] must not exceed the number of weights")
        if len(self.spectra) != len(self.dims):
            raise InvalidProblem(f"expected {len(self.dims)} spectra, got {len(self.spectra)}")
        for j, (lam, d) in enumerate(zip(self.spectra, self.dims)):
            if lam.size != d:
                raise InvalidProblem(f"spectrum {j} has length {lam.size}, expected {d}")
            if not np.all(np.isfinite(lam)) or np.any(lam < 0):
                raise InvalidProblem(f"spectrum {j} must be entrywise non-negative")
            if not _check_nonincreasing(lam):
                raise InvalidProblem(f"spectrum {j} must be non-increasing")
        if self.operators is not None:
            self.operators = [as_hermitian(s) for s in self.operators]
            if [s.shape[0] for s in self.operators] != list(self.dims):
                raise DimensionMismatch("operator sizes do not match dims")
        if self.bases is not None:
            self.bases = [np.asarray(v, dtype=complex) for v in self.bases]
            if [v.shape for v in self.bases] != [(d, d) for d in self.dims]:
                raise DimensionMismatch("basis shapes do not match dims")

    @property
    def n(self) -> int:
        return self.weights.size

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def top_eigenvalue(self) -> float:
        """``M = max_j ||S_j^0||``."""
        return max(float(lam[0]) for lam in self.spectra)

    def initial_operators(self) -> list[np.ndarray]:
        if self.operators is not None:
            return self.operators
        return [
            (v * lam) @ v.conj().T
            for v, lam in zip(self.eigenbases(), self.spectra)
        ]

    def eigenbases(self) -> list[np.ndarray]:
        if self.bases is not None:
            return self.bases
        return [np.eye(d, dtype=complex) for d in self.dims]

    @classmethod
    def from_operators(cls, weights, operators: Sequence) -> "ProblemData":
        """Build a problem from the initial frame operators ``S_j^0``.

        Spectra and eigenbases come from :func:`eig_hermitian`; eigenvalues in
        ``[-1e-10 * (1 + ||S||), 0)`` are treated as zero.
        """
        ops = [as_hermitian(s) for s in operators]
        spectra, bases = [], []
        for s in ops:
            eig = eig_hermitian(s)
            lam = eig.values.copy()
            floor = -SPECTRUM_NOISE * (1.0 + abs(lam[0]))
            if np.any(lam < floor):
                raise InvalidProblem("initial operators must be positive semidefinite")
            spectra.append(np.maximum(lam, 0.0))
            bases.append(eig.vectors)
        return cls(weights, tuple(s.shape[0] for s in ops), spectra, ops, bases)

    @classmethod
    def from_design(cls, weights, families: Sequence) -> "ProblemData":
        """Build a problem from an initial design given as row-wise vector families."""
        return cls.from_operators(weights, [frame_operator(as_family(f)) for f in families])


@dataclass(frozen=True)
class BlockCertificate:
    """Majorization test for one block: ``weights ≺ water`` (extended sense)."""

    start: int
    stop: int
    level: float
    weights: np.ndarray
    water: np.ndarray
    holds: bool


@dataclass(frozen=True)
class WaterfillSolution:
    """Block levels ``b_1 < ... < b_p`` with sizes ``s_k`` and cut indices ``i_k``."""

    constants: np.ndarray
    sizes: tuple[int, ...]
    cuts: tuple[int, ...]
    certificates: tuple[BlockCertificate, ...] = field(default=(), compare=False)
    rejected: int = field(default=0, compare=False)

    @property
    def b(self) -> np.ndarray:
        return np.repeat(self.constants, self.sizes)

    @property
    def p(self) -> int:
        return len(self.sizes)

    def c(self, top: float) -> np.ndarray:
        """Completion-side levels ``M * 1 - b`` (non-increasing) for translation ``top``."""
        return top - self.b


@dataclass(frozen=True)
class OptimalSpectra:
    delta: list[np.ndarray]
    nu: list[np.ndarray]
    mu: list[np.ndarray]
    min_value: float
    top: float


def _rows(problem: ProblemData) -> list[np.ndarray]:
    # row r collects lambda_{r,j} over every j with r < d_j
    return [
        np.array([lam[r] for lam, d in zip(problem.spectra, problem.dims) if r < d])
        for r in range(problem.dims[0])
    ]


def row_water(rows: Sequence[np.ndarray], level: float) -> np.ndarray:
    """``(sum_j (lambda_{r,j} - level)^+)_r`` for each row ``r`` given."""
    return np.array([np.sum(np.maximum(row - level, 0.0)) for row in rows])


def _block(problem: ProblemData, rows, start: int, stop: int) -> BlockCertificate:
    d1 = problem.dims[0]
    # a block that reaches the last row absorbs all trailing weights
    w = problem.weights[start:problem.n if stop == d1 else stop]
    level = waterfill_solve(w.sum(), rows[start:stop])
    water = row_water(rows[start:stop], level)
    return BlockCertificate(start, stop, level, w, water, is_majorized(w, water))


def compute_b(problem: ProblemData) -> WaterfillSolution:
    """Construct the block-constant vector ``b`` by inductive waterfilling.

    Starting after the last cut ``i_k``, every candidate end ``i`` from ``d_1``
    down to ``i_k + 1`` gets a level from :func:`waterfill_solve` on rows
    ``i_k+1..i`` (with weights through ``n`` when ``i = d_1``); the largest
    candidate whose weights are majorized by the resulting row water becomes
    the next cut.

    Raises:
        InternalContradiction: if no candidate passes or the levels fail to
            increase strictly.
    """
    d1 = problem.dims[0]
    rows = _rows(problem)
    cuts, constants, certs = [0], [], []
    rejected = 0
    start = 0
    while start < d1:
        for stop in range(d1, start, -1):
            cert = _block(problem, rows, start, stop)
            if cert.holds:
                break
            rejected += 1
        else:
            raise InternalContradiction(f"no admissible block starting at row {start + 1}")
        if constants:
            gap = cert.level - constants[-1]
            if gap <= MAJORIZATION_RTOL * (1.0 + abs(cert.level)):
                raise InternalContradiction(
                    f"block levels not strictly increasing ({constants[-1]!r} then {cert.level!r})"
                )
        constants.append(cert.level)
        certs.append(cert)
        cuts.append(cert.stop)
        start = cert.stop
    sizes = tuple(int(b - a) for a, b in zip(cuts[:-1], cuts[1:]))
    return WaterfillSolution(np.array(constants), sizes, tuple(cuts), tuple(certs), rejected)


def verify_certificates(problem: ProblemData, wf: WaterfillSolution) -> list[bool]:
    """Recheck the blockwise majorization of every block of ``wf`` from scratch."""
    rows = _rows(problem)
    out = []
    for k, (a, b) in enumerate(zip(wf.cuts[:-1], wf.cuts[1:])):
        w = problem.weights[a:problem.n if b == problem.dims[0] else b]
        out.append(is_majorized(w, row_water(rows[a:b], wf.constants[k])))
    return out


def compute_optimal_spectra(problem: ProblemData, wf: WaterfillSolution) -> OptimalSpectra:
    """Optimal spectral gaps ``delta_j``, translated spectra ``nu_j`` and approximant spectra ``mu_j``."""
    b = wf.b
    if b.size != problem.dims[0]:
        raise DimensionMismatch("waterfill solution does not match the problem")
    top = problem.top_eigenvalue
    c = wf.c(top)
    delta, nu, mu = [], [], []
    for lam, d in zip(problem.spectra, problem.dims):
        dj = np.minimum(b[:d], lam)
        delta.append(dj)
        nu.append(np.maximum(c[:d], top - lam))
        mu.append(lam - dj)
    min_value = float(sum(np.sum(dj ** 2) for dj in delta))
    return OptimalSpectra(delta, nu, mu, min_value, top)


def solve(problem: ProblemData) -> tuple[WaterfillSolution, OptimalSpectra]:
    wf = compute_b(problem)
    return wf, compute_optimal_spectra(problem, wf)


def minimum_value(problem: ProblemData) -> float:
    """Closed-form minimum of the joint frame operator distance (squared)."""
    return solve(problem)[1].min_value
