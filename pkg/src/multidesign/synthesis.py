"""Schur–Horn constructions and assembly of optimal designs.

The Hermitian matrix with prescribed diagonal and spectrum is built by a
finite chain of real Givens rotations applied to ``diag(spectrum)``: each
rotation pins one diagonal entry to its target while the still-free entries
stay a diagonal sub-block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InternalContradiction, MajorizationViolated
from .linalg import as_family, as_hermitian, eig_hermitian, frame_operator
from .majorization import MAJORIZATION_RTOL, is_majorized
from .spectrum import SPECTRUM_NOISE, OptimalSpectra, ProblemData

NORM_RTOL = 1e-10


@dataclass
class Design:
    """An m-tuple of vector families sharing the same count ``n``.

    Family ``j`` is an ``(n, d_j)`` complex array whose rows are ``f_{i,j}``.
    """

    families: list[np.ndarray]

    def __post_init__(self):
        self.families = [as_family(f) for f in self.families]
        counts = {f.shape[0] for f in self.families}
        if len(counts) != 1:
            raise DimensionMismatch(f"families have differing vector counts {sorted(counts)}")

    @property
    def n(self) -> int:
        return self.families[0].shape[0]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.shape[1] for f in self.families)

    def joint_norms(self) -> np.ndarray:
        """``(sum_j ||f_{i,j}||^2)_i``."""
        return sum(np.sum(np.abs(f) ** 2, axis=1) for f in self.families)

    def frame_operators(self) -> list[np.ndarray]:
        return [frame_operator(f) for f in self.families]

    def stacked(self) -> np.ndarray:
        """The ``(n, sum d_j)`` matrix of concatenated vectors ``(f_{i,1}, ..., f_{i,m})``."""
        return np.concatenate(self.families, axis=1)

    @classmethod
    def from_stacked(cls, g: np.ndarray, dims: Sequence[int]) -> "Design":
        splits = np.cumsum(dims)[:-1]
        return cls(list(np.split(np.asarray(g), splits, axis=1)))


@dataclass(frozen=True)
class GramTarget:
    """Prescribed diagonal and spectrum for an ``n x n`` Gram matrix."""

    diagonal: np.ndarray
    spectrum: np.ndarray

    @classmethod
    def build(cls, diagonal, spectrum) -> "GramTarget":
        """Pad ``spectrum`` with zeros (or drop numerically zero tail entries) to the size of ``diagonal``."""
        a = np.asarray(diagonal, dtype=float).ravel()
        lam = np.sort(np.asarray(spectrum, dtype=float).ravel())[::-1]
        n = a.size
        tol = MAJORIZATION_RTOL * (1.0 + np.max(np.abs(lam), initial=0.0))
        if lam.size > n:
            if np.any(np.abs(lam[n:]) > tol):
                raise MajorizationViolated(
                    f"spectrum has more than {n} non-zero entries; no {n} vectors realize it"
                )
            lam = lam[:n]
        lam = np.concatenate([lam, np.zeros(n - lam.size)])
        lam[(lam < 0) & (lam >= -tol)] = 0.0
        return cls(a, lam)

    @property
    def size(self) -> int:
        return self.diagonal.size


def _schur_horn(diagonal: np.ndarray, spectrum: np.ndarray) -> np.ndarray:
    """Real orthogonal ``W`` with ``diag(W diag(spectrum) W^T) = diagonal``.

    ``spectrum`` must be sorted non-increasing and majorize ``diagonal``.
    """
    n = diagonal.size
    order = np.argsort(-diagonal, kind="stable")
    targets = diagonal[order]
    free = list(range(n))
    values = spectrum.astype(float).copy()
    q = np.eye(n)
    slot_of = np.empty(n, dtype=int)
    scale = MAJORIZATION_RTOL * (1.0 + np.max(np.abs(spectrum), initial=0.0))
    for t in range(n - 1):
        a = targets[t]
        vals = values[free]
        above = [k for k, v in zip(free, vals) if v >= a - scale]
        below = [k for k, v in zip(free, vals) if v <= a + scale]
        if not above or not below:
            raise InternalContradiction("Schur–Horn chain lost feasibility")
        p = min(above, key=lambda k: values[k])
        if abs(values[p] - a) <= scale:
            free.remove(p)
            slot_of[order[t]] = p
            continue
        rest = [k for k in below if k != p]
        if not rest:
            raise InternalContradiction("Schur–Horn chain lost feasibility")
        r = max(rest, key=lambda k: values[k])
        vp, vr = values[p], values[r]
        c2 = min(max((a - vr) / (vp - vr), 0.0), 1.0)
        c, s = np.sqrt(c2), np.sqrt(1.0 - c2)
        rot = np.array([[c, -s], [s, c]])
        q[:, [p, r]] = q[:, [p, r]] @ rot
        values[p] = a
        values[r] = vp + vr - a
        free.remove(p)
        slot_of[order[t]] = p
    slot_of[order[n - 1]] = free[0]
    # current matrix is Q^T diag(spectrum) Q; slot_of maps output index -> position
    return q.T[slot_of, :]


def hermitian_with_diag_and_spectrum(target: GramTarget, return_factor: bool = False):
    """Real symmetric ``G`` with ``diag(G) = target.diagonal`` and ``λ(G) = target.spectrum``.

    With ``return_factor`` the orthogonal ``W`` with ``G = W diag(spectrum) W^T``
    is returned as well.  The diagonal is written back exactly.

    Raises:
        MajorizationViolated: if the diagonal is not majorized by the spectrum.
    """
    a = np.asarray(target.diagonal, dtype=float)
    lam = np.sort(np.asarray(target.spectrum, dtype=float))[::-1]
    if a.size != lam.size:
        raise DimensionMismatch("diagonal and spectrum must have the same length")
    if not is_majorized(a, lam):
        raise MajorizationViolated("diagonal is not majorized by the spectrum")
    w = _schur_horn(a, lam)
    g = (w * lam) @ w.T
    g = 0.5 * (g + g.T)
    np.fill_diagonal(g, a)
    return (g, w) if return_factor else g


def _vectors_from_factor(w: np.ndarray, spectrum: np.ndarray, rank: int, norms: np.ndarray) -> np.ndarray:
    # rows y_i with sum_i y_i y_i^* = diag(spectrum[:rank]) and ||y_i||^2 = norms_i
    y = w[:, :rank] * np.sqrt(np.maximum(spectrum[:rank], 0.0))
    lengths = np.sqrt(np.sum(y ** 2, axis=1))
    return y * (np.sqrt(norms) / np.where(lengths > 0, lengths, 1.0))[:, None]


def frame_with_operator_and_norms(s, norms) -> np.ndarray:
    """A family of ``len(norms)`` vectors with frame operator ``s`` and squared norms ``norms``.

    Returns an ``(n, d)`` array (rows are vectors).

    Raises:
        MajorizationViolated: unless ``norms ≺ λ(s)`` in the extended sense.
    """
    s = as_hermitian(s)
    a = np.asarray(norms, dtype=float).ravel()
    eig = eig_hermitian(s)
    lam = eig.values.copy()
    if lam[-1] < -SPECTRUM_NOISE * (1.0 + abs(lam[0])):
        raise MajorizationViolated("operator is not positive semidefinite")
    lam = np.maximum(lam, 0.0)
    if not is_majorized(a, lam):
        raise MajorizationViolated("norms are not majorized by the spectrum of the operator")
    target = GramTarget.build(a, lam)
    _, w = hermitian_with_diag_and_spectrum(target, return_factor=True)
    r = min(a.size, lam.size)
    y = _vectors_from_factor(w, target.spectrum, r, a)
    return y @ eig.vectors[:, :r].T


def synthesize_optimal_design(
    problem: ProblemData,
    spectra: OptimalSpectra,
    bases: Sequence[np.ndarray] | None = None,
) -> Design:
    """Build an optimal design realizing ``spectra``.

    Eigen-slot ``r`` of family ``j`` receives mass ``mu_{r,j}``.  An ``n``-vector
    frame ``y_i`` in ``R^{d_1}`` with diagonal frame operator ``diag(beta)`` and
    norms ``alpha`` (Schur–Horn on the Gram matrix) is split across families by
    ``f_{i,j} = sum_r y_{i,r} sqrt(mu_{r,j} / beta_r) v_{r,j}`` where ``v_{r,j}``
    are the eigenvectors of ``S_j^0``.  Then ``S_{F_j} = sum_r mu_{r,j} v_{r,j} v_{r,j}^*``
    and ``sum_j ||f_{i,j}||^2 = ||y_i||^2 = alpha_i``.
    """
    bases = list(bases) if bases is not None else problem.eigenbases()
    if len(bases) != problem.m:
        raise DimensionMismatch(f"expected {problem.m} bases, got {len(bases)}")
    d1 = problem.dims[0]
    mus = []
    for mu in spectra.mu:
        tol = SPECTRUM_NOISE * (1.0 + np.max(np.abs(mu), initial=0.0))
        if np.any(mu < -tol):
            raise InternalContradiction("optimal spectrum has negative entries")
        mus.append(np.maximum(mu, 0.0))
    beta = np.zeros(d1)
    for mu in mus:
        beta[: mu.size] += mu
    alpha = problem.weights
    try:
        target = GramTarget.build(alpha, beta)
        _, w = hermitian_with_diag_and_spectrum(target, return_factor=True)
    except MajorizationViolated as exc:
        raise InternalContradiction(f"certified spectra are not realizable: {exc}") from exc
    # beta is non-increasing by construction, so W's leading columns follow the row order
    if not np.all(np.diff(beta) <= SPECTRUM_NOISE * (1.0 + beta.max(initial=0.0))):
        raise InternalContradiction("row water is not non-increasing")
    y = _vectors_from_factor(w, target.spectrum, d1, alpha)
    safe = np.where(beta > 0, beta, 1.0)
    families = []
    for mu, v in zip(mus, bases):
        d = mu.size
        coeff = np.sqrt(mu / safe[:d])
        families.append((y[:, :d] * coeff) @ np.asarray(v, dtype=complex).T)
    design = Design(families)
    # exact joint-norm restoration (removes ~1e-16 drift)
    ratio = np.sqrt(alpha / design.joint_norms())
    return Design([f * ratio[:, None] for f in design.families])


def optimal_design(problem: ProblemData) -> tuple[Design, OptimalSpectra]:
    """Solve ``problem`` and synthesize an optimal design for it."""
    from .spectrum import solve

    _, spectra = solve(problem)
    return synthesize_optimal_design(problem, spectra), spectra
