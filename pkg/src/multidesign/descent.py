"""Projected gradient descent of the joint frame operator distance.

The feasible set is a product of spheres: for every index ``i`` the
concatenated vector ``(f_{i,1}, ..., f_{i,m})`` has squared norm ``alpha_i``.
Steps are projected onto the tangent space and retracted by radial
rescaling, with Armijo backtracking started from a Barzilai–Borwein trial
step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateVector, DimensionMismatch
from .spectrum import ProblemData
from .synthesis import Design

STALL_GRAD_RTOL = 1e-6


@dataclass(frozen=True)
class DescentConfig:
    max_iters: int = 100_000
    step_init: float = 1e-2
    armijo_shrink: float = 0.5
    sufficient_decrease: float = 1e-4
    grad_tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1 or self.step_init <= 0 or self.grad_tol <= 0:
            raise ValueError("max_iters, step_init and grad_tol must be positive")
        if not 0 < self.armijo_shrink < 1:
            raise ValueError("armijo_shrink must lie in (0, 1)")
        if not 0 < self.sufficient_decrease < 1:
            raise ValueError("sufficient_decrease must lie in (0, 1)")


@dataclass
class DescentTrace:
    iterates: list[float]
    final_design: Design
    converged: bool
    grad_norm: float
    iterations: int = 0
    stalled: bool = field(default=False)

    @property
    def final_value(self) -> float:
        return self.iterates[-1]


def _check_dims(problem: ProblemData, design: Design) -> None:
    if design.dims != problem.dims:
        raise DimensionMismatch(f"design dims {design.dims} do not match problem dims {problem.dims}")
    if design.n != problem.n:
        raise DimensionMismatch(f"design has {design.n} vectors, problem has {problem.n} weights")


def _residuals(ops, families):
    return [s0 - f.T @ f.conj() for s0, f in zip(ops, families)]


def theta(problem: ProblemData, design: Design) -> float:
    """``sum_j ||S_j^0 - S_{F_j}||_F^2``."""
    _check_dims(problem, design)
    return float(sum(np.sum(np.abs(e) ** 2) for e in _residuals(problem.initial_operators(), design.families)))


def grad_theta(problem: ProblemData, design: Design) -> list[np.ndarray]:
    """Euclidean gradient of :func:`theta`, family by family.

    Entry ``[i, k]`` of family ``j`` is ``∂θ/∂Re f + i ∂θ/∂Im f`` at
    ``f = f_{i,j}[k]``; row ``i`` equals ``-4 (S_j^0 - S_{F_j}) f_{i,j}``.
    """
    _check_dims(problem, design)
    res = _residuals(problem.initial_operators(), design.families)
    return [-4.0 * f @ e.T for f, e in zip(design.families, res)]


def tangent_projection(design: Design, direction: list[np.ndarray]) -> list[np.ndarray]:
    """Remove from ``direction`` its radial part along each concatenated vector."""
    g = design.stacked()
    v = np.concatenate([np.asarray(d, dtype=complex) for d in direction], axis=1)
    if v.shape != g.shape:
        raise DimensionMismatch("direction does not match the design")
    radial = np.real(np.sum(v * g.conj(), axis=1)) / np.sum(np.abs(g) ** 2, axis=1)
    return Design.from_stacked(v - radial[:, None] * g, design.dims).families


def project_and_retract(design: Design, direction: list[np.ndarray], step: float) -> Design:
    """Move ``step`` along the tangential part of ``direction`` and rescale onto the spheres."""
    g = design.stacked()
    norms = np.sum(np.abs(g) ** 2, axis=1)
    if np.any(norms <= 1e-300):
        raise DegenerateVector("design has a zero concatenated vector")
    t = np.concatenate(tangent_projection(design, direction), axis=1)
    h = g + step * t
    lengths = np.sqrt(np.sum(np.abs(h) ** 2, axis=1))
    if np.any(lengths <= 1e-300) or np.any(lengths < 1e-14 * np.sqrt(norms)):
        raise DegenerateVector("a concatenated vector collapsed to zero")
    return Design.from_stacked(h * (np.sqrt(norms) / lengths)[:, None], design.dims)


def random_design(problem: ProblemData, rng: np.random.Generator) -> Design:
    """Uniform random point on the product of joint spheres (normalized complex Gaussians)."""
    dsum = sum(problem.dims)
    g = rng.standard_normal((problem.n, dsum)) + 1j * rng.standard_normal((problem.n, dsum))
    g *= (np.sqrt(problem.weights) / np.linalg.norm(g, axis=1))[:, None]
    return Design.from_stacked(g, problem.dims)


class _Objective:
    # stacked-coordinate evaluation, avoiding Design construction in the inner loop

    def __init__(self, problem: ProblemData):
        self.ops = problem.initial_operators()
        self.splits = np.cumsum(problem.dims)[:-1]
        self.alpha = problem.weights

    def value_and_grad(self, g: np.ndarray) -> tuple[float, np.ndarray]:
        val = 0.0
        parts = []
        for s0, f in zip(self.ops, np.split(g, self.splits, axis=1)):
            e = s0 - f.T @ f.conj()
            val += float(np.sum(np.abs(e) ** 2))
            parts.append(-4.0 * f @ e.T)
        return val, np.concatenate(parts, axis=1)

    def value(self, g: np.ndarray) -> float:
        val = 0.0
        for s0, f in zip(self.ops, np.split(g, self.splits, axis=1)):
            val += float(np.sum(np.abs(s0 - f.T @ f.conj()) ** 2))
        return val

    def project(self, g: np.ndarray, v: np.ndarray) -> np.ndarray:
        radial = np.real(np.sum(v * g.conj(), axis=1)) / self.alpha
        return v - radial[:, None] * g

    def retract(self, h: np.ndarray) -> np.ndarray:
        lengths = np.sqrt(np.sum(np.abs(h) ** 2, axis=1))
        if np.any(lengths <= 1e-300):
            raise DegenerateVector("a concatenated vector collapsed to zero")
        return h * (np.sqrt(self.alpha) / lengths)[:, None]


def descend(problem: ProblemData, start: Design, config: DescentConfig = DescentConfig()) -> DescentTrace:
    """Minimize :func:`theta` from ``start`` by projected gradient descent.

    Stops when the projected gradient norm is at most
    ``grad_tol * (1 + |theta|)``, when ``max_iters`` is reached, or when the
    line search can no longer produce a decrease (reported as ``stalled``).
    A stalled run still counts as converged when its projected gradient norm
    is below ``1e-6 * (1 + |theta|)``: that is the floating-point floor of the
    Armijo test.  The recorded objective sequence is non-increasing.
    """
    _check_dims(problem, start)
    obj = _Objective(problem)
    g = obj.retract(start.stacked())
    val, grad = obj.value_and_grad(g)
    pg = obj.project(g, grad)
    gnorm = float(np.linalg.norm(pg))
    trace = [val]
    step = config.step_init
    prev_g = prev_pg = None
    converged = stalled = False
    it = 0
    for it in range(1, config.max_iters + 1):
        if gnorm <= config.grad_tol * (1.0 + abs(val)):
            converged = True
            it -= 1
            break
        if prev_g is not None:
            s = (g - prev_g).ravel()
            y = (pg - prev_pg).ravel()
            sy = float(np.real(np.vdot(s, y)))
            if sy > 0:
                step = float(np.real(np.vdot(s, s))) / sy
        step = min(max(step, 1e-12), 1e12)
        accepted = False
        while step > 1e-300:
            cand = obj.retract(g - step * pg)
            cval = obj.value(cand)
            if cval <= val - config.sufficient_decrease * step * gnorm ** 2:
                accepted = True
                break
            step *= config.armijo_shrink
        if not accepted or cval >= val:
            stalled = True
            break
        prev_g, prev_pg = g, pg
        g = cand
        val, grad = obj.value_and_grad(g)
        pg = obj.project(g, grad)
        gnorm = float(np.linalg.norm(pg))
        trace.append(val)
    else:
        converged = gnorm <= config.grad_tol * (1.0 + abs(val))
    if stalled:
        converged = gnorm <= STALL_GRAD_RTOL * (1.0 + abs(val))
    return DescentTrace(
        iterates=trace,
        final_design=Design.from_stacked(g, problem.dims),
        converged=converged,
        grad_norm=gnorm,
        iterations=it,
        stalled=stalled,
    )


def multistart(problem: ProblemData, starts: int, config: DescentConfig = DescentConfig()) -> list[DescentTrace]:
    """Run ``starts`` descents from random points; start ``k`` uses seed ``config.seed + k``."""
    out = []
    for k in range(starts):
        rng = np.random.default_rng(config.seed + k)
        out.append(descend(problem, random_design(problem, rng), config))
    return out
