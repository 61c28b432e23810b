"""Majorization predicates and the piecewise-linear waterfill level solver.

Vectors of different lengths are compared in the extended sense: partial sums
of the decreasing rearrangements are checked up to the shorter length, and
(for majorization) the totals must agree.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import InvalidWeights

MAJORIZATION_RTOL = 1e-9


def _tolerance(x: np.ndarray, y: np.ndarray) -> float:
    scale = max(np.max(np.abs(x), initial=0.0), np.max(np.abs(y), initial=0.0))
    return MAJORIZATION_RTOL * (1.0 + scale)


def _profiles(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.sort(np.asarray(x, dtype=float).ravel())[::-1]
    y = np.sort(np.asarray(y, dtype=float).ravel())[::-1]
    return x, y


def is_submajorized(x, y, tol: float | None = None) -> bool:
    """True iff ``x`` is submajorized by ``y`` (``x ≺_w y``).

    Inputs need not be sorted and may differ in length.  The default
    tolerance is ``1e-9 * (1 + max |entry|)``.
    """
    x, y = _profiles(x, y)
    k = min(x.size, y.size)
    if tol is None:
        tol = _tolerance(x, y)
    return bool(np.all(np.cumsum(x[:k]) <= np.cumsum(y[:k]) + tol))


def is_majorized(x, y, tol: float | None = None) -> bool:
    """True iff ``x ≺ y``: submajorization plus equal totals (within ``tol``)."""
    xs, ys = _profiles(x, y)
    if tol is None:
        tol = _tolerance(xs, ys)
    return is_submajorized(xs, ys, tol) and bool(abs(xs.sum() - ys.sum()) <= tol)


def majorization_slack(x, y) -> np.ndarray:
    """Partial-sum slacks ``sum_{i<=k} y_i - sum_{i<=k} x_i`` (sorted decreasingly)."""
    x, y = _profiles(x, y)
    k = min(x.size, y.size)
    return np.cumsum(y[:k]) - np.cumsum(x[:k])


def _flatten(levels) -> np.ndarray:
    if isinstance(levels, np.ndarray):
        return levels.astype(float).ravel()
    out: list[float] = []
    for item in levels:
        if np.ndim(item) == 0:
            out.append(float(item))
        else:
            out.extend(np.asarray(item, dtype=float).ravel().tolist())
    return np.asarray(out, dtype=float)


def water_volume(levels, x: float) -> float:
    """``sum_k (level_k - x)^+``: the right-hand side of the waterfill equation."""
    lv = _flatten(levels)
    return float(np.sum(np.maximum(lv - x, 0.0)))


def waterfill_solve(weight_sum: float, levels: Iterable) -> float:
    """Solve ``weight_sum = sum_k (level_k - x)^+`` for ``x``.

    ``levels`` is a flat sequence of values or a list of rows (one list of
    eigenvalues per row of a block); rows are flattened.  The right-hand side
    is continuous, piecewise linear and strictly decreasing wherever it is
    positive, so for ``weight_sum > 0`` the root is unique and is found
    exactly by scanning the sorted breakpoints.  ``x`` may be negative.

    Raises:
        InvalidWeights: if ``weight_sum <= 0`` or no levels are given.
    """
    w = float(weight_sum)
    if not np.isfinite(w) or w <= 0:
        raise InvalidWeights(f"weight sum must be positive, got {weight_sum!r}")
    lv = np.sort(_flatten(levels))[::-1]
    if lv.size == 0:
        raise InvalidWeights("waterfill needs at least one level")
    csum = np.cumsum(lv)
    for k in range(1, lv.size + 1):
        x = (csum[k - 1] - w) / k
        # on [lv[k], lv[k-1]] exactly the k largest levels are active
        if k == lv.size or x >= lv[k]:
            return float(x)
    raise AssertionError("unreachable")
