"""Dense Hermitian linear algebra: frame operators, eigendecomposition, distances.

Vector families are stored as ``(n, d)`` complex arrays whose *rows* are the
vectors ``f_i``.  With that convention the frame operator
``S_F = sum_i f_i f_i^*`` is ``F.T @ F.conj()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DimensionMismatch, NonHermitianInput

HERMITIAN_ATOL = 1e-12
JACOBI_RTOL = 1e-14
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a Hermitian matrix.

    ``values`` is sorted non-increasing and column ``i`` of ``vectors`` is the
    unit eigenvector belonging to ``values[i]``.
    """

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T

    @property
    def ascending(self) -> np.ndarray:
        return self.values[::-1]


def as_hermitian(a, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate ``a`` as a square Hermitian matrix and return it as complex128.

    The returned array is exactly Hermitian (symmetrized), so downstream code
    never sees the ~1e-16 asymmetry of the input.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonHermitianInput("matrix has non-finite entries")
    dev = np.max(np.abs(a - a.conj().T))
    if dev > atol:
        raise NonHermitianInput(f"matrix is not Hermitian (max |A - A*| = {dev:.3e})")
    return 0.5 * (a + a.conj().T)


def as_family(vectors, dim: int | None = None) -> np.ndarray:
    """Return a vector family as an ``(n, d)`` complex array (rows are vectors)."""
    f = np.asarray(vectors, dtype=complex)
    if f.ndim == 1:
        f = f[:, None] if dim == 1 else f[None, :]
    if f.ndim != 2 or f.shape[0] < 1 or f.shape[1] < 1:
        raise DimensionMismatch(f"a vector family needs shape (n, d) with n, d >= 1, got {f.shape}")
    if dim is not None and f.shape[1] != dim:
        raise DimensionMismatch(f"vectors have length {f.shape[1]}, expected {dim}")
    if not np.all(np.isfinite(f)):
        raise ValueError("vector family has non-finite entries")
    return f


def frame_operator(family) -> np.ndarray:
    """Frame operator ``sum_i f_i (x) f_i`` of a family given row-wise."""
    f = as_family(family)
    s = f.T @ f.conj()
    return 0.5 * (s + s.conj().T)


def _jacobi_rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    # Unitary U (2x2) such that U^* [[app, apq], [conj(apq), aqq]] U is diagonal.
    r = abs(apq)
    phase = apq / r
    tau = (aqq - app) / (2.0 * r)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])


def eig_hermitian(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius mass is at most
    ``1e-14 * ||A||_F``.  Eigenvalues come back non-increasing (stable sort),
    and each eigenvector is rotated so its largest-magnitude entry is real and
    positive.

    Raises:
        NonHermitianInput: if ``a`` is not Hermitian to 1e-12 per entry.
        ConvergenceError: if 100 sweeps do not reach the threshold.
    """
    a = as_hermitian(a).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    target = JACOBI_RTOL * scale

    def off_mass() -> float:
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    sweeps = 0
    while n > 1 and scale > 0 and off_mass() > target:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300 or abs(apq) < 1e-18 * scale:
                    continue
                u = _jacobi_rotation(a[p, p].real, a[q, q].real, apq)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ u

    values = np.real(np.diag(a)).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    v = v[:, order]
    for k in range(n):
        col = v[:, k]
        i = int(np.argmax(np.abs(col)))
        if abs(col[i]) > 0:
            v[:, k] = col * (abs(col[i]) / col[i])
    return EigenDecomposition(values=values, vectors=v)


def eigvalsh_desc(a) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, non-increasing."""
    return eig_hermitian(a).values


def jfod_squared(a: Sequence, b: Sequence) -> float:
    """Squared joint frame operator distance ``sum_j ||A_j - B_j||_F^2``."""
    if len(a) != len(b):
        raise DimensionMismatch(f"lists have lengths {len(a)} and {len(b)}")
    total = 0.0
    for j, (x, y) in enumerate(zip(a, b)):
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        if x.shape != y.shape:
            raise DimensionMismatch(f"entry {j}: shapes {x.shape} and {y.shape} differ")
        total += float(np.sum(np.abs(x - y) ** 2))
    return total


def commutator_norm(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.linalg.norm(a @ b - b @ a))
