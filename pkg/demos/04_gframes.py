"""Nearest G-frame operator with prescribed Hilbert-Schmidt norms.

Given a positive matrix A on C^3, find operators T_1, T_2 : C^3 -> C^2 with
||T_i||_F^2 = alpha_i minimizing ||A - sum T_i^* T_i||_F.  The problem
reduces to a single-space vector problem with each alpha_i split evenly over
2 vectors; the optimal vectors are then cut into operators.

Run:  python3 demos/04_gframes.py
"""

import numpy as np

from multidesign import gframe_feasible, gframe_solve
from multidesign.gframes import gframe_operator, schatten_distances
from multidesign.linalg import commutator_norm, eig_hermitian

np.set_printoptions(precision=4, suppress=True)

a = np.array([[4, 1 + 1j, 0], [1 - 1j, 3, 0.5], [0, 0.5, 1]])
alpha, n = [5.0, 2.5], 2

lam = eig_hermitian(a).values
print("spectrum of A:", lam)
print("exactly representable:", gframe_feasible(lam, alpha, n))

sol = gframe_solve(a, alpha, n)
s = gframe_operator(sol.family)
print(f"minimal squared distance: {sol.min_value:.6f}")
for i, t in enumerate(sol.family.operators, 1):
    print(f"T_{i} (||T||^2 = {np.sum(np.abs(t) ** 2):.12f}):")
    print(t)
print(f"||[A, S]|| = {commutator_norm(a, s):.1e}")
print("Schatten distances:", {k: round(v, 6) for k, v in schatten_distances(a, s).items()})

# A trace-matched weight choice that is representable gives distance zero.
alpha_exact = [lam.sum() * 0.6, lam.sum() * 0.4]
sol = gframe_solve(a, alpha_exact, n)
print(f"trace-matched weights: feasible {gframe_feasible(lam, alpha_exact, n)}, distance {sol.min_value:.1e}")
