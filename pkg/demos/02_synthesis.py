"""Build an optimal design and check what makes it optimal.

The initial operators are random positive matrices.  After solving for the
optimal spectra, a design is synthesized and checked: its distance equals
the closed-form minimum, each synthesized frame operator commutes with its
target, the spectrum of each residual is the predicted gap vector, and the
joint norms are exact.

Run:  python3 demos/02_synthesis.py
"""

import numpy as np

from multidesign import ProblemData, optimal_design
from multidesign.linalg import commutator_norm, eig_hermitian, jfod_squared

rng = np.random.default_rng(1)


def random_psd(d, rank):
    z = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    return z @ z.conj().T


weights = np.sort(rng.uniform(0.5, 4.0, size=6))[::-1]
operators = [random_psd(4, 2), random_psd(3, 3), random_psd(2, 1)]
problem = ProblemData.from_operators(weights, operators)

design, spectra = optimal_design(problem)
theta = jfod_squared(problem.initial_operators(), design.frame_operators())
print(f"closed-form minimum {spectra.min_value:.12f}")
print(f"synthesized design  {theta:.12f}")
print("joint norms:", np.round(design.joint_norms(), 12))
print("weights    :", np.round(weights, 12))

for j, (s0, s, delta) in enumerate(zip(problem.initial_operators(), design.frame_operators(), spectra.delta), 1):
    residual = eig_hermitian(s0 - s).values
    print(f"space {j}: ||[S, S0]|| = {commutator_norm(s, s0):.1e}, "
          f"spectrum error {np.max(np.abs(residual - np.sort(delta)[::-1])):.1e}")
