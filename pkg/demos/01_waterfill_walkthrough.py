"""Walk through the block construction on a three-space instance.

Three initial frame operators with spectra lam_1 (dim 7), lam_2 (dim 5) and
lam_3 (dim 3) are to be approximated by a design of 8 joint vectors with
squared joint norms alpha.  The script prints every block that was tried,
the accepted cuts, the level vector b and the optimal spectral gaps.

Run:  python3 demos/01_waterfill_walkthrough.py
"""

import numpy as np

from multidesign import ProblemData, compute_b, compute_optimal_spectra
from multidesign.spectrum import verify_certificates

np.set_printoptions(precision=4, suppress=True)

weights = [40, 35, 9, 5, 4.5, 3, 2.4, 2]
spectra = [
    [9, 5.5, 3, 0.3, 0, 0, 0],
    [20, 1.1, 0.5, 0, 0],
    [2, 1.5, 0.7],
]
problem = ProblemData(weights, (7, 5, 3), spectra)

wf = compute_b(problem)
print(f"candidate blocks rejected before acceptance: {wf.rejected}")
for k, cert in enumerate(wf.certificates, 1):
    rows = f"rows {cert.start + 1}..{cert.stop}"
    print(f"block {k}: {rows}, level {cert.level:.6f}")
    print(f"  weights {cert.weights}")
    print(f"  water   {cert.water}")
print("cuts:", wf.cuts)
print("b   :", wf.b)

sp = compute_optimal_spectra(problem, wf)
for j, (delta, mu) in enumerate(zip(sp.delta, sp.mu), 1):
    print(f"space {j}: delta = {delta}")
    print(f"         mu    = {mu}")
print(f"minimum of the joint distance: {sp.min_value:.6f}")

# Every delta_j equals the first d_j entries of b here (all lambda >= 0 > b),
# so the minimum is 6 b_1^2 + 9 b_2^2.
b1, b2 = wf.constants
print(f"6 b1^2 + 9 b2^2 = {6 * b1**2 + 9 * b2**2:.6f}")
print("block certificates:", verify_certificates(problem, wf))
