"""Acceptance suite: one PASS/FAIL line per criterion (see the terminal summary)."""

import json
import subprocess
import sys
import time

import numpy as np

from _support import (
    EXAMPLE_B_PRINTED,
    EXAMPLE_DIMS,
    EXAMPLE_SPECTRA,
    EXAMPLE_WEIGHTS,
    brute_majorized,
    brute_submajorized,
    default_tol,
    example_problem,
    random_problem,
)
from test_descent import _fd_gradient
from test_gframes import descent_oracle, random_gframe_instance
from test_synthesis import random_feasible_pair
from multidesign.descent import DescentConfig, grad_theta, multistart, random_design
from multidesign.errors import MajorizationViolated
from multidesign.files import encode_matrix
from multidesign.gframes import gframe_feasible, gframe_operator, gframe_optimize, gframe_solve
from multidesign.linalg import commutator_norm, eig_hermitian, frame_operator, jfod_squared
from multidesign.majorization import is_majorized, is_submajorized
from multidesign.spectrum import ProblemData, compute_b, minimum_value, solve, verify_certificates
from multidesign.synthesis import GramTarget, hermitian_with_diag_and_spectrum, synthesize_optimal_design


def test_criterion_1_golden_example(acceptance_line):
    t0 = time.perf_counter()
    wf, sp = solve(example_problem())
    elapsed = time.perf_counter() - t0
    b_err = float(np.max(np.abs(wf.b - EXAMPLE_B_PRINTED)))
    v_err = abs(sp.min_value - 265.685)
    ok = b_err <= 5e-4 and v_err <= 1e-2 and elapsed < 1.0
    acceptance_line(1, ok, f"max|b - printed| = {b_err:.2e}, |minValue - 265.685| = {v_err:.2e}, {elapsed:.3f} s")
    assert ok


def test_criterion_2_closed_form_identity(acceptance_line):
    wf, sp = solve(example_problem())
    b1, b2 = wf.constants
    recomputed = 6 * b1**2 + 9 * b2**2
    rel = abs(recomputed - sp.min_value) / sp.min_value
    ok = wf.sizes == (2, 5) and rel <= 1e-9
    acceptance_line(2, ok, f"6 b1^2 + 9 b2^2 = {recomputed:.10f}, relative difference {rel:.1e}")
    assert ok


def _synthesis_certificates(problem):
    wf, sp = solve(problem)
    design = synthesize_optimal_design(problem, sp)
    ops0, ops = problem.initial_operators(), design.frame_operators()
    theta = jfod_squared(ops0, ops)
    checks = [
        all(verify_certificates(problem, wf)),
        theta - sp.min_value <= 1e-7 * (1 + sp.min_value),
        np.max(np.abs(design.joint_norms() - problem.weights) / problem.weights) <= 1e-10,
    ]
    for s0, s, dj in zip(ops0, ops, sp.delta):
        checks.append(commutator_norm(s, s0) <= 1e-7)
        checks.append(np.max(np.abs(eig_hermitian(s0 - s).values - np.sort(dj)[::-1])) <= 1e-7)
    return all(checks)


def test_criterion_3_synthesis_optimality(acceptance_line):
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    problems = [example_problem()] + [random_problem(rng, 3, 6, 10, operators=k % 2 == 1) for k in range(50)]
    passed = sum(_synthesis_certificates(p) for p in problems)
    elapsed = time.perf_counter() - t0
    ok = passed == len(problems) and elapsed < 10.0
    acceptance_line(3, ok, f"{passed}/{len(problems)} instances certified, {elapsed:.2f} s")
    assert ok


def _local_search_instances(rng, count):
    out = []
    while len(out) < count:
        p = random_problem(rng, 3, 6, 10, operators=True)
        if minimum_value(p) >= 1.0:  # relative gaps are meaningless near zero
            out.append(p)
    return out


def test_criterion_4_local_equals_global(acceptance_line):
    rng = np.random.default_rng(77)
    t0 = time.perf_counter()
    problems = [example_problem()] + _local_search_instances(rng, 10)
    worst, monotone, runs = 0.0, True, 0
    for k, p in enumerate(problems):
        mv = minimum_value(p)
        for tr in multistart(p, 20, DescentConfig(seed=1000 * k)):
            worst = max(worst, abs(tr.final_value - mv) / mv)
            monotone &= bool(np.all(np.diff(tr.iterates) <= 0))
            runs += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-3 and monotone and elapsed < 60.0
    acceptance_line(4, ok, f"{runs} runs, worst relative gap {worst:.1e}, monotone={monotone}, {elapsed:.1f} s")
    assert ok


def test_criterion_5_gradient(acceptance_line):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        p = random_problem(rng, 3, 4, 5, operators=True)
        d = random_design(p, rng)
        g = np.concatenate(grad_theta(p, d), axis=1)
        fd = np.concatenate(_fd_gradient(p, d, h=1e-5), axis=1)
        worst = max(worst, float(np.linalg.norm(g - fd) / np.linalg.norm(g)))
    ok = worst <= 1e-5
    acceptance_line(5, ok, f"100 probes, worst relative deviation {worst:.1e}")
    assert ok


def test_criterion_6_schur_horn_and_majorization(acceptance_line):
    rng = np.random.default_rng(6)
    diag_err = spec_err = 0.0
    for _ in range(200):
        diag, lam = random_feasible_pair(rng, int(rng.integers(1, 9)))
        g = hermitian_with_diag_and_spectrum(GramTarget(diag, lam))
        diag_err = max(diag_err, float(np.max(np.abs(np.diag(g) - diag))))
        spec_err = max(spec_err, float(np.max(np.abs(eig_hermitian(g).values - lam))))
    rejected = infeasible = 0
    while infeasible < 100:
        n = int(rng.integers(2, 9))
        diag = rng.exponential(size=n)
        lam = np.sort(rng.exponential(size=n))[::-1]
        lam *= diag.sum() / lam.sum()
        if brute_majorized(diag, lam, default_tol(diag, lam)):
            continue
        infeasible += 1
        try:
            hermitian_with_diag_and_spectrum(GramTarget(diag, lam))
        except MajorizationViolated:
            rejected += 1
    agree = 0
    for _ in range(1000):
        x = rng.integers(-5, 6, size=int(rng.integers(1, 9)))
        y = rng.integers(-5, 6, size=int(rng.integers(1, 9)))
        if rng.random() < 0.3:
            y = rng.permutation(x)
        tol = default_tol(x, y)
        agree += (is_submajorized(x, y) == brute_submajorized(x, y, tol)) and (
            is_majorized(x, y) == brute_majorized(x, y, tol)
        )
    ok = diag_err <= 1e-10 and spec_err <= 1e-8 and rejected == infeasible and agree == 1000
    acceptance_line(
        6,
        ok,
        f"diag err {diag_err:.1e}, spectrum err {spec_err:.1e}, rejected {rejected}/{infeasible}, predicates agree {agree}/1000",
    )
    assert ok


def _grid_minimum(s0, alpha, step=1e-2):
    angles = np.arange(0.0, np.pi, step)
    c, s = np.cos(angles), np.sin(angles)
    # rank-one pieces alpha_i u u^T with u = (cos t, sin t)
    pieces = [a * np.stack([c * c, c * s, s * s]) for a in alpha]
    s11 = pieces[0][0][:, None] + pieces[1][0][None, :]
    s12 = pieces[0][1][:, None] + pieces[1][1][None, :]
    s22 = pieces[0][2][:, None] + pieces[1][2][None, :]
    vals = (s0[0, 0] - s11) ** 2 + 2 * (s0[0, 1] - s12) ** 2 + (s0[1, 1] - s22) ** 2
    return float(vals.min())


def test_criterion_7_grid_search_equivalence(acceptance_line):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10):
        t = rng.uniform(0, np.pi)
        u = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
        s0 = (u * np.sort(rng.uniform(0, 2, size=2))[::-1]) @ u.T
        alpha = np.sort(rng.uniform(0.1, 1.5, size=2))[::-1]
        exact = minimum_value(ProblemData.from_operators(alpha, [s0]))
        worst = max(worst, abs(_grid_minimum(s0, alpha) - exact))
    ok = worst <= 1e-3
    acceptance_line(7, ok, f"10 instances, worst |grid - solver| = {worst:.1e}")
    assert ok


def test_criterion_8_gframes(acceptance_line):
    rng = np.random.default_rng(8)
    verdicts = 0
    for _ in range(200):
        d, m, n = (int(x) for x in rng.integers(1, 5, size=3))
        alpha = np.sort(rng.integers(1, 6, size=m).astype(float))[::-1]
        lam = np.sort(rng.integers(0, 6, size=d).astype(float))[::-1]
        w = np.repeat(alpha / n, n)
        verdicts += gframe_feasible(lam, alpha, n) == brute_majorized(w, lam, default_tol(w, lam))
    norm_err = comm = oracle_gap = 0.0
    same_path = True
    for k in range(10):
        a, alpha, n = random_gframe_instance(rng)
        sol = gframe_solve(a, alpha, n)
        s = gframe_operator(sol.family)
        norm_err = max(norm_err, float(np.max(np.abs(sol.family.squared_norms() - alpha) / alpha)))
        comm = max(comm, commutator_norm(a, s))
        vector = ProblemData.from_operators(np.repeat(alpha / n, n), [a])
        same_path &= sol.min_value == minimum_value(vector)
        oracle_gap = max(oracle_gap, abs(descent_oracle(a, alpha, n, seed=k) - sol.min_value))
    ok = verdicts == 200 and norm_err <= 1e-10 and comm <= 1e-7 and same_path and oracle_gap <= 1e-3
    acceptance_line(
        8,
        ok,
        f"feasibility agree {verdicts}/200, norm err {norm_err:.1e}, commutator {comm:.1e}, "
        f"vector solver identical={same_path}, oracle gap {oracle_gap:.1e}",
    )
    assert ok


def test_criterion_9_determinism(acceptance_line, tmp_path):
    problem = tmp_path / "example.json"
    problem.write_text(
        json.dumps(
            {
                "schemaVersion": "1",
                "weights": EXAMPLE_WEIGHTS,
                "dims": list(EXAMPLE_DIMS),
                "initialSpectra": EXAMPLE_SPECTRA,
            }
        )
    )
    gproblem = tmp_path / "gframe.json"
    a = np.array([[3.0, 1 + 1j, 0.0], [1 - 1j, 2.0, 0.5], [0.0, 0.5, 1.0]])
    gproblem.write_text(json.dumps({"schemaVersion": "1", "A": encode_matrix(a), "alpha": [4.0, 1.5], "analysisDim": 2}))
    commands = [
        ["solve", str(problem)],
        ["synthesize", str(problem), "--seed", "3"],
        ["descend", str(problem), "--seed", "3", "--starts", "4"],
        ["gframe", str(gproblem)],
    ]
    identical = 0
    for cmd in commands:
        outputs = []
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "multidesign", *cmd], capture_output=True, check=False)
            outputs.append((proc.returncode, proc.stdout))
        identical += outputs[0] == outputs[1] and outputs[0][0] == 0
    ok = identical == len(commands)
    acceptance_line(9, ok, f"{identical}/{len(commands)} commands byte-identical across two runs")
    assert ok
