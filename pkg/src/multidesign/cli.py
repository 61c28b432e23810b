"""Command-line front end.

Exit codes: 0 success, 2 malformed input or bad flags, 3 violated problem
invariant, 4 failed internal certificate.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import descent, gframes
from .errors import (
    DimensionMismatch,
    InternalContradiction,
    InvalidProblem,
    InvalidWeights,
    MajorizationViolated,
    NonHermitianInput,
    ProblemFormatError,
)
from .files import SCHEMA_VERSION, encode_matrix, load_json, parse_gframe_problem, parse_problem, write_report
from .linalg import commutator_norm, eig_hermitian, jfod_squared
from .spectrum import ProblemData, compute_b, compute_optimal_spectra, verify_certificates
from .synthesis import synthesize_optimal_design

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_CERTIFICATE = 0, 2, 3, 4

TOLERANCES = {
    "majorizationRelative": 1e-9,
    "thetaResidualRelative": 1e-7,
    "commutator": 1e-7,
    "spectrum": 1e-7,
    "jointNormRelative": 1e-10,
    "gframeNormRelative": 1e-10,
    "descentGapRelative": 1e-3,
}


class CertificateFailure(Exception):
    def __init__(self, report):
        super().__init__("certificate check failed")
        self.report = report


def _floats(v) -> list[float]:
    return [float(x) for x in np.asarray(v, dtype=float).ravel()]


def _solve_parts(problem: ProblemData):
    wf = compute_b(problem)
    spectra = compute_optimal_spectra(problem, wf)
    blocks = verify_certificates(problem, wf)
    return {
        "schemaVersion": SCHEMA_VERSION,
        "bVector": _floats(wf.b),
        "constants": _floats(wf.constants),
        "sizes": list(wf.sizes),
        "cuts": list(wf.cuts),
        "delta": [_floats(d) for d in spectra.delta],
        "nu": [_floats(v) for v in spectra.nu],
        "mu": [_floats(m) for m in spectra.mu],
        "minValue": spectra.min_value,
        "certificates": {"blockMajorization": blocks},
        "tolerances": dict(TOLERANCES),
    }, wf, spectra


def solve_report(problem: ProblemData) -> dict:
    return _solve_parts(problem)[0]


def synthesize_report(problem: ProblemData, seed: int = 0) -> dict:
    report, _, spectra = _solve_parts(problem)
    design = synthesize_optimal_design(problem, spectra)
    ops0 = problem.initial_operators()
    ops = design.frame_operators()
    theta = jfod_squared(ops0, ops)
    residual = abs(theta - spectra.min_value)
    comms = [commutator_norm(a, b) for a, b in zip(ops0, ops)]
    spec_err = [
        float(np.max(np.abs(eig_hermitian(a - b).values - np.sort(d)[::-1])))
        for a, b, d in zip(ops0, ops, spectra.delta)
    ]
    norm_res = float(np.max(np.abs(design.joint_norms() - problem.weights) / problem.weights))
    certs = report["certificates"]
    certs.update(
        {
            "theta": theta,
            "thetaResidual": residual,
            "thetaResidualOk": residual <= TOLERANCES["thetaResidualRelative"] * (1 + spectra.min_value),
            "commutatorNorms": comms,
            "commutatorsOk": all(c <= TOLERANCES["commutator"] for c in comms),
            "spectrumErrors": spec_err,
            "spectraOk": all(e <= TOLERANCES["spectrum"] for e in spec_err),
            "jointNormResidual": norm_res,
            "jointNormsOk": norm_res <= TOLERANCES["jointNormRelative"],
        }
    )
    report["seed"] = seed
    report["synthesizedDesign"] = [encode_matrix(f) for f in design.families]
    ok = all(certs["blockMajorization"]) and all(
        certs[k] for k in ("thetaResidualOk", "commutatorsOk", "spectraOk", "jointNormsOk")
    )
    certs["allPassed"] = ok
    if not ok:
        raise CertificateFailure(report)
    return report


def descend_report(problem: ProblemData, starts: int, seed: int = 0) -> dict:
    report, _, spectra = _solve_parts(problem)
    runs = descent.multistart(problem, starts, descent.DescentConfig(seed=seed))
    mv = spectra.min_value
    finals = [r.final_value for r in runs]
    gaps = [v - mv for v in finals]
    rel = [g / mv if mv > 0 else g for g in gaps]
    monotone = [bool(np.all(np.diff(r.iterates) <= 0)) for r in runs]
    report["seed"] = seed
    report["descentSummary"] = {
        "starts": starts,
        "seeds": [seed + k for k in range(starts)],
        "finalValues": finals,
        "gaps": gaps,
        "relativeGaps": rel,
        "iterations": [r.iterations for r in runs],
        "converged": [r.converged for r in runs],
        "monotone": monotone,
        "allWithinTolerance": all(abs(x) <= TOLERANCES["descentGapRelative"] for x in rel),
    }
    return report


def gframe_report(a, alpha, analysis_dim: int) -> dict:
    sol = gframes.gframe_solve(a, alpha, analysis_dim)
    s = gframes.gframe_operator(sol.family)
    a_h = sol.vector_problem.initial_operators()[0]
    lam = sol.vector_problem.spectra[0]
    norms = sol.family.squared_norms()
    alpha = np.asarray(alpha, dtype=float)
    norm_res = float(np.max(np.abs(norms - alpha) / alpha))
    comm = commutator_norm(a_h, s)
    frob2 = float(np.sum(np.abs(a_h - s) ** 2))
    lift = float(np.linalg.norm(s - gframes.vector_frame_operator(sol)))
    certs = {
        "normResidual": norm_res,
        "normsOk": norm_res <= TOLERANCES["gframeNormRelative"],
        "commutatorNorm": comm,
        "commutatorOk": comm <= TOLERANCES["commutator"],
        "frobeniusSquared": frob2,
        "minValueResidual": abs(frob2 - sol.min_value),
        "minValueOk": abs(frob2 - sol.min_value) <= TOLERANCES["thetaResidualRelative"] * (1 + sol.min_value),
        "liftFidelity": lift,
    }
    certs["allPassed"] = certs["normsOk"] and certs["commutatorOk"] and certs["minValueOk"]
    report = {
        "schemaVersion": SCHEMA_VERSION,
        "feasible": gframes.gframe_feasible(lam, alpha, analysis_dim),
        "expandedWeights": _floats(gframes.expanded_weights(alpha, analysis_dim)),
        "minValue": sol.min_value,
        "delta": _floats(sol.delta),
        "operators": [encode_matrix(t) for t in sol.family.operators],
        "schatten": gframes.schatten_distances(a_h, s),
        "certificates": certs,
        "tolerances": dict(TOLERANCES),
    }
    if not certs["allPassed"]:
        raise CertificateFailure(report)
    return report


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multidesign",
        description="Optimal (alpha, d)-designs for the joint frame operator distance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("solve", "compute the optimal spectra and the minimal distance"),
        ("synthesize", "also build an optimal design and check its certificates"),
        ("descend", "run seeded projected-gradient starts and report gaps"),
        ("gframe", "solve the G-frame approximation problem"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="problem file (JSON)")
        p.add_argument("--out", default="-", help="report path (default: stdout)")
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default: file seed, else 0)")
        p.add_argument("--tol-report", action="store_true", help="print the certificate summary to stderr")
        if name == "descend":
            p.add_argument("--starts", type=int, default=20)
    return parser


def _tol_summary(report: dict) -> None:
    certs = report.get("certificates", {})
    for key in sorted(certs):
        print(f"{key}: {certs[key]}", file=sys.stderr)
    for key, val in report.get("tolerances", {}).items():
        print(f"tolerance {key} = {val:g}", file=sys.stderr)


def _seed(flag, data: dict) -> int:
    if flag is not None:
        return flag
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
        raise ProblemFormatError("seed must be an unsigned 64-bit integer")
    return seed


def run(args: argparse.Namespace) -> int:
    if args.seed is not None and (args.seed < 0 or args.seed >= 2 ** 64):
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "descend" and args.starts < 1:
        print("error: --starts must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        data = load_json(args.problem)
        seed = _seed(args.seed, data)
        if args.command == "gframe":
            a, alpha, n = parse_gframe_problem(data)
            report = gframe_report(a, alpha, n)
        else:
            problem = parse_problem(data)
            if args.command == "solve":
                report = solve_report(problem)
            elif args.command == "synthesize":
                report = synthesize_report(problem, seed)
            else:
                report = descend_report(problem, args.starts, seed)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidProblem, InvalidWeights, NonHermitianInput, DimensionMismatch, MajorizationViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CertificateFailure as exc:
        exc.report = {"command": args.command, **exc.report}
        write_report(exc.report, args.out)
        if args.tol_report:
            _tol_summary(exc.report)
        print("error: certificate check failed", file=sys.stderr)
        return EXIT_CERTIFICATE
    except InternalContradiction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    report = {"command": args.command, **report}
    write_report(report, args.out)
    if args.tol_report:
        _tol_summary(report)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
