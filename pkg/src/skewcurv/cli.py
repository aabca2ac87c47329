"""Command-line front end.

    skewcurv validate FILE [--point P]
    skewcurv curvature FILE [--point P]
    skewcurv classify FILE [--point P] [--tol T]
    skewcurv sectional FILE [--point P] [--x V] [--samples N] [--seed S] [--strict]
    skewcurv paper-suite [--seed S]

Reports are JSON on stdout (or ``-o FILE``), diagnostics go to stderr.
Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import math
import sys
import warnings

import numpy as np

from . import __version__
from .analysis.classes import check_L2_components, check_R1_invariance, check_R_invariance
from .analysis.ricci import einstein_check, ricci_data
from .analysis.sectional import CONCLUSION_TOL, HYPOTHESIS_TOL, random_unit_vectors, sectional_report
from .connection import (
    ChartManifold,
    LieGroupManifold,
    bianchi_first_residual,
    geometry_at,
    jacobi_residual,
    koszul_nabla,
    lie_metric_compatibility_residual,
    metric_compatibility_residual,
)
from .errors import (
    DegenerateBasis,
    DegenerateMetric,
    DomainError,
    ManifoldFileError,
    NotPositiveDefinite,
    SkewCurvError,
    ZeroVector,
)
from .linalg4 import symmetry_residual
from .manifold import (
    S_CHART,
    BoundaryMetricWarning,
    associated_metric,
    associated_metric_matrix,
    check_compatibility,
    fourth_power_is_minus_identity,
    metric_matrix,
    orthonormal_s_vector,
    s_basis,
)
from .manifold_file import load_manifold
from .report import Check, Report, dumps

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
STRUCTURE_TOL = 1e-12
NONZERO_THRESHOLD = 1e-12
ORIGIN = (0.0, 0.0, 0.0, 0.0)


class InputError(Exception):
    """Bad command-line input discovered after argument parsing."""


def _vector(text: str) -> tuple[float, ...]:
    try:
        v = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four comma-separated numbers, got {text!r}") from None
    if len(v) != 4 or not all(math.isfinite(t) for t in v):
        raise argparse.ArgumentTypeError(f"expected four finite comma-separated numbers, got {text!r}")
    return v


def _canonical_components(R) -> list[dict]:
    """Nonzero R_ijkh with i < j, k < h and (i, j) <= (k, h), 1-based labels."""
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    out = []
    for a, (i, j) in enumerate(pairs):
        for k, h in pairs[a:]:
            v = float(R[i, j, k, h])
            if abs(v) > NONZERO_THRESHOLD:
                out.append({"index": f"{i + 1}{j + 1}{k + 1}{h + 1}", "value": v})
    return out


def _metadata(args, m=None) -> dict:
    meta = {"tool_version": __version__}
    if m is not None:
        meta["manifold"] = "chart" if isinstance(m, ChartManifold) else "lie_group"
        if isinstance(m, ChartManifold):
            meta["point"] = list(args.point)
        elif m.name:
            meta["name"] = m.name
    return meta


def cmd_validate(args) -> Report:
    m = load_manifold(args.file)
    rep = Report("validate", metadata=_metadata(args, m))
    S = m.S
    rep.checks.append(Check("S^4 = -identity", 0.0 if fourth_power_is_minus_identity(S) else 1.0, 0.5))
    if isinstance(m, LieGroupManifold):
        g = np.eye(4)
        rep.checks.append(Check("g(Sx, Sy) = g(x, y)", check_compatibility(S, g), STRUCTURE_TOL))
        rep.checks.append(Check("Jacobi identity", jacobi_residual(m.brackets), STRUCTURE_TOL))
        rep.checks.append(
            Check("Koszul connection is metric", lie_metric_compatibility_residual(koszul_nabla(m)), STRUCTURE_TOL)
        )
        return rep
    A, B = m.A(args.point), m.B(args.point)
    rep.computed.update(A=A, B=B)
    rep.checks.append(Check("B >= 0", B, 0.0, relation=">="))
    rep.checks.append(Check("A - sqrt(2) B > 0", A - math.sqrt(2.0) * B, 0.0, relation=">"))
    g = metric_matrix(A, B)
    rep.checks.append(Check("g(Sx, Sy) = g(x, y)", check_compatibility(S, g), STRUCTURE_TOL))
    gt = associated_metric(g, S)
    rep.checks.append(
        Check("g~ matches the skew-circulant layout", float(np.abs(gt - associated_metric_matrix(A, B)).max()), STRUCTURE_TOL)
    )
    if rep.passed:
        rep.checks.append(
            Check("Levi-Civita connection is metric", metric_compatibility_residual(m, args.point), 1e-9)
        )
    return rep


def _curvature_checks(geo, tol: float) -> list[Check]:
    return [
        Check("curvature symmetries", symmetry_residual(geo.R), tol),
        Check("first Bianchi identity", bianchi_first_residual(geo.R), tol),
    ]


def cmd_curvature(args) -> Report:
    m = load_manifold(args.file)
    rep = Report("curvature", metadata=_metadata(args, m))
    geo = geometry_at(m, args.point)
    d = ricci_data(geo.R, geo.metric)
    rep.checks.extend(_curvature_checks(geo, args.tol or CONCLUSION_TOL))
    rep.computed.update(
        R_components=_canonical_components(geo.R),
        rho=d.rho,
        tau=d.tau,
        tau_star=d.tau_star,
        alpha=d.alpha,
        beta=d.beta,
    )
    return rep


def cmd_classify(args) -> Report:
    """Class membership is informative: the exit code only reflects the sanity checks."""
    m = load_manifold(args.file)
    tol = args.tol or CONCLUSION_TOL
    rep = Report("classify", metadata=_metadata(args, m))
    geo = geometry_at(m, args.point)
    d = ricci_data(geo.R, geo.metric)
    rep.checks.extend(_curvature_checks(geo, tol))
    res_R = check_R_invariance(geo.R, geo.S)
    res_R1 = check_R1_invariance(geo.R, geo.S)
    residuals = {
        "R": res_R,
        "R1": res_R1,
        "tau_star": abs(d.tau_star),
        "almost_einstein_decomposition": d.decomposition_residual,
    }
    if np.array_equal(geo.S.matrix, S_CHART):
        # the orbit table is written in the coordinates where S is the chart structure
        residuals["orbit_pattern"] = check_L2_components(geo.R)
    rep.computed.update(
        flags={
            "satisfies_R1": res_R1 < tol,
            "satisfies_R": res_R < tol,
            "is_einstein": einstein_check(d, tol),
            "is_almost_einstein": d.decomposition_residual < tol,
        },
        residuals=residuals,
        tolerance=tol,
        tau=d.tau,
        tau_star=d.tau_star,
    )
    return rep


def _choose_x(args, g, S) -> np.ndarray:
    if args.x is not None:
        return np.array(args.x)
    e1 = np.eye(4)[0]
    try:
        if s_basis(e1, S, g).is_orthonormal():
            return e1
    except DegenerateBasis:
        pass
    return orthonormal_s_vector(g, S)


def cmd_sectional(args) -> Report:
    m = load_manifold(args.file)
    rep = Report("sectional", metadata=_metadata(args, m))
    rep.metadata["seed"] = args.seed
    geo = geometry_at(m, args.point)
    g, S = geo.metric.g, geo.S
    x = _choose_x(args, g, S)
    us = random_unit_vectors(np.random.default_rng(args.seed), g, args.samples)
    try:
        sr = sectional_report(geo.R, g, S, x, us, HYPOTHESIS_TOL, args.tol or CONCLUSION_TOL)
    except (DegenerateBasis, ZeroVector) as e:
        raise InputError(f"--x: {e}") from e
    for name, res in sr.residuals.items():
        rep.checks.append(Check(name, res, sr.tolerances[name]))
    if args.strict:
        for name, reason in sr.skipped.items():
            rep.checks.append(Check(name, math.inf, sr.tolerances.get(name, CONCLUSION_TOL), note=f"skipped: {reason}"))
    rep.computed.update(
        x=x,
        phi=sr.phi,
        sectional=sr.planes,
        skipped=sr.skipped,
        samples=args.samples,
    )
    return rep


def cmd_paper_suite(args) -> Report:
    from .suite import run_suite

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryMetricWarning)
        return run_suite(args.seed)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewcurv", description="Curvature verification for 4-manifolds with a skew-circulant structure.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, point=True, tol=False):
        sp.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
        if point:
            sp.add_argument("file", help="manifold definition (JSON)")
            sp.add_argument("--point", type=_vector, default=ORIGIN, help="chart point x1,x2,x3,x4 (default origin)")
        if tol:
            sp.add_argument("--tol", type=float, default=None, help="conclusion tolerance (default 1e-9)")

    common(sub.add_parser("validate", help="structural checks: S^4 = -id, positivity, S-isometry"))
    common(sub.add_parser("curvature", help="Riemann components, Ricci tensor and scalar curvatures"), tol=True)
    common(sub.add_parser("classify", help="curvature class flags with residuals"), tol=True)
    sp = sub.add_parser("sectional", help="basic-plane curvatures and sectional identities")
    common(sp, tol=True)
    sp.add_argument("--x", type=_vector, default=None, help="vector inducing the S-basis (default: orthonormal choice)")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--strict", action="store_true", help="fail when an identity is skipped")
    sp = sub.add_parser("paper-suite", help="run the full reproduction suite")
    common(sp, point=False)
    sp.add_argument("--seed", type=int, default=0)
    return p


COMMANDS = {
    "validate": cmd_validate,
    "curvature": cmd_curvature,
    "classify": cmd_classify,
    "sectional": cmd_sectional,
    "paper-suite": cmd_paper_suite,
}


def _emit(rep: Report, output: str | None) -> None:
    text = dumps(rep.to_dict()) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        print("skewcurv: --samples must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        rep = COMMANDS[args.command](args)
        code = EXIT_PASS if rep.passed else EXIT_FAIL
    except (ManifoldFileError, DomainError, InputError, OSError) as e:
        rep, code = Report(args.command, error=str(e)), EXIT_INPUT
    except (NotPositiveDefinite, DegenerateMetric) as e:
        rep, code = Report(args.command, error=str(e)), EXIT_FAIL
    except SkewCurvError as e:
        rep, code = Report(args.command, error=f"{type(e).__name__}: {e}"), EXIT_FAIL
    if rep.error:
        print(f"skewcurv {args.command}: {rep.error}", file=sys.stderr)
    else:
        failed = [c.name for c in rep.checks if not c.passed]
        status = "pass" if not failed else f"FAIL ({', '.join(failed)})"
        print(f"skewcurv {args.command}: {status}", file=sys.stderr)
    try:
        _emit(rep, getattr(args, "output", None))
    except OSError as e:
        print(f"skewcurv: cannot write report: {e}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
