"""Command-line interface: ``analyze``, ``validate``, ``examples``, ``selftest``.

Exit codes: 0 success, 1 check mismatch, 2 schema violation, 3 invalid
Lagrangian, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._kernel import BACKEND
from .analyzer import reg_residue_at_zero, run_pipeline
from .errors import DegenerateInputError, LagrangianError, SchemaError
from .lagrangian import validate_lagrangian
from .oracle import (
    check_example,
    full_det_leibniz,
    log_oracle_check,
    paper_example,
    random_lagrangian,
    random_reduced_series,
)
from .problem import load_problem
from .report import dumps, render_plotdata, render_text, report_to_dict
from .series import TruncationPolicy

log = logging.getLogger("zetasing")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_SCHEMA = 2
EXIT_LAGRANGIAN = 3
EXIT_INTERNAL = 4


def _setup_logging() -> None:
    level = os.environ.get("ZETASING_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    try:
        prob = load_problem(args.input)
    except (SchemaError, OSError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    cutoff = args.cutoff if args.cutoff is not None else prob.xi_cutoff
    if cutoff is None:
        print("schema error: xi_cutoff: missing (give it in the file or via --cutoff)",
              file=sys.stderr)
        return EXIT_SCHEMA
    ell_max = args.ell_max if args.ell_max is not None else prob.ell_max
    check = validate_lagrangian(prob.pair, args.tol)
    if not check.ok:
        for v in check.violations:
            print(f"lagrangian violation: {v}", file=sys.stderr)
        return EXIT_LAGRANGIAN
    try:
        run = run_pipeline(prob.spec, prob.pair, cutoff, ell_max, prob.merge_tol)
    except DegenerateInputError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    log.info("p has %d terms, log series %d terms, backend %s",
             len(run.p), len(run.log_series), BACKEND)
    report = run.report
    if args.format == "text":
        _emit(render_text(report, prob.label), args.output)
    elif args.format == "plotdata":
        _emit(render_plotdata(report), args.output)
    else:
        extra = {}
        if prob.boundary_zeta_residue is not None:
            extra["reg_residue_at_zero"] = reg_residue_at_zero(prob.boundary_zeta_residue)
        if args.debug_series:
            extra["series"] = {
                "p": run.p.to_list(),
                "u": run.reduced.u.to_list(),
                "log": run.log_series.to_list(),
            }
        doc = report_to_dict(report, prob.echo(), run.policy.as_dict(), extra)
        doc["policy"]["merge_tol"] = prob.merge_tol
        _emit(dumps(doc), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        prob = load_problem(args.input)
    except (SchemaError, OSError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    result = validate_lagrangian(prob.pair, args.tol)
    if result.ok:
        print(f"ok: q={prob.pair.q}, q0={prob.spec.q0}, "
              f"rank margin {result.rank_margin:.3e}, "
              f"hermitian defect {result.hermitian_defect:.3e}")
        return EXIT_OK
    for v in result.violations:
        print(f"lagrangian violation: {v}")
    return EXIT_LAGRANGIAN


def _print_rows(title: str, rows) -> bool:
    print(title)
    width = max([len(r.name) for r in rows] + [4])
    all_ok = True
    for r in rows:
        all_ok &= r.ok
        status = "PASS" if r.ok else "FAIL"
        print(f"  {status}  {r.name:<{width}}  expected={r.expected!s:<28} "
              f"observed={r.observed!s:<28} rel_err={r.rel_err:.2e}")
    return all_ok


def cmd_examples(args) -> int:
    ids = [args.id] if args.id else [1, 2, 3, 4, 5]
    ok = True
    for i in ids:
        kwargs = {"K": args.K, "alpha": args.alpha, "beta": args.beta, "nu": args.nu,
                  "degenerate": args.degenerate}
        case = paper_example(i, **kwargs)
        rows = check_example(case, rtol=args.rtol)
        ok &= _print_rows(f"example {case.example_id}: {case.description}", rows)
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_MISMATCH


def selftest(n_det: int = 200, n_log: int = 50, seed: int = 20240101,
             verbose: bool = True) -> bool:
    say = print if verbose else (lambda *a, **k: None)
    ok = True
    for i in (1, 2, 3, 4, 5):
        for degenerate in ((False, True) if i == 1 else (False,)):
            case = paper_example(i, K=6, degenerate=degenerate)
            rows = check_example(case)
            good = all(r.ok for r in rows)
            ok &= good
            say(f"{'PASS' if good else 'FAIL'}  example {case.example_id}: {case.description}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_det):
        q = int(rng.integers(1, 4))
        q0 = int(rng.integers(0, q + 1))
        from .spectral_data import EigenvalueSpec
        spec = EigenvalueSpec.from_nus(rng.uniform(0.05, 0.95, size=q - q0), q0)
        pair = random_lagrangian(rng, q, q0)
        from .lagrangian import boundary_det
        a, b = boundary_det(pair, spec), full_det_leibniz(pair, spec)
        scale = max([abs(c) for _, c in a.items()] + [abs(c) for _, c in b.items()] + [1e-300])
        keys = set(a) | set(b)
        err = max((abs(a.coeff(*k) - b.coeff(*k)) for k in keys), default=0.0) / scale
        worst = max(worst, err)
    good = worst <= 1e-12
    ok &= good
    say(f"{'PASS' if good else 'FAIL'}  determinant oracle, {n_det} random pairs, "
        f"worst relative deviation {worst:.2e}")
    worst_ratio = 0.0
    for i in range(n_log):
        d = int(rng.integers(1, 4))
        nus = tuple(sorted(rng.uniform(0.2, 0.95, size=d)))
        u = random_reduced_series(rng, nus, n_terms=int(rng.integers(1, 5)))
        policy = TruncationPolicy.for_series(u, float(rng.uniform(0.5, 2.5)), 12)
        res = log_oracle_check(u, policy, samples=4, seed=i)
        worst_ratio = max(worst_ratio, res.worst_ratio)
    good = worst_ratio <= 1.0
    ok &= good
    say(f"{'PASS' if good else 'FAIL'}  log oracle, {n_log} random series, "
        f"worst deviation/bound {worst_ratio:.2e}")
    say(f"kernel backend: {BACKEND}")
    say("PASS" if ok else "FAIL")
    return ok


def cmd_selftest(args) -> int:
    return EXIT_OK if selftest(args.n_det, args.n_log, args.seed) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetasing",
        description="Singularity structure of zeta functions of self-adjoint "
                    "extensions on conic manifolds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="compute the singularity report for a problem file")
    p.add_argument("input")
    p.add_argument("--cutoff", type=float, default=None, help="xi cutoff (overrides file)")
    p.add_argument("--ell-max", type=int, default=None, help="largest positive x power examined")
    p.add_argument("--format", choices=("json", "text", "plotdata"), default="json")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--tol", type=float, default=1e-10, help="Lagrangian validation tolerance")
    p.add_argument("--debug-series", action="store_true",
                   help="include p, u and log(1+u) term lists in the JSON report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("validate", help="check that (A, B) define a Lagrangian subspace")
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("examples", help="run worked examples against their closed forms")
    p.add_argument("--id", type=int, choices=(1, 2, 3, 4, 5), default=None)
    p.add_argument("-K", "--K", type=int, default=6, dest="K")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--degenerate", action="store_true", help="example 1 with lambda = -1/4")
    p.add_argument("--rtol", type=float, default=1e-10)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("selftest", help="examples plus oracle equivalence suites")
    p.add_argument("--n-det", type=int, default=200)
    p.add_argument("--n-log", type=int, default=50)
    p.add_argument("--seed", type=int, default=20240101)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
