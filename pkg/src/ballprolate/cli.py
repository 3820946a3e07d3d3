"""Command-line front end.

Exit codes: 0 success, 1 invalid configuration, 2 solver failure, 3 a
verification report with its hypothesis met did not pass.
"""

from __future__ import annotations

import argparse
import inspect
import sys
import time

import numpy as np

from . import suite
from ._validation import check_int, check_pointwise_dim, check_real
from .approx import PROJECTION_COLUMNS, compare_projectors, make_gaussian_test
from .harmonics import harmonic_dim
from .prolate import (ProblemParams, dumps_json, hankel_eigenvalue,
                      prolate_eval_radial, solve_prolate_family)
from .reports import REPORT_COLUMNS, fmt_real, summarize, write_csv
from .spectra import MAX_C, build_spectrum

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_FAILED = 0, 1, 2, 3
EIGS_COLUMNS = ("m", "k", "chi", "alpha", "mu_modulus", "nu_Q", "commutation_residual", "trunc")
VERIFY_FAMILIES = ("trace", "hs", "counting", "decay", "supnorm", "theorem-b", "theorem-c",
                   "coeff", "identities", "solver", "galerkin", "hankel", "all")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(p, *names):
    opts = {
        "d": dict(type=int, help="dimension of the ball"),
        "c": dict(type=float, help=f"bandwidth, 0 < c <= {MAX_C:g}"),
        "m": dict(type=int, help="harmonic degree"),
        "k": dict(type=int, help="radial index"),
        "kmax": dict(type=int, help="largest radial index"),
        "N": dict(type=int, help="projection order"),
        "Nmax": dict(type=int, help="largest projection order or decay index"),
        "delta": dict(type=float, help="counting threshold in (0, 1)"),
        "tol": dict(type=float, help="spectrum tail tolerance"),
        "trunc": dict(type=int, help="initial truncation size K"),
        "sigma": dict(type=float, help="Gaussian test-function width"),
    }
    for n in names:
        p.add_argument(f"--{n}", **opts[n])


def _output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ballprolate",
                     description="Prolate spheroidal wave functions on the unit ball.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eigs", help="eigenvalues of one channel")
    _common(p, "d", "c", "m", "kmax", "trunc")
    _output(p)

    p = sub.add_parser("eval", help="sample a ball prolate on a radial grid")
    _common(p, "d", "c", "m", "k", "trunc")
    p.add_argument("--points", type=int, default=11, help="number of radii in [0, 1]")
    _output(p)

    p = sub.add_parser("spectrum", help="all eigenvalues of the concentration operator")
    _common(p, "d", "c", "tol")
    _output(p)

    p = sub.add_parser("project", help="prolate vs ball-polynomial projection of a Gaussian")
    _common(p, "d", "c", "m", "Nmax", "sigma")
    _output(p)

    p = sub.add_parser("verify", help="run verification reports")
    p.add_argument("family", choices=VERIFY_FAMILIES)
    _common(p, "d", "c", "m", "kmax", "N", "Nmax", "delta", "tol", "sigma")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="smaller grids where available")
    _output(p)
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(rows, columns, fmt):
    if fmt == "json":
        return dumps_json([{k: r[k] for k in columns} for r in rows]) + "\n"
    conv = [{k: fmt_real(v) if isinstance(v, (float, np.floating)) else
             (str(v).lower() if isinstance(v, (bool, np.bool_)) else v)
             for k, v in r.items()} for r in rows]
    return write_csv(conv, columns)


def _params(args, need_pointwise=False) -> ProblemParams:
    if args.d is None or args.c is None:
        raise ConfigError("--d and --c are required")
    d = check_int(args.d, "d", minimum=1)
    if need_pointwise:
        check_pointwise_dim(d)
    c = check_real(args.c, "c", gt=0.0, le=MAX_C)
    m = check_int(args.m if args.m is not None else 0, "m", minimum=0)
    if harmonic_dim(d, m) == 0:
        raise ConfigError(f"no spherical harmonics of degree {m} for d={d}")
    return ProblemParams(d, c, m)


def cmd_eigs(args) -> int:
    pr = _params(args)
    kmax = check_int(args.kmax if args.kmax is not None else 5, "kmax", minimum=0)
    fam = solve_prolate_family(pr, kmax, args.trunc)
    rows = []
    for p in fam:
        s = hankel_eigenvalue(p)
        rows.append({"m": pr.m, "k": p.k, "chi": p.chi, "alpha": s.alpha_H,
                     "mu_modulus": s.mu_modulus, "nu_Q": s.nu_Q,
                     "commutation_residual": s.commutation_residual, "trunc": p.trunc})
    _emit(_table(rows, EIGS_COLUMNS, args.format), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    pr = _params(args)
    k = check_int(args.k if args.k is not None else 0, "k", minimum=0)
    n = check_int(args.points, "points", minimum=2)
    p = solve_prolate_family(pr, k, args.trunc)[k]
    r = np.linspace(0.0, 1.0, n)
    vals = prolate_eval_radial(p, r)
    if args.format == "json":
        text = dumps_json({"prolate": p.to_dict(),
                           "samples": [{"r": float(a), "value": float(b)} for a, b in zip(r, vals)]})
        _emit(text + "\n", args.out)
    else:
        rows = [{"r": float(a), "value": float(b)} for a, b in zip(r, vals)]
        _emit(_table(rows, ("r", "value"), "csv"), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    if args.d is None or args.c is None:
        raise ConfigError("--d and --c are required")
    table = build_spectrum(args.d, args.c, args.tol if args.tol is not None else 1e-6)
    _emit(_table(table.rows(), ("m", "k", "mult", "chi", "nu_Q"), args.format), args.out)
    return EXIT_OK


def cmd_project(args) -> int:
    pr = _params(args, need_pointwise=True)
    nmax = check_int(args.Nmax if args.Nmax is not None else 12, "Nmax", minimum=0)
    f = make_gaussian_test(pr.d, pr.m, 1, args.sigma if args.sigma is not None else 1.0)
    rows = compare_projectors(f, pr.c, range(nmax + 1))
    _emit(_table(rows, PROJECTION_COLUMNS, args.format), args.out)
    return EXIT_OK


_VERIFY_ARGS = {"d": "d", "c": "c", "m": "m", "kmax": "kmax", "N": "N", "Nmax": "nmax",
                "delta": "delta", "tol": "tol", "sigma": "sigma", "seed": "seed"}


def _family_kwargs(name, args) -> dict:
    fn = suite.FAMILIES[name]
    accepted = set(inspect.signature(fn).parameters)
    kw = {"quick": args.quick}
    for flag, key in _VERIFY_ARGS.items():
        val = getattr(args, flag, None)
        if val is None:
            continue
        if key not in accepted:
            if flag != "seed":
                raise ConfigError(f"--{flag} is not used by 'verify {name}'")
            continue
        kw[key] = val
    if "c" in kw:
        check_real(kw["c"], "c", gt=0.0, le=MAX_C)
    if "delta" in kw and not 0 < kw["delta"] < 1:
        raise ConfigError("--delta must lie in (0, 1)")
    return kw


def cmd_verify(args) -> int:
    names = [n for n in suite.FAMILIES] if args.family == "all" else [args.family]
    if args.family == "all" and any(getattr(args, f) is not None for f in
                                    ("d", "c", "m", "kmax", "N", "Nmax", "delta", "tol", "sigma")):
        raise ConfigError("'verify all' runs fixed grids and accepts only --quick/--seed")
    reports = []
    t0 = time.perf_counter()
    for name in names:
        kw = _family_kwargs(name, args) if args.family != "all" else \
            {"quick": args.quick, **({"seed": args.seed} if name == "identities" else {})}
        reports.extend(suite.run_family(name, **kw))
    if args.format == "json":
        text = dumps_json([{**r.row(), "lhs": r.lhs, "rhs": r.rhs, "slack": r.slack,
                            "condition_met": bool(r.condition_met), "pass": bool(r.passed)}
                           for r in reports]) + "\n"
    else:
        text = write_csv((r.row() for r in reports), REPORT_COLUMNS)
    _emit(text, args.out)
    s = summarize(reports)
    failed = [r for r in reports if not r.ok]
    for r in failed:
        print(f"FAIL {r.name} {r.params} lhs={fmt_real(r.lhs)} rhs={fmt_real(r.rhs)}",
              file=sys.stderr)
    print(f"summary: total={s['total']} passed={s['passed']} failed={s['failed']} "
          f"skipped={s['skipped']} informational={s['informational']} "
          f"elapsed={time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


COMMANDS = {"eigs": cmd_eigs, "eval": cmd_eval, "spectrum": cmd_spectrum,
            "project": cmd_project, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            _params(args, need_pointwise=True)
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RuntimeError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
