"""Command-line entry point: verification reports in text and JSON.

Subcommands:
    info      algebra parameters, dimension, and basis sanity checks
    verify    run one or all verification suites (exit 0 iff all pass)
    ext-dims  dimension table with closed-form comparison and growth rate

Exit codes: 0 all selected checks pass, 1 at least one check fails,
2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, asdict

from . import ext, resolution as rsl
from .qalgebra import (
    InvalidBraiding,
    MODE_FULL,
    MODE_GRADED,
    N2Algebra,
    format_scalar,
    make_algebra,
    standard_braiding,
)
from .scalars import make_field

SCHEMA_VERSION = 1
SUITES = ("complex", "exact", "dtilde", "appendix", "relations", "e2", "k2")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    N: int
    field: str
    q12_exp: int
    mode: str
    n_max: int
    convention: str | None
    json_path: str | None
    suite: str


def default_n_max(N: int) -> int:
    if N == 2:
        return 10
    if N == 3:
        return 8
    return 6


def _minimal_L(N: int, L: int) -> int:
    """Smallest multiple of L that is also a multiple of the order N."""
    m = L
    while m % N:
        m += L
    return m


def build_config(args) -> RunConfig:
    N = args.N
    if N < 2 or (N > 2 and N % 2 == 0):
        raise ConfigError("N must be 2 or an odd number >= 3")
    try:
        field = make_field(args.field)
    except Exception as e:
        raise ConfigError(f"bad field spec {args.field!r}: {e}") from e
    if field.L % N:
        raise ConfigError(
            f"the field has no root of unity of order {N}: "
            f"{N} does not divide L = {field.L}; "
            f"the smallest valid L here is {_minimal_L(N, field.L)}"
        )
    n_max = args.n_max if args.n_max is not None else default_n_max(N)
    if n_max < 1:
        raise ConfigError("n-max must be at least 1")
    return RunConfig(
        N=N,
        field=args.field,
        q12_exp=args.q12_exp,
        mode=args.mode,
        n_max=n_max,
        convention=args.convention,
        json_path=args.json,
        suite=getattr(args, "suite", "all"),
    )


def make_config_algebra(cfg: RunConfig):
    field = make_field(cfg.field)
    try:
        params = standard_braiding(
            cfg.N, field, q12_exp=cfg.q12_exp, mode=cfg.mode
        )
        return make_algebra(params, field)
    except InvalidBraiding as e:
        raise ConfigError(str(e)) from e


def check(name: str, passed: bool, details: str = "") -> dict:
    return {
        "name": name,
        "status": "pass" if passed else "fail",
        "details": details,
    }


def skipped(name: str, details: str) -> dict:
    return {"name": name, "status": "skipped", "details": details}


def _absorb(checks: list, prefix: str, report: dict) -> None:
    """Fold a verification report's sub-checks into the check list."""
    for item in report.get("checks", []):
        name, good = item[0], item[1]
        extra = " ".join(str(x) for x in item[2:])
        checks.append(check(f"{prefix}: {name}", bool(good), extra))


def cmd_info(cfg: RunConfig) -> dict:
    algebra = make_config_algebra(cfg)
    checks = []
    expect = 8 if cfg.N == 2 else cfg.N**3
    checks.append(
        check("algebra dimension", algebra.dim == expect,
              f"dim = {algebra.dim}, expected {expect}")
    )
    if isinstance(algebra, N2Algebra):
        checks.append(skipped("reversed-basis invertibility",
                              "specific to N >= 3"))
    else:
        ok = algebra.reverse_basis_invertible()
        checks.append(check("reversed-basis invertibility", ok,
                            "both generator orderings give bases"))
    report = base_report(cfg, checks)
    report["parameters"] = {
        "dim": algebra.dim,
        "qbar": format_scalar(algebra.qbar),
        "q12": format_scalar(algebra.q12),
        "q21": format_scalar(algebra.q21),
    }
    return report


def cmd_ext_dims(cfg: RunConfig) -> dict:
    algebra = make_config_algebra(cfg)
    res = rsl.build_resolution(algebra, cfg.n_max + 1)
    cochain = ext.hom_complex(res)
    dims = ext.ext_dimensions(cochain, cfg.n_max)
    checks = []
    if cfg.mode == MODE_FULL:
        closed = [ext.closed_form_dimension(n, cfg.N) for n in range(cfg.n_max + 1)]
        checks.append(check("closed-form dimensions", dims == closed,
                            f"computed {dims}, closed form {closed}"))
    else:
        closed = [(n + 1) * (n + 2) // 2 for n in range(cfg.n_max + 1)]
        checks.append(check("triangular dimensions", dims == closed,
                            f"computed {dims}, expected {closed}"))
    if cfg.n_max >= 4:
        cx = ext.complexity_estimate(dims)
        checks.append(check("growth rate", True, f"complexity = {cx}"))
    else:
        checks.append(skipped("growth rate", "needs n-max >= 4"))
    report = base_report(cfg, checks)
    report["ext_dims"] = dims
    return report


def cmd_verify(cfg: RunConfig) -> dict:
    algebra = make_config_algebra(cfg)
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    res = cochain = None
    if {"complex", "exact", "e2", "k2"} & set(names):
        res = rsl.build_resolution(algebra, cfg.n_max + 1)
        cochain = ext.hom_complex(res)
    checks: list = []
    dims = None
    for suite in names:
        if suite == "complex":
            rep = rsl.verify_complex(res)
            for n, good in sorted(rep["degrees"].items()):
                checks.append(check(f"complex: squared differential degree {n}",
                                    good, "composite is zero"))
        elif suite == "exact":
            rep = rsl.verify_exactness(res, cfg.n_max)
            for n, good in sorted(rep["positions"].items()):
                checks.append(check(
                    f"exact: homology vanishes at degree {n}", good,
                    f"kernel dim {rep['kernel_dims'].get(n)}"))
        elif suite == "dtilde":
            if cfg.N == 2 or cfg.mode != MODE_FULL:
                checks.append(skipped("dtilde", "needs full mode and N >= 3"))
            else:
                rep = rsl.verify_dtilde_cases(algebra, a_max=min(cfg.n_max, 8))
                _absorb(checks, "dtilde", rep)
        elif suite == "appendix":
            if cfg.mode != MODE_FULL:
                checks.append(skipped("appendix", "needs full mode"))
            else:
                rep = ext.verify_appendix_maps(algebra)
                _absorb(checks, "appendix", rep)
        elif suite == "relations":
            if cfg.mode != MODE_FULL:
                checks.append(skipped("relations", "needs full mode"))
            else:
                rep = ext.verify_relations(algebra, convention=cfg.convention)
                _absorb(checks, "relations", rep)
                checks.append(check(
                    "relations: validating convention", rep["ok"],
                    f"convention = {rep['convention']}"))
        elif suite == "e2":
            if cfg.N == 2 or cfg.mode != MODE_FULL:
                checks.append(skipped("e2", "needs full mode and N >= 3"))
            else:
                dims = ext.ext_dimensions(cochain, cfg.n_max)
                rep = ext.e2_column_check(dims)
                _absorb(checks, "e2", rep)
        elif suite == "k2":
            conv = cfg.convention or ext.CONVENTIONS[0]
            rep = ext.k2_spanning_check(
                cochain, min(cfg.n_max, 6), convention=conv)
            _absorb(checks, "k2", rep)
    report = base_report(cfg, checks)
    if dims is not None:
        report["ext_dims"] = dims
    return report


def base_report(cfg: RunConfig, checks: list) -> dict:
    config = asdict(cfg)
    config.pop("json_path", None)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "checks": checks,
        "ext_dims": [],
        "timing_ms": 0,
    }


def render_text(report: dict, out) -> None:
    cfg = report["config"]
    print("config:", " ".join(f"{k}={v}" for k, v in cfg.items()), file=out)
    if "parameters" in report:
        p = report["parameters"]
        print("parameters:", " ".join(f"{k}={v}" for k, v in p.items()),
              file=out)
    for c in report["checks"]:
        line = f"[{c['status'].upper():7}] {c['name']}"
        if c["details"]:
            line += f" — {c['details']}"
        print(line, file=out)
    if report["ext_dims"]:
        print("ext_dims:", report["ext_dims"], file=out)
    verdict = "PASS" if report_ok(report) else "FAIL"
    print(f"result: {verdict} ({report['timing_ms']} ms)", file=out)


def report_ok(report: dict) -> bool:
    return all(c["status"] != "fail" for c in report["checks"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nichols-a2",
        description="Exact verification of the rank-2 Nichols algebra, its "
                    "resolutions, and its Ext algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--N", type=int, default=3,
                       help="order of the diagonal parameter (2 or odd >= 3)")
        p.add_argument("--field", default=None,
                       help='"cyclotomic:L" or "fp:p:L" (default cyclotomic:3N)')
        p.add_argument("--q12-exp", type=int, default=1, dest="q12_exp",
                       help="q12 as this power of the primitive L-th root")
        p.add_argument("--mode", choices=(MODE_FULL, MODE_GRADED),
                       default=MODE_FULL)
        p.add_argument("--n-max", type=int, default=None, dest="n_max",
                       help="top cohomological degree (default 8/6/10 for "
                            "N=3 / N>=5 / N=2)")
        p.add_argument("--convention", choices=("left", "right"), default=None,
                       help="Yoneda composition order (default: auto-detect)")
        p.add_argument("--json", default=None, metavar="PATH",
                       help="also write the report as JSON to PATH")

    p_info = sub.add_parser("info", help="algebra parameters and basis sanity")
    common(p_info)
    p_verify = sub.add_parser("verify", help="run verification suites")
    common(p_verify)
    p_verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p_dims = sub.add_parser("ext-dims", help="cohomology dimension table")
    common(p_dims)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.field is None:
        args.field = f"cyclotomic:{3 * args.N}" if args.N != 2 else "cyclotomic:4"
    t0 = time.monotonic()
    try:
        cfg = build_config(args)
        handler = {
            "info": cmd_info,
            "verify": cmd_verify,
            "ext-dims": cmd_ext_dims,
        }[args.command]
        report = handler(cfg)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    report["timing_ms"] = int((time.monotonic() - t0) * 1000)
    render_text(report, sys.stdout)
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return 0 if report_ok(report) else 1


if __name__ == "__main__":
    sys.exit(main())
