"""Command-line front end.

Exit codes: 0 all checks pass, 1 at least one verification failure (failing
rows are listed), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from .constants import FittedConstant, constant_report
from .kernel import GreenKernelParams
from .spectral import TorusGrid, gaussian_field
from .params import (
    ExponentPair,
    GroupGeometry,
    ParameterGrid,
    default_grid,
    grid_fingerprint,
    read_grid_config,
    refine_grid,
)
from .report import GoldenSnapshot, ResultTable, compare_golden, write_table
from .verify import (
    CheckResult,
    check_constants,
    check_interpolation,
    check_kernel,
    check_series,
    check_spectral,
    constants_table,
    envelope_table,
    run_all_checks,
)

DEFAULT_GOLDEN_TOLERANCES = {
    "B3_band": 0.05,
    "ipq_C": 0.05,
    "kernel_local_sup": 0.02,
    "kernel_global_sup": 0.02,
    "embed_A": 0.10,
    "embed_ratio": 0.05,
    "c4_empirical": 0.10,
    "gagliardo_max": 0.10,
}


@dataclass
class RunConfig:
    geometry: GroupGeometry
    grid: ParameterGrid
    tau_override: Optional[float] = None
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_GOLDEN_TOLERANCES))
    output_dir: Path = Path("results")
    fmt: str = "csv"
    golden_dir: Path = Path("golden")
    bless: bool = False
    jobs: int = 1


def _tolerance_for(key: str, tolerances: Dict[str, float]) -> float:
    for prefix, tol in tolerances.items():
        if key.startswith(prefix):
            return tol
    return 0.05


def _geometry_from_args(args) -> GroupGeometry:
    return GroupGeometry(
        d=args.geom_d,
        D=args.geom_growth,
        b=args.geom_b,
        c_heat=args.geom_c_heat,
        c_delta=args.geom_c_delta,
        c_chi=args.geom_c_chi,
        c_delta_chi_inv=args.geom_c_delta_chi_inv,
    )


def _grid_from_args(args) -> ParameterGrid:
    if args.config is not None:
        return read_grid_config(args.config)
    return default_grid()


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        geometry=_geometry_from_args(args),
        grid=_grid_from_args(args),
        tau_override=getattr(args, "tau", None),
        output_dir=Path(args.out),
        fmt=args.format,
        golden_dir=Path(getattr(args, "golden_dir", "golden")),
        bless=getattr(args, "bless", False),
        jobs=getattr(args, "jobs", 1),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sobolev-constants",
        description=(
            "Evaluate embedding constants, kernel envelopes and exponential-"
            "integrability thresholds, and verify the inequalities they obey."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="results", help="output directory for tables")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--config", default=None, help="grid config file (key = v1, v2, ...)")
    common.add_argument("--geom-d", type=int, default=1, help="local dimension")
    common.add_argument("--geom-growth", type=float, default=1.0, help="exponential growth rate D")
    common.add_argument("--geom-b", type=float, default=1.0, help="Gaussian decay rate b")
    common.add_argument("--geom-c-heat", type=float, default=1.0, help="heat prefactor c")
    common.add_argument("--geom-c-delta", type=float, default=0.0)
    common.add_argument("--geom-c-chi", type=float, default=0.0)
    common.add_argument("--geom-c-delta-chi-inv", type=float, default=0.0)

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_const = sub.add_parser("constants", parents=[common], help="closed-form constant tables")
    p_const.add_argument("--p", type=float, default=None)
    p_const.add_argument("--q", type=float, default=None)
    p_const.add_argument("--alpha", type=float, default=None)
    p_const.add_argument("--d", type=int, default=None)

    sub.add_parser("interp", parents=[common], help="interpolation assembly checks")

    p_kernel = sub.add_parser("kernel", parents=[common], help="kernel envelope checks")
    p_kernel.add_argument("--alpha", type=float, default=1.0, help="envelope profile order")
    p_kernel.add_argument("--d", type=int, default=3, help="envelope profile dimension")
    p_kernel.add_argument("--jobs", type=int, default=1)

    p_embed = sub.add_parser("embed", parents=[common], help="spectral embedding sweeps")
    p_embed.add_argument("--tau", type=float, default=None, help="override the spectral shift")
    p_embed.add_argument(
        "--dump-profiles", action="store_true", help="write (x, |f|) profiles for plotting"
    )

    sub.add_parser("mt", parents=[common], help="exponential-series checks")

    p_all = sub.add_parser("verify-all", parents=[common], help="run every check")
    p_all.add_argument("--tau", type=float, default=None)
    p_all.add_argument("--jobs", type=int, default=1)
    p_all.add_argument("--golden-dir", default="golden")
    p_all.add_argument("--bless", action="store_true", help="refresh golden snapshots")
    return parser


def _emit(result: CheckResult, cfg: RunConfig) -> None:
    for table in result.tables:
        write_table(table, cfg.output_dir, cfg.fmt)
    for line in result.lines:
        print(line)
    for failure in result.failures:
        print(f"failing check: {failure}", file=sys.stderr)


def _finish(result: CheckResult, cfg: RunConfig) -> int:
    _emit(result, cfg)
    return 0 if not result.failures else 1


def _point_constants(args) -> int:
    if args.d is None:
        raise ValueError("point mode needs --d")
    if args.q is None and args.alpha is None:
        raise ValueError("point mode needs --q or --alpha")
    if args.p is None or args.p <= 1.0:
        raise ValueError(f"--p must be > 1, got {args.p}")
    if args.alpha is not None:
        alpha = args.alpha
        if args.q is not None:
            implied = args.d * (1.0 / args.p - 1.0 / args.q)
            if abs(implied - alpha) > 1e-9:
                raise ValueError(
                    f"--q {args.q} and --alpha {alpha} disagree: the scaling relation "
                    f"gives alpha = {implied:g}"
                )
    else:
        if args.q < args.p:
            raise ValueError(f"--q must be >= --p, got q={args.q} < p={args.p}")
        alpha = args.d * (1.0 / args.p - 1.0 / args.q)
        alpha = max(alpha, 0.0)
    pair = ExponentPair(args.p, alpha, args.d)
    table = constants_table([pair])
    out = Path(args.out)
    write_table(table, out, args.format)
    report = constant_report(pair)
    print(f"p={pair.p:g} q={pair.q:g} alpha={pair.alpha:g} d={pair.d}")
    print(f"S        = {report.S:.12g}")
    print(f"Q        = {report.Q:.12g}")
    print(f"Q_dual   = {report.Q_dual:.12g}")
    print(f"F        = {report.F:.12g}")
    if report.E_H_tilde is not None:
        print(f"E_H_tilde = {report.E_H_tilde:.12g}")
        print(f"E_H_tilde/S = {report.ratio_EH_over_S:.12g}")
    return 0


def _run_constants(args) -> int:
    if args.p is not None or args.q is not None or args.alpha is not None:
        return _point_constants(args)
    cfg = _config_from_args(args)
    return _finish(check_constants(cfg.grid, refine_grid(cfg.grid)), cfg)


def _run_interp(args) -> int:
    cfg = _config_from_args(args)
    return _finish(check_interpolation(cfg.grid, refine_grid(cfg.grid)), cfg)


def _run_kernel(args) -> int:
    cfg = _config_from_args(args)
    result = check_kernel(cfg.geometry, jobs=cfg.jobs)
    profile = envelope_table(GreenKernelParams(args.alpha, args.d, 1.0, 1.0), cfg.geometry)
    profile.name = "envelope_profile"
    result.tables.append(profile)
    return _finish(result, cfg)


def _run_embed(args) -> int:
    cfg = _config_from_args(args)
    result = check_spectral(cfg.geometry, cfg.tau_override)
    if args.dump_profiles:
        grid = TorusGrid(1, 128, 16.0)
        table = ResultTable("field_profiles", ("width", "x", "abs_f"))
        for width in (0.5, 1.0, 2.0):
            f = gaussian_field(grid, width)
            xs = grid.axis_coordinates()
            for x, v in zip(xs, np.abs(np.asarray(f.values))):
                table.append((width, float(x), float(v)))
        result.tables.append(table)
    return _finish(result, cfg)


def _run_mt(args) -> int:
    cfg = _config_from_args(args)
    return _finish(check_series(), cfg)


def _run_verify_all(args) -> int:
    cfg = _config_from_args(args)
    refined = refine_grid(cfg.grid)
    result = run_all_checks(
        cfg.grid, refined, cfg.geometry, tau_override=cfg.tau_override, jobs=cfg.jobs
    )
    fingerprint = grid_fingerprint(cfg.grid)
    if cfg.bless:
        fitted = [
            FittedConstant(k, v, fingerprint, _tolerance_for(k, cfg.tolerances))
            for k, v in sorted(result.fitted.items())
        ]
        snapshot = GoldenSnapshot(
            "fitted_constants",
            fingerprint,
            {f.name: (f.value, f.tolerance) for f in fitted},
        )
        path = snapshot.to_file(cfg.golden_dir)
        result.lines.append(f"[PASS] golden snapshot refreshed at {path}")
    else:
        golden_path = cfg.golden_dir / "fitted_constants.json"
        if not golden_path.exists():
            result.record(
                "golden snapshot comparison",
                False,
                f"no snapshot at {golden_path}; run with --bless to create it",
            )
        else:
            snapshot = GoldenSnapshot.from_file(golden_path)
            comparison = compare_golden(result.fitted, snapshot, fingerprint)
            detail = f"{comparison.checked} keys"
            if comparison.failures:
                detail = "; ".join(comparison.failures[:4])
            result.record("golden snapshot comparison", comparison.ok, detail)
    return _finish(result, cfg)


_HANDLERS = {
    "constants": _run_constants,
    "interp": _run_interp,
    "kernel": _run_kernel,
    "embed": _run_embed,
    "mt": _run_mt,
    "verify-all": _run_verify_all,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        return _HANDLERS[args.subcommand](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
