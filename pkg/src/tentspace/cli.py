"""Command-line front end.

Exit codes: 0 success, 1 a verification scenario failed or was rejected,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import Config, load_config
from .measures import MeasureOn01, carleson_analyze
from .norms import TentParams, bergman_norm, hardy_norm, tent_norm, tent_norm_derivative
from .operators import cesaro_like, duhamel_operator, hadamard_bergman, probe_points
from .quadrature import PolarRule, SupGrid
from .series import TaylorSeries
from .verify import (
    SCENARIOS,
    VerificationReport,
    default_catalog,
    exit_status,
    run_all,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--seed", type=int)
    p.add_argument("--degree", type=int, help="truncation degree N")
    p.add_argument("--grid-depth", type=int, help="sup-grid depth J")
    p.add_argument("--tolerance", type=float, help="cross-check tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tentspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("norm", help="norm of a series")
    _common(p)
    p.add_argument("--series", required=True, help="series JSON file")
    p.add_argument("--kind", choices=("tent", "derivative", "hardy", "bergman"), default="tent")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--t", type=float)

    p = sub.add_parser("apply", help="apply an operator to a series")
    _common(p)
    p.add_argument("operator", choices=("kg", "duhamel", "cesaro"))
    p.add_argument("--series", required=True, help="series JSON file (the function acted on)")
    p.add_argument("--kernel", help="second series: g for kg, f for duhamel")
    p.add_argument("--measure", help="measure JSON file or built-in name for cesaro")
    p.add_argument("--output-degree", type=int, help="output degree for cesaro")

    p = sub.add_parser("measure", help="moments and Carleson analysis")
    _common(p)
    p.add_argument("measure", help="measure JSON file or built-in name (lebesgue, atom:t0, beta:b)")
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--moments", type=int, default=16, help="highest moment order")

    p = sub.add_parser("verify", help="run verification scenarios")
    _common(p)
    p.add_argument("--scenario", default="all", help="scenario id or 'all'")
    p.add_argument("--measure", help="measure for the Cesaro-like scenarios")
    p.add_argument("--p", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--csv-dir", help="write one CSV per report into this directory")

    p = sub.add_parser("report", help="summarize a saved verification report")
    p.add_argument("report", help="JSON report array from 'verify'")
    p.add_argument("--out", help="write output here instead of stdout")
    return parser


def _load_series(path: str) -> TaylorSeries:
    return TaylorSeries.from_json(Path(path).read_text())


def _load_measure(spec: str) -> MeasureOn01:
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        m = MeasureOn01.from_json(path.read_text())
        return m if m.name else MeasureOn01(m.atoms, m.densities, name=path.stem)
    return MeasureOn01.parse(spec)


def _config(args) -> Config:
    cfg = load_config(getattr(args, "config", None))
    return cfg.with_overrides(
        seed=getattr(args, "seed", None),
        degree=getattr(args, "degree", None),
        grid_depth=getattr(args, "grid_depth", None),
        cross_check_tol=getattr(args, "tolerance", None),
    )


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_norm(args, cfg: Config) -> int:
    f = _load_series(args.series)
    grid, rule = SupGrid.dyadic(cfg.grid_depth), PolarRule(depth=cfg.radial_depth)
    if args.kind == "hardy":
        _emit(args, {"value": hardy_norm(f, args.p)})
    elif args.kind == "bergman":
        _emit(args, {"value": bergman_norm(f, args.p, rule)})
    else:
        params = TentParams(args.p, args.alpha, args.t)
        est = (tent_norm if args.kind == "tent" else tent_norm_derivative)(f, params, grid, rule)
        _emit(args, est.to_json())
    return EXIT_OK


def cmd_apply(args, cfg: Config) -> int:
    f = _load_series(args.series)
    probes = probe_points(cfg.probe_radii)
    tol = cfg.cross_check_tol
    if args.operator == "cesaro":
        if not args.measure:
            raise UsageError("apply cesaro needs --measure")
        res = cesaro_like(_load_measure(args.measure), f, args.output_degree, probes, tol)
    else:
        if not args.kernel:
            raise UsageError(f"apply {args.operator} needs --kernel")
        k = _load_series(args.kernel)
        if args.operator == "kg":
            res = hadamard_bergman(k, f, probes, tol)
        else:
            res = duhamel_operator(k, f, probes, tol, max_degree=max(cfg.degree, k.degree, f.degree))
    _emit(args, res.to_json())
    return EXIT_OK


def cmd_measure(args, cfg: Config) -> int:
    mu = _load_measure(args.measure)
    an = carleson_analyze(mu, args.s)
    _emit(
        args,
        {
            "measure": mu.to_json(),
            "total_mass": mu.total_mass,
            "moments": mu.moments(args.moments).tolist(),
            "carleson": an.to_json(),
        },
    )
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    if args.scenario == "all":
        catalog = default_catalog()
    elif args.scenario in SCENARIOS:
        kwargs = {}
        if args.measure is not None:
            kwargs["measure"] = args.measure
        if args.p is not None:
            kwargs["p"] = args.p
        if args.alpha is not None:
            kwargs["alpha"] = args.alpha
        catalog = [(args.scenario, kwargs)]
    else:
        raise UsageError(f"unknown scenario {args.scenario!r}; choose from: all, {', '.join(SCENARIOS)}")
    reports = run_all(catalog, cfg)
    _emit(args, [r.to_dict() for r in reports])
    if args.csv_dir:
        out = Path(args.csv_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, r in enumerate(reports):
            (out / f"{i:02d}_{r.scenario_id}.csv").write_text(r.to_csv())
    return exit_status(reports)


def cmd_report(args, cfg: Config | None = None) -> int:
    data = json.loads(Path(args.report).read_text())
    reports = [VerificationReport.from_dict(d) for d in data]
    lines = [
        f"{r.verdict.upper():8s} {r.scenario_id:24s} {r.statistic}={r.value:.4g} (tol {r.tolerance:.3g})"
        + (f"  {r.reason}" if r.reason else "")
        for r in reports
    ]
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} scenarios passed")
    _emit(args, "\n".join(lines))
    return exit_status(reports)


COMMANDS = {
    "norm": cmd_norm,
    "apply": cmd_apply,
    "measure": cmd_measure,
    "verify": cmd_verify,
    "report": cmd_report,
}


def parse_and_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args) if args.command != "report" else None
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (OSError, ValueError, KeyError) as exc:
        print(f"tentspace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(parse_and_dispatch())
