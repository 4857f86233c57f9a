"""
Tomographic entropy CLI

Flow:
    --state / flags / config file
    → TomographyConfig (defaults < YAML < flags)
    → library call (tomogram, entropy scan, uncertainty function, figures, suite)
    → CSV/JSON artifact on stdout or --out
    → summary on stderr

Exit codes: 0 success, 1 failed verdict, 2 input error, 3 numeric/internal error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from ..errors import (
    DimensionError,
    ErrorKind,
    InvalidParameterError,
    InvariantViolationError,
    ParseError,
    TomographyError,
)
from ..states.spec_parser import StateSpecParser
from ..tomography.config import TomographyConfig, load_config
from ..tomography.entropy import ScanAxis, default_t_axis, entropy_scan, fresnel_axis
from ..tomography.tomogram import optical_tomogram, symplectic_tomogram
from ..verification.figures import gaussian_curves, soliton_curves
from ..verification.suite_runner import SuiteRunner
from ..verification.uncertainty import uncertainty_function
from .artifacts import emit, render_csv, render_json

# Rich imports for the stderr summaries
try:
    from rich.console import Console
    from rich.table import Table
    from rich.panel import Panel
    from rich import box
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False

console = Console(stderr=True) if RICH_AVAILABLE else None

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

INPUT_ERRORS = (ParseError, InvalidParameterError, DimensionError, InvariantViolationError)


def _say(message: str, style: str = "white"):
    if RICH_AVAILABLE:
        console.print(f"[{style}]{message}[/{style}]")
    else:
        print(message, file=sys.stderr)


def _report_error(kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


class Handler:
    """
    Runs one CLI command against a resolved configuration.

    Every number written by a cmd_* method comes from a library call; the
    handler only selects, formats and routes.
    """

    def __init__(self, config: TomographyConfig, output_format: Optional[str] = None, out: Optional[str] = None):
        self.config = config
        self.output_format = output_format
        self.out = out
        self.parser = StateSpecParser(config.sampled_norm_tolerance)

    def _format(self, default: str) -> str:
        return self.output_format or default

    def _write(self, rows: List[dict], columns: List[str], payload, default_format: str = "csv"):
        if self._format(default_format) == "json":
            emit(render_json(payload), self.out)
        else:
            emit(render_csv(rows, columns), self.out)

    def _t_axis(self, args) -> List[float]:
        return default_t_axis(args.t_points or self.config.t_points)

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def cmd_tomogram(self, args) -> int:
        state = self.parser.parse(args.state)
        if args.t is not None:
            tom = optical_tomogram(state, args.t, config=self.config)
        else:
            tom = symplectic_tomogram(state, args.mu, args.nu, config=self.config)

        rows = [{"X": float(x), "w": float(w)} for x, w in zip(tom.grid.points, tom.density)]
        payload = {"state": state.label, **tom.to_dict()}
        self._write(rows, ["X", "w"], payload)
        _say(f"normalization defect: {tom.normalization_defect:.3e}", "cyan")
        return EXIT_OK

    def cmd_entropy_scan(self, args) -> int:
        state = self.parser.parse(args.state)
        if args.fresnel:
            points = args.t_points or self.config.t_points
            scan = entropy_scan(state, fresnel_axis(args.nu_max, points), ScanAxis.FRESNEL, self.config)
        elif args.mu is not None or args.nu is not None:
            mu = 1.0 if args.mu is None else args.mu
            nu = 0.0 if args.nu is None else args.nu
            scan = entropy_scan(state, [(mu, nu)], ScanAxis.SYMPLECTIC, self.config)
        else:
            axis = [args.t] if args.t is not None else self._t_axis(args)
            scan = entropy_scan(state, axis, ScanAxis.ANGLE, self.config)

        payload = {"state": state.label, **scan.to_dict()}
        self._write(scan.rows(), ["param", "S", "err_est"], payload)
        _say(f"{len(scan.entropies)} entropies for {state.label}", "cyan")
        return EXIT_OK

    def cmd_uncertainty(self, args) -> int:
        state = self.parser.parse(args.state)
        report = uncertainty_function(state, r=args.r, t_axis=self._t_axis(args), config=self.config)
        self._write(report.rows(), ["t", "F"], report.to_dict())
        self._print_verdict(
            report.passed,
            f"min F = {report.min_f:.6g} at t = {report.argmin_t:.6g} (tolerance {report.tolerance:g})",
        )
        return EXIT_OK if report.passed else EXIT_VERDICT

    def cmd_fig1(self, args) -> int:
        curves = gaussian_curves(t_axis=self._t_axis(args), config=self.config)
        rows = [row for curve in curves for row in curve.rows()]
        self._write(rows, ["sigma", "t", "F_closed", "F_numeric"], {"curves": [c.to_dict() for c in curves]})
        for curve in curves:
            _say(f"sigma={curve.sigma:g}: max discrepancy {curve.max_discrepancy:.3e}", "cyan")
        return EXIT_OK

    def cmd_fig2(self, args) -> int:
        curves = soliton_curves(t_axis=self._t_axis(args), config=self.config)
        rows = [row for curve in curves for row in curve.rows()]
        self._write(rows, ["l_z", "t", "F"], {"curves": [c.to_dict() for c in curves]})
        for curve in curves:
            self._print_verdict(
                curve.report.passed,
                f"l_z={curve.l_z:g}: min F {curve.report.min_f:.6g}, max F {curve.report.max_f:.6g}",
            )
        return EXIT_OK if all(c.report.passed for c in curves) else EXIT_VERDICT

    def cmd_verify(self, args) -> int:
        runner = SuiteRunner(config=self.config)
        evaluation = runner.evaluate()
        rows = [{"check": r.check, "margin": r.margin, "pass": r.passed} for r in evaluation.results]
        self._write(rows, ["check", "margin", "pass"], evaluation.to_dict(), default_format="json")
        self._print_suite(evaluation)
        return EXIT_OK if evaluation.passed else EXIT_VERDICT

    # ------------------------------------------------------------------
    # Summaries
    # ------------------------------------------------------------------

    def _print_verdict(self, passed: bool, message: str):
        if passed:
            _say(f"✅ {message}", "green")
        else:
            _say(f"❌ {message}", "red")

    def _print_suite(self, evaluation):
        if not RICH_AVAILABLE:
            for r in evaluation.results:
                print(f"{'PASS' if r.passed else 'FAIL'} {r.check} margin={r.margin}", file=sys.stderr)
            return

        table = Table(box=box.SIMPLE, padding=(0, 1))
        table.add_column("Check", style="cyan")
        table.add_column("Margin", justify="right")
        table.add_column("Result")
        for r in evaluation.results:
            margin = "n/a" if r.margin is None else f"{r.margin:.3g}"
            table.add_row(r.check, margin, "[green]pass[/green]" if r.passed else "[red]FAIL[/red]")

        style = "green" if evaluation.passed else "red"
        title = "Suite: PASSED" if evaluation.passed else f"Suite: {len(evaluation.failures)} FAILED"
        console.print(Panel(table, title=f"[bold {style}]{title}[/bold {style}]", border_style=style))


COMMANDS = {
    "tomogram": Handler.cmd_tomogram,
    "entropy-scan": Handler.cmd_entropy_scan,
    "uncertainty": Handler.cmd_uncertainty,
    "fig1": Handler.cmd_fig1,
    "fig2": Handler.cmd_fig2,
    "verify": Handler.cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-n", type=int, default=None, help="Minimum lattice size")
    common.add_argument("--grid-halfwidth", type=float, default=None, help="Minimum window half-width")
    common.add_argument("--t-points", type=int, default=None, help="Angles on [0, pi) for sweeps")
    common.add_argument("--out", default=None, help="Output path (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--strict", action="store_true", default=None)
    common.add_argument("--force-fft", action="store_true", default=None, help="Numeric path for Gaussian states")
    common.add_argument("--tamper", action="store_true", default=None, help="Scale densities by 0.9")
    common.add_argument("--config", default=None, help="YAML config file")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])

    parser = argparse.ArgumentParser(prog="tomo-entropy", description="Tomograms, tomographic entropies and entropic uncertainty relations")
    sub = parser.add_subparsers(dest="command", required=True)

    tomogram = sub.add_parser("tomogram", parents=[common], help="Symplectic or optical tomogram")
    tomogram.add_argument("--state", required=True, help="JSON document or shorthand such as soliton:lz=2")
    tomogram.add_argument("--mu", type=float, default=1.0)
    tomogram.add_argument("--nu", type=float, default=0.0)
    tomogram.add_argument("--t", type=float, default=None, help="Optical angle; overrides --mu/--nu")

    scan = sub.add_parser("entropy-scan", parents=[common], help="Entropies over an angle or Fresnel axis")
    scan.add_argument("--state", required=True)
    scan.add_argument("--t", type=float, default=None, help="Single angle instead of the full axis")
    scan.add_argument("--mu", type=float, default=None)
    scan.add_argument("--nu", type=float, default=None)
    scan.add_argument("--fresnel", action="store_true", help="Scan nu on [0, --nu-max] at mu = 1")
    scan.add_argument("--nu-max", type=float, default=2.0)

    uncertainty = sub.add_parser("uncertainty", parents=[common], help="Entropic uncertainty function F(r, t)")
    uncertainty.add_argument("--state", required=True)
    uncertainty.add_argument("--r", type=float, default=1.0)

    sub.add_parser("fig1", parents=[common], help="Gaussian F(t) for waists 2 and 4")
    sub.add_parser("fig2", parents=[common], help="Soliton F(t) for widths 2, 3 and 4")
    sub.add_parser("verify", parents=[common], help="Run the verification suite")
    return parser


def _configure(args) -> TomographyConfig:
    return load_config(
        args.config,
        grid_n=args.grid_n,
        grid_halfwidth=args.grid_halfwidth,
        t_points=args.t_points,
        strict=args.strict,
        force_fft=args.force_fft,
        tamper=args.tamper,
        workers=args.workers,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)

    try:
        config = _configure(args)
        handler = Handler(config, output_format=args.format, out=args.out)
        return COMMANDS[args.command](handler, args)
    except INPUT_ERRORS as e:
        _report_error(e.kind.value, str(e))
        return EXIT_INPUT
    except ValidationError as e:
        _report_error(ErrorKind.INVALID_PARAMETERS.value, str(e))
        return EXIT_INPUT
    except TomographyError as e:
        _report_error(e.kind.value, str(e))
        return EXIT_NUMERIC
    except Exception as e:
        logger.exception(f"Unexpected failure in '{args.command}'")
        _report_error("internal", str(e))
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
