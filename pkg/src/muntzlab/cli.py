"""
Command line front end.

Every subcommand builds a :class:`~muntzlab.checks.CheckInputs` from its
options, runs one or more named checks and writes the reports as JSON (to
``--json`` or stdout) and optionally as CSV plot data (``--csv``).

Exit status is 0 when every check passed, 2 when a check failed (including
spectrum validation and accuracy failures) and 1 for malformed input.
"""

import functools
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import click

from . import __version__
from .checks import ALL_CHECKS, CheckInputs, spectrum_rejected
from .errors import AccuracyError, InputError, MuntzLabError, SpectrumError
from .measure import MeasureSpec
from .quad import DEFAULT_CONFIG, QuadratureConfig, validate_config
from .reports import CheckReport, reports_to_json, write_csv
from .runner import Check, run_checks_sync
from .specfiles import load_json, load_measure, parse_spectrum
from .spectrum import BlockSpectrum
from .typing import ExitCode


__all__ = ("SEED_ENVVAR", "cli", "console_main", "main")

log = logging.getLogger(__name__)

SEED_ENVVAR = "MUNTZLAB_SEED"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

F = TypeVar("F", bound=Callable[..., Any])


_SHARED_OPTIONS = (
    click.option(
        "--spectrum",
        "spectrum_path",
        type=click.Path(dir_okay=False),
        default=None,
        help="Spectrum JSON file (default: 2**k, 12 terms).",
    ),
    click.option(
        "--measure",
        "measure_path",
        type=click.Path(dir_okay=False),
        default=None,
        help="Measure JSON file (default: Jacobi weight with alpha = beta - 1).",
    ),
    click.option("--p", "p", type=float, default=2.0, show_default=True),
    click.option("--beta", type=float, default=0.5, show_default=True),
    click.option("--alpha", type=float, default=None, help="Jacobi weight exponent."),
    click.option("--trials", type=int, default=200, show_default=True),
    click.option(
        "--seed",
        type=int,
        default=0,
        show_default=True,
        help=f"Sampling seed; {SEED_ENVVAR} takes precedence when set.",
    ),
    click.option(
        "--csv", "csv_path", type=click.Path(dir_okay=False), default=None
    ),
    click.option(
        "--json", "json_path", type=click.Path(dir_okay=False), default=None
    ),
    click.option("--tol", type=float, default=None, help="Quadrature relative tolerance."),
    click.option("--verbose", "-v", is_flag=True, help="Log progress to stderr."),
)


def _shared_options(command: F) -> F:
    for option in reversed(_SHARED_OPTIONS):
        command = option(command)
    return command


def _parse_exponents(
    ctx: click.Context, param: click.Parameter, value: Optional[str]
) -> Tuple[float, ...]:
    if not value:
        return ()
    try:
        return tuple(float(item) for item in value.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"expected comma separated numbers, got {value!r}") from exc


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


def _seed(option: int) -> int:
    raw = os.environ.get(SEED_ENVVAR)
    if raw is None or not raw.strip():
        return option
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(SEED_ENVVAR, f"expected an integer, got {raw!r}") from exc


def _config(tol: Optional[float]) -> QuadratureConfig:
    if tol is None:
        return DEFAULT_CONFIG
    cfg = DEFAULT_CONFIG._replace(rel_tol=tol)
    validate_config(cfg)
    return cfg


def _emit(reports: Sequence[CheckReport], options: Dict[str, Any]) -> None:
    text = reports_to_json(reports)
    json_path: Optional[str] = options["json_path"]
    if json_path is None:
        click.echo(text)
    else:
        with open(json_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    csv_path: Optional[str] = options["csv_path"]
    if csv_path is not None:
        write_csv(reports, csv_path)


def _execute(names: Sequence[str], options: Dict[str, Any]) -> ExitCode:
    _configure_logging(options["verbose"])
    seed = _seed(options["seed"])
    cfg = _config(options["tol"])
    digests: Dict[str, str] = {}

    spectrum: Optional[BlockSpectrum] = None
    if options["spectrum_path"] is not None:
        loaded = load_json(options["spectrum_path"])
        digests["spectrum"] = loaded.digest
        try:
            spectrum = parse_spectrum(loaded.value)
        except SpectrumError as exc:
            log.warning("spectrum rejected (%s at %d): %s", exc.constraint, exc.index, exc.message)
            _emit([spectrum_rejected(exc, CheckInputs(digests=digests, seed=seed))], options)
            return ExitCode.check_failed

    measure: Optional[MeasureSpec] = None
    if options["measure_path"] is not None:
        loaded = load_measure(options["measure_path"])
        digests["measure"] = loaded.digest
        measure = loaded.value

    inputs = CheckInputs(
        spectrum=spectrum,
        measure=measure,
        digests=digests,
        p=options["p"],
        beta=options["beta"],
        alpha=options["alpha"],
        q_exp=options.get("q_exp"),
        exponents=options.get("exponents", ()),
        i_max=options.get("imax", 12),
        trials=options["trials"],
        seed=seed,
        cfg=cfg,
    )
    if inputs.trials < 1:
        raise InputError("trials", f"must be at least 1, got {inputs.trials}")

    checks = [
        Check(name, functools.partial(ALL_CHECKS[name], inputs)) for name in names
    ]
    reports = run_checks_sync(checks)
    _emit(reports, options)

    failed = [report.check_name for report in reports if not report.passed]
    if failed:
        log.warning("failed checks: %s", ", ".join(failed))
        return ExitCode.check_failed
    return ExitCode.ok


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__, prog_name="muntzlab")
def cli() -> None:
    """
    Numerical checks for Muntz polynomials on quasi-lacunary spectra.
    """


@cli.command()
@_shared_options
def spectrum(**options: Any) -> ExitCode:
    """
    Validate a spectrum and report q, N and the block sizes.
    """
    return _execute(("spectrum",), options)


@cli.command()
@_shared_options
def decoupling(**options: Any) -> ExitCode:
    """
    Bracket the L^p decoupling ratio over random polynomials.
    """
    return _execute(("decoupling",), options)


@cli.command()
@_shared_options
def kernel(**options: Any) -> ExitCode:
    """
    Range of the weighted kernel against its closed-form rate.
    """
    return _execute(("kernel",), options)


@cli.command()
@_shared_options
@click.option("--q-exp", "q_exp", type=float, default=None, help="Target exponent (default: p).")
def bernstein(**options: Any) -> ExitCode:
    """
    Bracket the block Bernstein ratio.
    """
    return _execute(("bernstein",), options)


@cli.command()
@_shared_options
def embedding(**options: Any) -> ExitCode:
    """
    Search for the embedding constant and compare convergence verdicts.
    """
    return _execute(("embedding",), options)


@cli.command()
@_shared_options
def classify(**options: Any) -> ExitCode:
    """
    Tail class membership of a measure, with the series verdicts.
    """
    return _execute(("classify",), options)


@cli.command()
@_shared_options
@click.option(
    "--exponents",
    callback=_parse_exponents,
    default=None,
    help="Comma separated exponents; the conjugate is appended to a single one.",
)
@click.option("--imax", type=int, default=12, show_default=True)
def schur(**options: Any) -> ExitCode:
    """
    Schur test row and column sums, compared at imax and 2 imax.
    """
    return _execute(("schur",), options)


@cli.command(name="all")
@_shared_options
def run_all(**options: Any) -> ExitCode:
    """
    Every check plus the quadrature, Cantor and inequality property
    suites, with shared inputs; fails if any of them fails.
    """
    return _execute(tuple(ALL_CHECKS), options)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and return the exit status instead of exiting.
    """
    try:
        result = cli.main(args=argv, prog_name="muntzlab", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return ExitCode.input_error
    except click.Abort:
        click.echo("aborted", err=True)
        return ExitCode.input_error
    except (SpectrumError, AccuracyError) as exc:
        click.echo(f"check failed: {exc.message}", err=True)
        return ExitCode.check_failed
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        return ExitCode.input_error
    except MuntzLabError as exc:
        # domain errors and unsupported measures
        click.echo(f"error: {exc.message}", err=True)
        return ExitCode.input_error

    if isinstance(result, int):
        return int(result)
    return ExitCode.ok


def console_main() -> None:
    sys.exit(main())
