"""Command-line entry point for nodal-nesting."""

import logging
from collections.abc import Callable
from pathlib import Path
from typing import Annotated

import typer
from pydantic import ValidationError

from nodal_nesting.config import configure_logging
from nodal_nesting.ensembles import EnsembleKind, EnsembleSpec
from nodal_nesting.errors import ConfigError, NodalNestingError
from nodal_nesting.harness import (
    ExperimentConfig,
    ExperimentOutcome,
    ReplicateError,
    load_config,
    run_experiment,
    sweep_manifold,
)
from nodal_nesting.lemmas import run_lemma_suite
from nodal_nesting.sampler import GridSpec, auto_spacing, default_lags, validate_covariance

logger = logging.getLogger(__name__)

EXIT_INVALID = 2
EXIT_REPLICATE = 3

app = typer.Typer(
    name="nodal-nesting",
    help="Monte Carlo nodal-domain topology of stationary Gaussian fields.",
    no_args_is_help=True,
    add_completion=False,
)

ConfigOption = Annotated[
    Path,
    typer.Option("--config", "-c", exists=True, dir_okay=False, help="YAML experiment file"),
]
SeedOption = Annotated[int, typer.Option("--seed", min=0, help="Base seed")]


def _guard[T](action: Callable[[], T]) -> T:
    """Run a command body, mapping failures to exit codes."""
    try:
        return action()
    except ReplicateError as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(EXIT_REPLICATE) from exc
    except (ValidationError, ConfigError, NodalNestingError, ValueError) as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(EXIT_INVALID) from exc


def _parse_radii(value: str) -> list[float]:
    try:
        return [float(part) for part in value.split(",") if part.strip()]
    except ValueError as exc:
        raise typer.BadParameter(f"expected a comma-separated list of numbers: {exc}") from exc


def _echo_outcome(outcome: ExperimentOutcome) -> None:
    for radius in outcome.report.radii:
        line = (
            f"R={radius.radius:g}  c_NS={radius.nazarov_sodin.value:.6g}"
            f"+-{radius.nazarov_sodin.se:.2g}  P={radius.percolation.value:.6g}"
            f"+-{radius.percolation.se:.2g}"
        )
        if radius.mean_connectivity is not None:
            line += f"  mean_k={radius.mean_connectivity.value:.6g}"
        if radius.tail is not None:
            line += f"  alpha={radius.tail.alpha:.4g}+-{radius.tail.se:.2g}"
        typer.echo(line)
    decay = outcome.report.percolation_decay
    if decay is not None:
        typer.echo(f"beta={decay.beta:.4g} (95% CI {decay.ci_low:.4g}..{decay.ci_high:.4g})")
    typer.echo(f"wrote {outcome.output_dir}")


def _lemma_violations(outcome: ExperimentOutcome) -> int:
    suite = outcome.manifest.lemma_suite
    return suite.violations if suite is not None else 0


@app.callback()
def _root(
    log_level: Annotated[
        str | None, typer.Option("--log-level", help="Overrides NODAL_NESTING_LOG_LEVEL")
    ] = None,
) -> None:
    configure_logging(log_level)


@app.command()
def simulate(config: ConfigOption) -> None:
    """Run the experiment described by a YAML file."""
    outcome = _guard(lambda: run_experiment(load_config(config), command="simulate"))
    _echo_outcome(outcome)
    if violations := _lemma_violations(outcome):
        typer.echo(f"lemma suite: {violations} violations", err=True)
        raise typer.Exit(EXIT_INVALID)


@app.command()
def percolation(
    ensemble: Annotated[EnsembleKind, typer.Option("--ensemble", help="Ensemble name")],
    radii: Annotated[str, typer.Option("--R", help="Comma-separated radii, e.g. 8,16,32")],
    replicates: Annotated[int, typer.Option("--reps", min=2)] = 500,
    seed: SeedOption = 0,
    dimension: Annotated[int, typer.Option("--dimension", min=2, max=3)] = 2,
    output_dir: Annotated[Path, typer.Option("--output-dir")] = Path("results"),
) -> None:
    """Estimate P(R) only; no nesting trees are built."""

    def body() -> ExperimentOutcome:
        config = ExperimentConfig.model_validate(
            {
                "ensemble": ensemble,
                "dimension": dimension,
                "R": _parse_radii(radii),
                "replicates": replicates,
                "seed": seed,
                "output_dir": output_dir,
                "percolation_only": True,
            }
        )
        return run_experiment(config, command="percolation")

    _echo_outcome(_guard(body))


@app.command()
def sweep(config: ConfigOption) -> None:
    """Arithmetic random wave domain counts over the configured sweep_n."""

    def body() -> None:
        experiment = load_config(config)
        if not experiment.sweep_n:
            raise ConfigError(f"{config} defines no sweep_n values")
        report = sweep_manifold(experiment)
        for point in report.points:
            if point.skipped or point.ratio is None:
                typer.echo(f"n={point.n}  skipped: {point.skipped}")
            else:
                line = (
                    f"n={point.n}  r={point.multiplicity}  "
                    f"N/n^(d/2)={point.ratio.value:.6g}+-{point.ratio.se:.2g}"
                )
                if point.planar_relative_difference is not None:
                    line += f"  vs plane {point.planar_relative_difference:+.1%}"
                typer.echo(line)
        if report.planar_c_ns is not None:
            c_ns = report.planar_c_ns
            typer.echo(
                f"planar c_NS (R={report.planar_radius:g}) = {c_ns.value:.6g}+-{c_ns.se:.2g}"
            )

    _guard(body)


@app.command()
def check(
    cases: Annotated[int, typer.Option("--cases", min=1)] = 1000,
    seed: SeedOption = 0,
    output_dir: Annotated[Path, typer.Option("--output-dir")] = Path("reproducers"),
) -> None:
    """Run the randomized lemma and Euler identity checks."""
    report = _guard(lambda: run_lemma_suite(cases, seed, output_dir))
    for name, count in sorted(report.checked.items()):
        typer.echo(f"{name}: {count} cases")
    if report.violations:
        typer.echo(
            f"{report.violations} violations; reproducers in {output_dir}", err=True
        )
        raise typer.Exit(EXIT_INVALID)
    typer.echo("no violations")


@app.command()
def covariance(
    ensemble: Annotated[EnsembleKind, typer.Option("--ensemble", help="Ensemble name")],
    replicates: Annotated[int, typer.Option("--reps", min=1)] = 1000,
    radius: Annotated[
        float | None,
        typer.Option("--R", help="Half width; defaults to 16, or the unit torus for ARW"),
    ] = None,
    spacing: Annotated[float | None, typer.Option("--spacing")] = None,
    tolerance: Annotated[float, typer.Option("--tolerance")] = 0.02,
    band_alpha: Annotated[float | None, typer.Option("--alpha")] = None,
    arithmetic_n: Annotated[int | None, typer.Option("--n")] = None,
    dimension: Annotated[int, typer.Option("--dimension", min=2, max=3)] = 2,
    seed: SeedOption = 0,
) -> None:
    """Compare the sampler's empirical covariance with the analytic kernel."""

    def body() -> bool:
        spec = EnsembleSpec.model_validate(
            {
                "kind": ensemble,
                "dimension": dimension,
                "band_alpha": band_alpha,
                "arithmetic_n": arithmetic_n,
            }
        )
        torus = ensemble == EnsembleKind.ARITHMETIC_RANDOM_WAVE
        half_width = radius if radius is not None else (0.5 if torus else 16.0)
        grid = GridSpec(
            dimension=spec.dimension,
            half_width=half_width,
            spacing=spacing or auto_spacing(spec, half_width),
            periodic=torus,
        )
        report = validate_covariance(
            spec, grid, replicates, default_lags(spec, grid), tolerance, base_seed=seed
        )
        for lag in report.checks:
            status = "ok" if lag.passed else "FAIL"
            typer.echo(
                f"lag={lag.lag}  empirical={lag.empirical:.5f}  analytic={lag.analytic:.5f}"
                f"  se={lag.standard_error:.2g}  {status}"
            )
        return report.passed

    if not _guard(body):
        typer.echo("covariance gate failed", err=True)
        raise typer.Exit(EXIT_INVALID)


def main() -> None:
    """Run the nodal-nesting CLI."""
    app()


if __name__ == "__main__":
    main()
