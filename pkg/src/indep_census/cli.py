"""CLI for indep-census."""

import json
import logging
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import StrEnum
from pathlib import Path

import typer

from indep_census._brute import CensusOptions, CensusReport, verify as run_verification
from indep_census._errors import IndepError, ValidationError
from indep_census._report import (
    render_csv,
    render_json,
    render_pair_table,
    render_table,
    render_trials,
    render_verification,
    trials_to_dict,
    verification_to_dict,
)
from indep_census._space import SampleSpace, load_weights, uniform_space
from indep_census._stability import PUBLISHED_SEEDS, perturbed_census, persistent_pairs
from indep_census.census import Engine, grand_census, tuple_census

logger = logging.getLogger(__name__)

app = typer.Typer(
    no_args_is_help=True, help="Count independent events of finite probability spaces."
)
stability = typer.Typer(no_args_is_help=True, help="Perturbation and persistence experiments.")
app.add_typer(stability, name="stability")


class OutputFormat(StrEnum):
    TABLE = "table"
    JSON = "json"
    CSV = "csv"


@contextmanager
def _reporting_errors() -> Iterator[None]:
    try:
        yield
    except IndepError as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(1) from exc


def _space(n: int | None, weights: Path | None) -> SampleSpace:
    if weights is not None:
        space = load_weights(weights)
        if n is not None and n != space.n:
            raise ValidationError(f"--n {n} disagrees with {space.n} weights in {weights}")
        return space
    if n is None:
        raise ValidationError("give --n or --weights")
    return uniform_space(n)


def _emit(report: CensusReport, fmt: OutputFormat, timing: bool) -> None:
    if fmt is OutputFormat.JSON:
        text = render_json(report, timing)
    elif fmt is OutputFormat.CSV:
        text = render_csv(report)
    else:
        text = render_table(report, timing)
    typer.echo(text, nl=False)


def _json(data: object) -> str:
    return json.dumps(data, indent=2) + "\n"


@app.callback()
def _root(
    verbose: int = typer.Option(
        0, "--verbose", "-v", count=True, help="Log progress (-v) or details (-vv) to stderr"
    ),
) -> None:
    """Count independent events of finite probability spaces."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True
    )


N_OPTION = typer.Option(None, "--n", min=1, help="Number of equally likely outcomes")
WEIGHTS_OPTION = typer.Option(
    None, "--weights", exists=True, dir_okay=False, help="File with one outcome weight per line"
)
TRIVIAL_OPTION = typer.Option(False, "--include-trivial", help="Also count ∅ and Ω")
LIST_OPTION = typer.Option(0, "--list", min=0, help="List up to this many witnesses")
FORMAT_OPTION = typer.Option(OutputFormat.TABLE, "--format", help="Output format")
THREADS_OPTION = typer.Option(
    1, "--threads", min=1, envvar="INDEP_THREADS", help="Worker processes for brute force"
)
ENGINE_OPTION = typer.Option(Engine.AUTO, "--engine", help="Counting engine")
TIMING_OPTION = typer.Option(False, "--timing", help="Report elapsed time and worker count")


@app.command()
def table(
    n: int = typer.Option(..., "--n", min=1, help="Number of equally likely outcomes"),
) -> None:
    """Print the table of independent pair classes of the uniform space."""
    with _reporting_errors():
        typer.echo(render_pair_table(n), nl=False)


@app.command()
def pairs(
    n: int | None = N_OPTION,
    weights: Path | None = WEIGHTS_OPTION,
    include_trivial: bool = TRIVIAL_OPTION,
    list_cap: int = LIST_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    threads: int = THREADS_OPTION,
    engine: Engine = ENGINE_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Count unordered independent pairs of events."""
    with _reporting_errors():
        options = CensusOptions(include_trivial, list_cap, threads)
        report = tuple_census(_space(n, weights), 2, options, engine)
        _emit(report, fmt, timing)


@app.command()
def tuples(
    k: int = typer.Option(..., "--k", min=2, help="Number of events in each tuple"),
    n: int | None = N_OPTION,
    weights: Path | None = WEIGHTS_OPTION,
    include_trivial: bool = TRIVIAL_OPTION,
    list_cap: int = LIST_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    threads: int = THREADS_OPTION,
    engine: Engine = ENGINE_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Count unordered mutually independent k-tuples of events."""
    with _reporting_errors():
        options = CensusOptions(include_trivial, list_cap, threads)
        report = tuple_census(_space(n, weights), k, options, engine)
        _emit(report, fmt, timing)


@app.command()
def census(
    n: int | None = N_OPTION,
    weights: Path | None = WEIGHTS_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
    threads: int = THREADS_OPTION,
    engine: Engine = ENGINE_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Count independent tuples of every size, pairs included."""
    with _reporting_errors():
        report = grand_census(_space(n, weights), CensusOptions(workers=threads), engine)
        _emit(report, fmt, timing)


@app.command()
def verify(
    n: int = typer.Option(..., "--n", min=1, help="Number of equally likely outcomes"),
    k: int | None = typer.Option(None, "--k", min=2, help="Largest tuple size to check"),
    fmt: OutputFormat = FORMAT_OPTION,
    threads: int = THREADS_OPTION,
) -> None:
    """Check the analytic counts against exhaustive enumeration; exit 2 on mismatch."""
    with _reporting_errors():
        # verify stops at the largest feasible tuple size on its own
        report = run_verification(n, k if k is not None else n, CensusOptions(workers=threads))
        if fmt is OutputFormat.JSON:
            typer.echo(_json(verification_to_dict(report)), nl=False)
        else:
            typer.echo(render_verification(report), nl=False)
    if not report.matched:
        logger.error("verification failed for n=%d: %s", n, report.first_mismatch)
        raise typer.Exit(2)


@stability.command()
def perturb(
    n: int = typer.Option(12, "--n", min=1, help="Number of equally likely outcomes"),
    epsilon: str = typer.Option("1/1000", "--epsilon", help="Bound on relative weight changes"),
    seed: int = typer.Option(1, "--seed", help="First perturbation seed"),
    trials: int = typer.Option(1, "--trials", min=1, help="Number of consecutive seeds"),
    published: bool = typer.Option(
        False, "--published", help="Use the fixed seed list instead of --seed/--trials"
    ),
    fmt: OutputFormat = FORMAT_OPTION,
    threads: int = THREADS_OPTION,
) -> None:
    """Count independent pairs left after small random changes to a uniform space."""
    with _reporting_errors():
        seeds = PUBLISHED_SEEDS if published else tuple(range(seed, seed + trials))
        space = uniform_space(n)
        options = CensusOptions(workers=threads)
        results = [(s, perturbed_census(space, epsilon, s, options)) for s in seeds]
        if fmt is OutputFormat.JSON:
            typer.echo(_json(trials_to_dict(n, epsilon, results)), nl=False)
        else:
            typer.echo(render_trials(n, epsilon, results), nl=False)


def _parse_factors(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"factor sizes must be integers, got {text!r}") from exc


@stability.command()
def persistent(
    factors: str = typer.Option(..., "--factors", help="Comma-separated factor sizes, e.g. 2,6"),
    list_cap: int = LIST_OPTION,
    seed: int = typer.Option(0, "--seed", help="Seed for the sampled cross-check points"),
    fmt: OutputFormat = FORMAT_OPTION,
    threads: int = THREADS_OPTION,
    timing: bool = TIMING_OPTION,
) -> None:
    """Count pairs that stay independent for every bias of the product's coordinates."""
    with _reporting_errors():
        options = CensusOptions(list_cap=list_cap, workers=threads)
        report = persistent_pairs(_parse_factors(factors), options, seed)
        _emit(report, fmt, timing)


# typer may bundle its own click; reach its base error through the re-exported BadParameter
USAGE_ERRORS: tuple[type[Exception], ...] = tuple(
    cls for cls in typer.BadParameter.__mro__ if cls.__name__ == "ClickException"
)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    command = typer.main.get_command(app)
    try:
        result = command.main(
            args=list(argv) if argv is not None else None,
            prog_name="indep",
            standalone_mode=False,
        )
    except USAGE_ERRORS as exc:
        exc.show()  # type: ignore[attr-defined]
        return 1
    except typer.Abort:
        typer.echo("Aborted!", err=True)
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run())
