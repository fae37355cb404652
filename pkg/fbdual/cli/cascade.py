from pathlib import Path

import rich_click as click
from rich.table import Table

from fbdual.cascade import (
    cascade_run,
    export_plot_csv,
    partition_of_unity_error,
)
from fbdual.cli.console import console, err_console, success
from fbdual.cli.helpers import Family, Side, family_filter, load_filter
from fbdual.errors import InvalidArgumentError


@click.command(
    "cascade",
    help="Render the scaling function of a lowpass filter by cascade "
    "iteration and export it as 't,value' CSV",
)
@click.option(
    "--filter",
    "filter_path",
    help="Filter JSON file, or a bank JSON file (see --side)",
    type=click.Path(exists=False, dir_okay=False),
)
@click.option(
    "--side",
    help="Which lowpass to use when --filter is a bank",
    type=click.Choice([side.value for side in Side]),
    default=Side.SYNTHESIS.value,
    show_default=True,
)
@click.option(
    "--family",
    help="Use a member of a built-in filter family",
    type=click.Choice(Family.choices()),
)
@click.option("--a", help="Family parameter as an exact fraction")
@click.option(
    "--iters",
    help="Number of cascade iterations J (grid step M^-J)",
    type=int,
    required=True,
)
@click.option(
    "--out",
    help="Where to write the CSV",
    type=click.Path(dir_okay=False),
    required=True,
)
@click.option(
    "--png",
    help="Also render the scaling function to a PNG file",
    type=click.Path(dir_okay=False),
)
def cmd_cascade(
    filter_path: str | None,
    side: str,
    family: str | None,
    a: str | None,
    iters: int,
    out: str,
    png: str | None,
) -> None:
    if iters < 1:
        msg = f"--iters must be at least 1, got {iters}"
        raise InvalidArgumentError(msg)
    if (filter_path is None) == (family is None):
        msg = "pass exactly one of '--filter' and '--family'"
        raise InvalidArgumentError(msg)

    if family is not None:
        c = family_filter(Family(family), a)
        name = family
    else:
        c = load_filter(Path(filter_path), Side(side))
        name = Path(filter_path).stem

    status = f"[bold green]Iterating {name} {iters} times..."
    with err_console.status(status):
        result = cascade_run(c, iters, name)
    export_plot_csv(result, Path(out))

    if png is not None:
        from fbdual.plotting import render_scaling_functions

        render_scaling_functions({name: result}, Path(png))

    table = Table(
        title=f"Cascade of {name}",
        show_header=True,
        header_style="bold magenta",
        box=None,
    )
    table.add_column("Iteration", justify="right")
    table.add_column("Delta", justify="right")
    table.add_column("Mass", justify="right")
    for j, (delta, mass) in enumerate(
        zip(result.deltas, result.masses[1:], strict=True), start=1
    ):
        table.add_row(str(j), f"{delta:.3e}", f"{mass:.12f}")
    console.print(table)

    success(
        f"{len(result.values)} samples written to '{out}', partition of "
        f"unity error {partition_of_unity_error(result):.2e}",
    )
