import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import rich_click as click
from rich.table import Table

from fbdual.algebra import format_rational, parse_rational
from fbdual.cli.console import console, err_console
from fbdual.cli.helpers import Family
from fbdual.committee import committee_dual
from fbdual.errors import (
    FbDualError,
    InvalidArgumentError,
    SingularParameterError,
)
from fbdual.filterkit import accuracy, burt_adelson, burt_adelson_cofilter
from fbdual.utils import dump_json


@dataclass(frozen=True)
class SweepRow:
    a: Fraction
    singular: bool = False
    success: bool = False
    accuracy_f: int | None = None
    bound: int | None = None
    taps_d: int | None = None
    accuracy_d: int | None = None
    error: str | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "a": format_rational(self.a),
            "singular": self.singular,
            "success": self.success,
            "accuracy_f": self.accuracy_f,
            "bound": self.bound,
            "taps_d": self.taps_d,
            "accuracy_d": self.accuracy_d,
            "error": self.error,
        }


def sweep_grid(a_from: Fraction, a_to: Fraction, steps: int) -> list[Fraction]:
    if steps < 1:
        msg = f"--steps must be at least 1, got {steps}"
        raise InvalidArgumentError(msg)
    if a_from > a_to:
        msg = f"empty parameter range [{a_from}, {a_to}]"
        raise InvalidArgumentError(msg)
    if steps == 1:
        return [a_from]
    width = (a_to - a_from) / (steps - 1)
    return sorted({a_from + i * width for i in range(steps)})


def sweep_point(a: Fraction) -> SweepRow:
    h = burt_adelson(a)
    try:
        f = burt_adelson_cofilter(a)
        result = committee_dual(h, f, h)
    except SingularParameterError as err:
        return SweepRow(a, singular=True, error=err.raw_message)
    except FbDualError as err:
        logging.debug(f"sweep point a={a} failed: {err.raw_message}")
        return SweepRow(a, error=err.raw_message)

    return SweepRow(
        a,
        success=result.biorthogonal and result.accuracy >= 1,
        accuracy_f=accuracy(f),
        bound=result.bound,
        taps_d=result.taps,
        accuracy_d=result.accuracy,
    )


@click.command(
    "sweep",
    help="Run the committee construction over a grid of family parameters",
)
@click.option(
    "--family",
    help="Parametrized filter family",
    type=click.Choice([Family.BURT_ADELSON.value]),
    default=Family.BURT_ADELSON.value,
    show_default=True,
)
@click.option(
    "--a-from",
    help="First parameter value (fraction)",
    required=True,
)
@click.option(
    "--a-to",
    help="Last parameter value (fraction)",
    required=True,
)
@click.option(
    "--steps",
    help="Number of evenly spaced grid points",
    type=int,
    required=True,
)
@click.option(
    "--json",
    "as_json",
    help="Print the rows as JSON instead of a table",
    is_flag=True,
)
def cmd_sweep(
    family: str,
    a_from: str,
    a_to: str,
    steps: int,
    as_json: bool,
) -> None:
    grid = sweep_grid(parse_rational(a_from), parse_rational(a_to), steps)
    logging.debug(f"sweeping {family} over {len(grid)} points")

    rows = []
    with err_console.status("[bold green]Sweeping...") as status:
        for a in grid:
            status.update(f"[bold green]Sweeping a = {a}...")
            rows.append(sweep_point(a))

    if as_json:
        click.echo(dump_json([row.to_json() for row in rows]), nl=False)
        return

    table = Table(
        title=f"Committee duals of {family}",
        show_header=True,
        header_style="bold magenta",
        box=None,
    )
    for column in ("a", "accuracy(f)", "bound", "taps(d)", "accuracy(d)"):
        table.add_column(column, justify="right")
    table.add_column("status")

    def cell(value: int | None) -> str:
        return "-" if value is None else str(value)

    for row in rows:
        if row.singular:
            status_text = "[yellow]singular[/yellow]"
        elif row.success:
            status_text = "[green]ok[/green]"
        else:
            status_text = "[red]failed[/red]"
        table.add_row(
            format_rational(row.a),
            cell(row.accuracy_f),
            cell(row.bound),
            cell(row.taps_d),
            cell(row.accuracy_d),
            status_text,
        )
    console.print(table)
