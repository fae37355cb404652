from pathlib import Path
from typing import Any

import rich_click as click
from rich.table import Table

from fbdual.algebra import format_rational
from fbdual.cli.console import console
from fbdual.cli.helpers import Family, Side, load_filter, resolve_filter
from fbdual.errors import ZeroFilterError
from fbdual.filterkit import (
    Filter,
    accuracy,
    has_unit_phase,
    polyphase_analysis,
    polyphase_synthesis,
    vanishing_moments,
)
from fbdual.utils import dump_json


def filter_properties(filt: Filter) -> dict[str, Any]:
    try:
        acc, moments = accuracy(filt), vanishing_moments(filt)
        support = list(filt.support())
    except ZeroFilterError:
        acc, moments, support = 0, 0, None
    return {
        "dilation": filt.dilation,
        "role": filt.role.value,
        "normalization": filt.normalization.value,
        "taps": filt.tap_count(),
        "support": support,
        "tap_sum": format_rational(filt.tap_sum()),
        "accuracy": acc,
        "vanishing_moments": moments,
        "unit_phase": has_unit_phase(filt),
    }


@click.command("inspect", help="Show the spectral properties of a filter")
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
    "--json",
    "as_json",
    help="Print the properties as JSON",
    is_flag=True,
)
def cmd_inspect(
    filter_path: str | None,
    side: str,
    family: str | None,
    a: str | None,
    as_json: bool,
) -> None:
    if filter_path is not None and family is None:
        filt = load_filter(Path(filter_path), Side(side))
    else:
        filt = resolve_filter(filter_path, family, a, option="--filter")

    properties = filter_properties(filt)
    if as_json:
        click.echo(dump_json(properties), nl=False)
        return

    table = Table(show_header=False, box=None)
    table.add_column("Property", style="bold")
    table.add_column("Value", overflow="fold")
    for key, value in properties.items():
        table.add_row(key, "-" if value is None else str(value))

    taps = ", ".join(f"{k}: {format_rational(c)}" for k, c in filt.taps.items())
    table.add_row("coefficients", taps)
    for label, phases in (
        ("analysis phases", polyphase_analysis(filt)),
        ("synthesis phases", polyphase_synthesis(filt)),
    ):
        table.add_row(label, " | ".join(str(p) for p in phases))
    console.print(table, highlight=False)
