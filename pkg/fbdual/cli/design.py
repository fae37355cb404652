import logging
from pathlib import Path

import rich_click as click

from fbdual.bezout import resolve_cofilter, validate_cofilter
from fbdual.cli.console import err_console, success
from fbdual.cli.helpers import (
    SAME_AS_H,
    Family,
    describe_family,
    family_cofilter,
    load_filter,
    require_same_dilation,
    resolve_filter,
)
from fbdual.cli.root import Context, root
from fbdual.committee import committee_dual
from fbdual.completion import (
    CompletionMethod,
    complete_fb,
    complete_q2,
    verify_wavelet_fb,
)
from fbdual.filterkit import accuracy, has_unit_phase
from fbdual.utils import dump_json


@root.command(
    "design",
    help="Construct the dual lowpass of h and complete it into a wavelet "
    "filter bank",
)
@click.option(
    "--h",
    "h_path",
    help="Filter JSON file holding the input lowpass filter h",
    type=click.Path(exists=False, dir_okay=False),
)
@click.option(
    "--family",
    help="Use a member of a built-in filter family as h",
    type=click.Choice(Family.choices()),
)
@click.option("--a", help="Family parameter as an exact fraction, e.g. 3/5")
@click.option(
    "--f",
    "f_path",
    help="Filter JSON file holding a cofilter biorthogonal to h, by "
    "default the family cofilter or a Bezout solution is used",
    type=click.Path(exists=False, dir_okay=False),
)
@click.option(
    "--g",
    "g_spec",
    help="Filter JSON file holding the accuracy supplier g",
    default=SAME_AS_H,
    show_default=True,
)
@click.option(
    "--completion",
    help="Completion used for the written bank",
    type=click.Choice([method.value for method in CompletionMethod]),
    default=CompletionMethod.THEOREM.value,
    show_default=True,
)
@click.option(
    "--out",
    help="Where to write the filter bank JSON",
    type=click.Path(dir_okay=False),
    default="filterbank.json",
    show_default=True,
)
@click.option(
    "--dual-out",
    help="Also write the dual filter d as filter JSON",
    type=click.Path(dir_okay=False),
)
@click.pass_obj
def cmd_design(
    ctx: Context,
    h_path: str | None,
    family: str | None,
    a: str | None,
    f_path: str | None,
    g_spec: str,
    completion: str,
    out: str,
    dual_out: str | None,
) -> None:
    h = resolve_filter(h_path, family, a)

    if f_path is not None:
        f = load_filter(Path(f_path))
    elif family is not None:
        f = family_cofilter(Family(family), a)
    else:
        with err_console.status("[bold green]Solving the Bezout identity..."):
            f = resolve_cofilter(h)
    logging.debug(f"cofilter f = {f}")

    g = h if g_spec == SAME_AS_H else load_filter(Path(g_spec))
    require_same_dilation(h=h, f=f, g=g)

    result = committee_dual(h, f, g)

    match CompletionMethod(completion):
        case CompletionMethod.THEOREM:
            bank = complete_fb(h, f, g)
        case CompletionMethod.DETERMINANT:
            bank = complete_q2(h, result.d)

    report = verify_wavelet_fb(bank)
    if ctx.debug_mode:
        for label, matrix in (("A_CLP", bank.a_clp), ("S_CLP", bank.s_clp)):
            err_console.print(
                f"{label}:\n{matrix}", markup=False, highlight=False
            )
    bank.write(Path(out))
    if dual_out is not None:
        result.d.write(Path(dual_out))

    diagnostics = {
        "h": {
            "taps": h.tap_count(),
            "accuracy": accuracy(h),
            "unit_phase": has_unit_phase(h),
        },
        "f": validate_cofilter(f, h).to_json(),
        "d": {
            **result.diagnostics(),
            "filter": result.d.to_json(),
        },
        "bank": {
            "method": bank.method.value,
            "pr": report.pr,
            "wavelet_fb": report.wavelet_fb,
            "alpha": report.alpha,
            "beta": report.beta,
            "analysis_moments": [
                r.vanishing_moments for r in report.analysis[1:]
            ],
            "synthesis_moments": [
                r.vanishing_moments for r in report.synthesis[1:]
            ],
        },
    }
    click.echo(dump_json(diagnostics), nl=False)

    source = describe_family(Family(family), a) if family else h_path
    success(
        f"Dual of {source} has {result.taps} taps, "
        f"bank written to '{out}'",
    )
