from pathlib import Path

import rich_click as click

from fbdual.cli.console import success
from fbdual.cli.helpers import load_bank
from fbdual.completion import verify_wavelet_fb
from fbdual.errors import VerificationFailedError
from fbdual.utils import dump_json


@click.command(
    "verify",
    help="Check perfect reconstruction and the wavelet filter bank "
    "properties of a bank file",
)
@click.argument(
    "bank_path",
    type=click.Path(exists=False, dir_okay=False),
)
def cmd_verify(bank_path: str) -> None:
    bank = load_bank(Path(bank_path))
    report = verify_wavelet_fb(bank)
    click.echo(dump_json(report.to_json()), nl=False)

    if not report.ok:
        failed = [
            name
            for name, passed in (
                ("perfect reconstruction", report.pr),
                ("stored matrices match the filters", report.consistent),
                ("one lowpass per side", report.wavelet_fb),
                ("analysis wavelet moments", report.analysis_moments_ok),
                ("synthesis wavelet moments", report.synthesis_moments_ok),
            )
            if not passed
        ]
        raise VerificationFailedError(", ".join(failed))

    success(f"Bank '{bank_path}' is a perfect reconstruction wavelet bank")
