import logging
from pathlib import Path

import rich_click as click

from fbdual.cli.console import success
from fbdual.cli.helpers import load_bank
from fbdual.completion import fb_analyze, fb_synthesize
from fbdual.errors import VerificationFailedError
from fbdual.utils import read_signal_csv, write_signal_csv


@click.command(
    "roundtrip",
    help="Run a signal through the analysis and synthesis side of a bank "
    "and check for exact reconstruction",
)
@click.option(
    "--bank",
    "bank_path",
    help="Filter bank JSON file",
    type=click.Path(exists=False, dir_okay=False),
    required=True,
)
@click.option(
    "--signal",
    "signal_path",
    help="Signal CSV with 'index,value' rows of exact values",
    type=click.Path(exists=False, dir_okay=False),
    required=True,
)
@click.option(
    "--subbands-out",
    help="Directory to write the subband signals to",
    type=click.Path(file_okay=False),
)
@click.option(
    "--float",
    "as_float",
    help="Write subband values as floats instead of exact values",
    is_flag=True,
)
def cmd_roundtrip(
    bank_path: str,
    signal_path: str,
    subbands_out: str | None,
    as_float: bool,
) -> None:
    bank = load_bank(Path(bank_path))
    signal = read_signal_csv(Path(signal_path))

    subbands = fb_analyze(bank, signal)
    if subbands_out is not None:
        for channel, band in enumerate(subbands):
            path = Path(subbands_out) / f"subband_{channel}.csv"
            write_signal_csv(path, band, as_float=as_float)
            logging.debug(f"wrote subband {channel} to {path}")

    restored = fb_synthesize(bank, subbands)
    expected = {n: v for n, v in signal.items() if v != 0}
    if restored != expected:
        msg = f"signal '{signal_path}' is not reconstructed exactly"
        raise VerificationFailedError(msg)

    success(
        f"{len(signal)} samples reconstructed exactly through "
        f"{bank.q} channels",
    )
