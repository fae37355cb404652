import logging
from dataclasses import dataclass

import rich_click as click
from rich.logging import RichHandler
from rich_click import Context as CLIContext
from rich_click import RichGroup

from fbdual.cli.console import err_console, fatal
from fbdual.errors import FbDualError, InvalidArgumentError


@dataclass
class Context:
    debug_mode: bool


class FbDualGroup(RichGroup):
    """Maps library errors (and bad usage) onto the exit code table"""

    def invoke(self, ctx: CLIContext):
        try:
            return super().invoke(ctx)
        except FbDualError as err:
            logging.debug(f"command failed with exit code {err.exit_code}")
            fatal(err)
        except click.UsageError as err:
            fatal(InvalidArgumentError(err.format_message()))


@click.group(cls=FbDualGroup)
@click.option(
    "--debug",
    help="Enable debug logging.",
    is_flag=True,
)
@click.pass_context
def root(ctx: CLIContext, debug: bool):
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=debug)],
        force=True,
    )
    ctx.obj = Context(debug)
