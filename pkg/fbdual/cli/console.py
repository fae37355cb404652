import shutil
import sys
from typing import NoReturn

from rich.console import Console
from rich.markup import escape

from fbdual.errors import FbDualError

console = Console(
    width=shutil.get_terminal_size().columns,
)

# status lines stay off stdout, which carries the JSON reports
err_console = Console(
    stderr=True,
    width=shutil.get_terminal_size().columns,
)


def fatal(err: FbDualError) -> NoReturn:
    err_console.print(":cross_mark:  ERROR:", escape(str(err)))
    sys.exit(err.exit_code)


def success(*args, **kwargs) -> None:
    err_console.print(":white_check_mark: ", *args, **kwargs)
