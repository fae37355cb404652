from fbdual.cli.cascade import cmd_cascade
from fbdual.cli.design import cmd_design
from fbdual.cli.inspect import cmd_inspect
from fbdual.cli.root import root
from fbdual.cli.roundtrip import cmd_roundtrip
from fbdual.cli.sweep import cmd_sweep
from fbdual.cli.verify import cmd_verify
from fbdual.cli.version import cmd_version

run_cli = root

root.add_command(cmd_version)
root.add_command(cmd_design)
root.add_command(cmd_verify)
root.add_command(cmd_cascade)
root.add_command(cmd_sweep)
root.add_command(cmd_inspect)
root.add_command(cmd_roundtrip)
