from fbdual.cli import run_cli


def main():
    run_cli()
