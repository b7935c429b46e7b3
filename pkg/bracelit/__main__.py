"""Allow bracelit to be run with python -m bracelit."""

from bracelit.cli import cli

if __name__ == "__main__":
    cli()
