# bispectral/cli/__init__.py
from bispectral.cli.main import build_parser, main, run

__all__ = ["build_parser", "main", "run"]
