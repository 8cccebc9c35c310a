# bispectral/fixtures/__init__.py
from bispectral.fixtures.examples import EXAMPLES, FILENAMES, example_text, load_example

__all__ = ["EXAMPLES", "FILENAMES", "example_text", "load_example"]
