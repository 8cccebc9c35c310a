# bispectral/cli/__main__.py
import sys

from bispectral.cli.main import main

sys.exit(main())
