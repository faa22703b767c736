"""Allow running the CLI as ``python -m hyperkron``."""

import sys

from .cli import main

sys.exit(main())
