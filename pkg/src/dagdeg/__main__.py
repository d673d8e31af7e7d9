"""Entry point for python -m dagdeg"""

import sys

from dagdeg.cli import main

if __name__ == "__main__":
    sys.exit(main())
