"""Allow running olgsaving as a module: python -m olgsaving"""

import sys

from olgsaving.cli import main

if __name__ == "__main__":
    sys.exit(main())
