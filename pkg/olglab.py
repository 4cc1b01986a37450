#!/usr/bin/env python3
"""olgsaving - credit-constrained OLG saving model lab.

This is a standalone script for development/testing.
After installation, use: python -m olgsaving
"""

import sys
from pathlib import Path

# Add src to path for development
sys.path.insert(0, str(Path(__file__).parent / "src"))

from olgsaving.cli import main

if __name__ == "__main__":
    sys.exit(main())
