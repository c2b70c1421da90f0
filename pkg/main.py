#!/usr/bin/env python3
"""
Simple entry point for the flat-band toolkit.
"""

import sys
from flatband import main

if __name__ == "__main__":
    sys.exit(main())
