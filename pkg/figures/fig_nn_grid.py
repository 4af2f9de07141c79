#!/usr/bin/env python3
"""Nearest-neighbor degree histograms split by sub-network connectivity."""
import sys

from figkit.nn_grid import main

if __name__ == "__main__":
    sys.exit(main())
