#!/usr/bin/env python3
"""Full and distance-resolved degree histograms of subtracted runs."""
import sys

from figkit.distance_grid import main

if __name__ == "__main__":
    sys.exit(main())
