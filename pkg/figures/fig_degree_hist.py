#!/usr/bin/env python3
"""Overlaid before/after histograms of the emergent weighted degree."""
import sys

from figkit.hist_figures import degree_main

if __name__ == "__main__":
    sys.exit(degree_main())
