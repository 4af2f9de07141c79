#!/usr/bin/env python3
"""Overlaid before/after histograms of the emergent weighted clustering."""
import sys

from figkit.hist_figures import clustering_main

if __name__ == "__main__":
    sys.exit(clustering_main())
