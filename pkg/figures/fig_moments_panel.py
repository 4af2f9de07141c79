#!/usr/bin/env python3
"""Mean/variance/skewness/kurtosis panel with bootstrap error bars."""
import sys

from figkit.moments_panel import main

if __name__ == "__main__":
    sys.exit(main())
