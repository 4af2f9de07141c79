"""Figure toolkit for clusternet run directories.

Reads only the documented run-directory files (``manifest.json``,
``samples.csv``, ``moments.json``) — no in-process coupling to the
simulation package.
"""

__version__ = "0.1.0"
