"""Pure-Python engine for ordered pair-contraction sums.

Reference implementation of the dynamic program used by
:mod:`clusternet.wick`; the compiled twin in ``_wick_core`` is selected at
import time when available.  States are dictionaries keyed by the multiset
of still-open token classes, so memory adapts to whatever is reachable.
"""

from __future__ import annotations

import numpy as np


def dp_expectation(classes, ctr) -> complex:
    """Sum over all order-respecting perfect matchings of the word.

    ``classes[pos]`` is the class id of the token at ``pos`` (tokens of equal
    class are interchangeable); ``ctr[c1, c2]`` is the ordered contraction of
    an earlier class-``c1`` token with a later class-``c2`` token.

    Scanning left to right, each token either closes one of the currently
    open tokens (any of the ``open[c]`` tokens of class ``c``, hence the
    multiplicity factor) or stays open for a later partner.  The amplitude
    that survives with no open tokens is the full matching sum.
    """
    classes = [int(c) for c in classes]
    ctr = np.asarray(ctr)
    n_classes = ctr.shape[0]
    length = len(classes)
    if length == 0:
        return 1.0 + 0.0j
    if length % 2 == 1:
        return 0.0 + 0.0j

    zero_state = (0,) * n_classes
    states: dict[tuple[int, ...], complex] = {zero_state: 1.0 + 0.0j}
    for pos, tok in enumerate(classes):
        remaining = length - pos - 1
        nxt: dict[tuple[int, ...], complex] = {}
        for state, amp in states.items():
            total_open = 0
            for c in range(n_classes):
                n_open = state[c]
                total_open += n_open
                if n_open:
                    closed = state[:c] + (n_open - 1,) + state[c + 1:]
                    nxt[closed] = nxt.get(closed, 0.0j) + amp * n_open * ctr[c, tok]
            if total_open + 1 <= remaining:  # opening must still be closable
                opened = state[:tok] + (state[tok] + 1,) + state[tok + 1:]
                nxt[opened] = nxt.get(opened, 0.0j) + amp
        states = nxt
    return states.get(zero_state, 0.0 + 0.0j)
