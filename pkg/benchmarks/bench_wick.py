"""Benchmark: compiled vs pure-Python Wick engine.

Times the matching-sum dynamic program on the word classes that dominate an
experiment: subtraction normalisations (a^dag_S)^n (a_S)^n and conditional
pair moments (a^dag_S)^n n_i n_j (a_S)^n, on a 100-node complete-graph
cluster state at 15 dB.  Also reports a whole-network build.

Run:  python benchmarks/bench_wick.py
"""

import time

import numpy as np

from clusternet import (
    ModelSpec,
    SubtractionSpec,
    cluster_covariance,
    generate,
    pair_contractions,
    squeezing_from_db,
    subtracted_photon_moments,
)
from clusternet import _wick_py
from clusternet.wick import _word_plan, annihilate, create, number_word

try:
    from clusternet import _wick_core
except ImportError:
    _wick_core = None


def time_engine(fn, ids, ctr, repeat: int) -> float:
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        for _ in range(repeat):
            fn(ids, ctr)
        best = min(best, (time.perf_counter() - start) / repeat)
    return best


def main() -> None:
    net = generate(ModelSpec("complete", 100))
    sq = squeezing_from_db(15.0)
    table = pair_contractions(cluster_covariance(net, sq))

    cases = []
    for photons in (4, 10):
        prefix = [create(0)] * photons
        suffix = [annihilate(0)] * photons
        cases.append((f"normalisation word, n={photons} (len {2 * photons})",
                      prefix + suffix, 50))
        cases.append((f"pair moment word, n={photons} (len {2 * photons + 4})",
                      prefix + list(number_word(1) + number_word(2)) + suffix, 20))

    print(f"{'word':<44} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for label, word, repeat in cases:
        ids, ctr = _word_plan(word, table)
        t_py = time_engine(_wick_py.dp_expectation, ids, ctr, repeat)
        row = f"{label:<44} {t_py * 1e3:>10.3f}ms"
        if _wick_core is not None:
            t_c = time_engine(_wick_core.dp_expectation, ids, ctr, repeat)
            value_py = _wick_py.dp_expectation(ids, ctr)
            value_c = _wick_core.dp_expectation(ids, ctr)
            rel = abs(value_py - value_c) / max(1.0, abs(value_py))
            assert rel < 1e-12, f"backend mismatch: {rel}"
            row += f" {t_c * 1e3:>10.3f}ms {t_py / t_c:>8.1f}x"
        else:
            row += f" {'(not built)':>12} {'-':>9}"
        print(row)

    start = time.perf_counter()
    subtracted_photon_moments(net, sq, SubtractionSpec(0, 10))
    elapsed = time.perf_counter() - start
    backend = "compiled" if _wick_core is not None else "python"
    print(f"\nfull subtracted moment set, complete graph N=100, n=10 "
          f"({backend} engine): {elapsed:.2f}s")


if __name__ == "__main__":
    main()
