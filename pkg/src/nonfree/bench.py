"""The sequential-k benchmark: look for k consecutive integers in a multiset
of n zeros.  The search always fails, and with value patterns it should fail
after examining O(n^2) candidates whatever k is."""

import timeit
from dataclasses import dataclass

import numpy as np

from .core import show, stats
from .interpreter import Interpreter


def seq_pattern(k):
    """``<cons $x <cons ,(+ x 1) ... <cons ,(+ x k-1) _>...>>``"""
    if k < 1:
        raise ValueError("k must be positive")
    pat = "_"
    for i in range(k - 1, 0, -1):
        pat = f"<cons ,(+ x {i}) {pat}>"
    return f"<cons $x {pat}>"


def seq_query(k, n):
    return f"(match-all (take {n} (repeat 0)) (multiset integer) [{seq_pattern(k)} x])"


@dataclass
class BenchResult:
    k: int
    n: int
    calls: int
    ms: float
    result: str

    def line(self):
        return f"bench k={self.k} n={self.n} calls={self.calls} ms={self.ms:.1f}"


def run_bench(k, n, reps=1, interp=None):
    """Run the seq-k query ``reps`` times.

    ``calls`` counts matching-function invocations of a single run (it is
    the same for every run); ``ms`` is the best wall time.
    """
    if interp is None:
        interp = Interpreter()
    query = seq_query(k, n)
    box = {}

    def once():
        before = stats.calls
        box["out"] = show(interp.eval(query))
        box["calls"] = stats.calls - before

    # timeit switches the cyclic garbage collector off while timing
    times = timeit.Timer(once).repeat(repeat=max(1, reps), number=1)
    return BenchResult(k, n, box["calls"], min(times) * 1000.0, box["out"])


def fit_exponent(ns, ys):
    """Least-squares slope of log(y) against log(n)."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, dtype=float)),
                          np.log(np.asarray(ys, dtype=float)), 1)
    return float(slope)
