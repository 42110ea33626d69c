# Non-linear patterns prune early.
#
# Looking for k consecutive integers among n zeros always fails.  If the
# value patterns were only checked at the end, the search would try about
# n^k candidates.  Because `,(+ x 1)` is tested as soon as the second
# element is picked, every k costs the same: about 8n^2 calls of the
# matching function.

import numpy as np

from nonfree import Interpreter
from nonfree.bench import fit_exponent, run_bench, seq_pattern

it = Interpreter()
ns = [16, 32, 64, 128]

print("pattern for k=3:", seq_pattern(3))
print()
print(f"{'k':>2} {'n':>5} {'calls':>8} {'ms':>9}")
table = {}
for k in (2, 3, 4):
    for n in ns:
        r = run_bench(k, n, reps=1, interp=it)
        table[k, n] = r
        print(f"{k:>2} {n:>5} {r.calls:>8} {r.ms:>9.1f}")
print()

for k in (2, 3, 4):
    calls = [table[k, n].calls for n in ns]
    ms = [table[k, n].ms for n in ns]
    print(f"k={k}: calls ~ n^{fit_exponent(ns, calls):.2f}, time ~ n^{fit_exponent(ns, ms):.2f}")

# The count has a closed form, independent of k.
n = np.array(ns)
assert all(table[4, m].calls == c for m, c in zip(ns, 8 * n**2 + 6 * n + 5))
print("calls == 8n^2 + 6n + 5 for every k")
