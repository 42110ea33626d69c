# A short tour of matching with matchers.
#
# Run with:  python demos/01_tour.py

from nonfree import Interpreter

it = Interpreter()


def show(src):
    print(src)
    print("  =>", it.eval_show(src))
    print()


# ## One target, many decompositions
#
# `match-all` collects the body for every way the pattern fits the target.
# The matcher says how a target may be taken apart.  Splitting a list in two:

show("(match-all {1 2 3} (list integer) [<join $xs $ys> [xs ys]])")

# ## The same pattern under different matchers
#
# `cons` on a list has one answer.  On a multiset any element can come first,
# and on a set the rest is still the whole collection.

for m in ("list", "multiset", "set"):
    show(f"(match-all {{1 2 3}} ({m} integer) [<cons $x $rs> [x rs]])")

# ## Non-linear patterns
#
# A value pattern `,e` only matches things equal to `e`, and it may mention
# variables bound further left.  Pairs of equal elements in a multiset:

show("(match-all {2 8 2} (multiset integer) [<cons $m <cons ,m _>> m])")

# Equality itself depends on the matcher.

show('(match-all {1 2 3} (list integer) [,{2 1 3} "Matched"])')
show('(match-all {1 2 3} (multiset integer) [,{2 1 3} "Matched"])')

# Since matchers are values they can be passed around.  `member?/m` takes
# the matcher for the elements:

show("(member?/m (multiset integer) {2 1} {{3} {1 2}})")
show("(member?/m (list integer) {2 1} {{3} {1 2}})")

# ## Infinite targets
#
# Collections are lazy, so a pattern can range over all primes.  `take`
# decides how much of the answer gets computed.

show("(take 6 twin-primes)")
