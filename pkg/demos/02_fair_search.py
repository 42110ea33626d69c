# How the search stays fair on infinite targets.
#
# Pattern matching runs as a breadth-first walk over a binary tree of
# matching states.  Each round steps every live node once, so no branch can
# starve the others even when one of them is infinite.

from nonfree import Interpreter

it = Interpreter()

# ## Pairs of naturals
#
# Matching two elements out of the set of all naturals never runs out of
# candidates in either position.  Depth-first search would stay on m = 1
# forever.  Here the results come out diagonal by diagonal:

query = "(match-all nats (set integer) [<cons $m <cons $n _>> [m n]])"
print(it.eval_show(f"(take 15 {query})"))
print()

# The pair [i j] turns up at index (i+j-2)(i+j-1)/2 + i, counting from 1.
pairs = [tuple(d.force() for d in p.force().items) for p in it.eval(f"(take 28 {query})")]
for index, (i, j) in enumerate(pairs, 1):
    assert index == (i + j - 2) * (i + j - 1) // 2 + i
print("diagonal order holds for the first", len(pairs), "results")
print()

# ## Watching the machine
#
# `trace` prints the states alive in each round.  Each `MState` line lists
# its pending atoms as [pattern matcher target] followed by the bindings made
# so far.  Failed branches simply stop appearing.

print(it.trace("(match-all {2 8 2} (multiset integer) [<cons $m <cons ,m _>> m])", 8))
