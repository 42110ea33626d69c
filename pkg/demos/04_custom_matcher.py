# Writing a matcher.
#
# A matcher is a list of clauses.  Each clause pairs a primitive-pattern
# pattern (how the pattern looks) with the matchers for its holes and with
# primitive-data clauses (how the target is taken apart).  The body of a
# data clause returns every way to fill the holes.

from nonfree import Interpreter

it = Interpreter()

# ## Unordered pairs
#
# `<Pair 2 5>` and `<Pair 5 2>` are the same unordered pair, so `pair`
# offers both orders.  This one comes with the prelude:

print(it.eval_show("(match-all <Pair 2 5> (unordered-pair integer) [<pair ,5 $x> x])"))

# ## Integers modulo m
#
# A matcher can carry its own notion of equality.  Here value patterns
# compare remainders, and `<rem $r>` exposes the remainder itself.

it.run("""
(define $mod-integer
  (lambda [$m]
    (matcher
      {[,$n [] {[$tgt (if (eq? (mod tgt m) (mod n m)) {[]} {})]}]
       [<rem $> [integer] {[$tgt {(mod tgt m)}]}]
       [$ [something] {[$tgt {tgt}]}]})))
""")

print(it.eval_show("(match-all 17 (mod-integer 5) [,2 #t])"))
print(it.eval_show("(match-all 17 (mod-integer 5) [<rem $r> r])"))

# It composes with the collection matchers.  Pairs of elements congruent
# mod 3:

print(it.eval_show(
    "(match-all {1 5 4 9 7} (multiset (mod-integer 3)) [<cons $a <cons ,a _>> a])"))
