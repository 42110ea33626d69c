"""Standard library, written in the language itself.

Sections can be loaded individually; names are resolved when first used,
so the load order of sections does not matter.
"""

from .errors import LangError
from .evaluator import define_global
from .reader import Define, read_program

INTEGER = """
(define $integer
  (matcher {[,$n [] {[$tgt (if (eq? tgt n) {[]} {})]}]
            [<lt ,$n> [] {[$tgt (if (lt? tgt n) {[]} {})]}]
            [$ [something] {[$tgt {tgt}]}]}))

(define $bool
  (matcher {[,$b [] {[$tgt (if (eq? tgt b) {[]} {})]}]
            [$ [something] {[$tgt {tgt}]}]}))
"""

LIST = """
(define $list
  (lambda [$a]
    (matcher
      {[<nil> [] {[{} {[]}] [_ {}]}]
       [<cons $ $> [a (list a)] {[{$x @$xs} {[x xs]}] [_ {}]}]
       [<join $ $> [(list a) (list a)] {[$tgt (splits tgt)]}]
       [,$val []
        {[$tgt (match [val tgt] [(list a) (list a)]
                 {[[<nil> <nil>] {[]}]
                  [[<cons $x $xs> <cons ,x ,xs>] {[]}]
                  [[_ _] {}]})]}]
       [$ [something] {[$tgt {tgt}]}]})))
"""

MULTISET = """
(define $multiset
  (lambda [$a]
    (matcher
      {[<nil> [] {[{} {[]}] [_ {}]}]
       [<cons $ $> [a (multiset a)]
        {[$tgt (match-all tgt (list a)
                 [<join $hs <cons $x $ts>>
                  [x (append hs ts)]])]}]
       [,$val []
        {[$tgt (match [val tgt] [(list a) (multiset a)]
                 {[[<nil> <nil>] {[]}]
                  [[<cons $x $xs> <cons ,x ,xs>] {[]}]
                  [[_ _] {}]})]}]
       [$ [something] {[$tgt {tgt}]}]})))
"""

SET = """
; cons picks any element and leaves the whole collection as the rest
(define $set
  (lambda [$a]
    (matcher
      {[<nil> [] {[{} {[]}] [_ {}]}]
       [<cons $ $> [a (set a)]
        {[$tgt (match-all tgt (list a)
                 [<join _ <cons $x _>> [x tgt]])]}]
       [$ [something] {[$tgt {tgt}]}]})))
"""

UNORDERED_PAIR = """
(define $unordered-pair
  (lambda [$a]
    (matcher {[<pair $ $> [a a] {[<Pair $x $y> {[x y] [y x]}]}]
              [$ [something] {[$tgt {tgt}]}]})))
"""

STREAMS = """
(define $nats-from
  (lambda [$n] (append {n} (nats-from (+ n 1)))))

(define $nats (nats-from 1))

(define $filter
  (lambda [$pred $xs]
    (if (empty? xs)
        {}
        (if (pred (car xs))
            (append {(car xs)} (filter pred (cdr xs)))
            (filter pred (cdr xs))))))

(define $no-divisor?
  (lambda [$n $d]
    (if (lt? n (* d d))
        #t
        (if (eq? (mod n d) 0) #f (no-divisor? n (+ d 1))))))

(define $prime?
  (lambda [$n] (and (lt? 1 n) (no-divisor? n 2))))

(define $primes (filter prime? (nats-from 2)))

(define $twin-primes
  (match-all primes (list integer)
    [<join _ <cons $p <cons ,(+ p 2) _>>> [p (+ p 2)]]))
"""

UTILITIES = """
(define $member?/m
  (lambda [$m $x $xs]
    (match xs (list m) {[<join _ <cons ,x _>> #t] [_ #f]})))
"""

SECTIONS = {
    "integer": INTEGER,
    "list": LIST,
    "multiset": MULTISET,
    "set": SET,
    "unordered-pair": UNORDERED_PAIR,
    "streams": STREAMS,
    "utilities": UTILITIES,
}


class PreludeError(LangError):
    pass


def load_prelude(env, sections=None):
    """Define the prelude (or the named sections of it) in ``env``."""
    names = list(SECTIONS) if sections is None else list(sections)
    defined = []
    for name in names:
        if name not in SECTIONS:
            raise PreludeError(f"unknown prelude section '{name}'")
        try:
            forms = read_program(SECTIONS[name])
        except LangError as e:
            raise PreludeError(f"prelude section '{name}': {e}") from e
        for form in forms:
            if not isinstance(form, Define):
                raise PreludeError(f"prelude section '{name}': only definitions are allowed")
            define_global(env, form.name, form.expr)
            defined.append((name, form.name))
    # definitions are lazy; force them now so a broken prelude fails at startup
    for section, var in defined:
        try:
            env.get(var).force()
        except LangError as e:
            raise PreludeError(f"prelude section '{section}': {e}") from e
    return env
