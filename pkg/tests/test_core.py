import pytest

from nonfree.core import (
    Deferred, Environment, LazySeq, TupleValue, env_extend, show, stats, structural_equal,
)
from nonfree.errors import EvalError
from nonfree.evaluator import delay
from nonfree.reader import read_expression


def test_force_of_value():
    assert Deferred.of(5).force() == 5


def test_force_memoizes(interp):
    d = delay(interp.env, read_expression("(+ 1 2)"))
    assert d.force() == 3
    before = stats.evals
    assert d.force() == 3
    assert stats.evals == before


def test_take_forces_only_what_it_needs(interp):
    d = delay(interp.env, read_expression("(repeat 0)"))
    env = interp.env.extend([("xs", d)])
    t = delay(env, read_expression("(take 2 xs)")).force()
    assert show(t) == "{0 0}"
    assert d.force().forced_cells() == 2


def test_cells_computed_once():
    calls = []

    def step():
        calls.append(1)
        return (Deferred.of(1), LazySeq(lambda: None))
    s = LazySeq(step)
    assert list(x.force() for x in s) == [1]
    assert list(x.force() for x in s) == [1]
    assert len(calls) == 1


def test_divergent_binding():
    d = Deferred(lambda: d.force())
    with pytest.raises(EvalError, match="divergent binding"):
        d.force()


def seq(*xs):
    return LazySeq.from_values(xs)


@pytest.mark.parametrize("a, b, same", [
    (5, 5, True),
    (seq(1, 2, 3), seq(2, 1, 3), False),
    (TupleValue([Deferred.of(1), Deferred.of(seq(2))]),
     TupleValue([Deferred.of(1), Deferred.of(seq(2))]), True),
    (seq(1, 2), seq(1, 2, 3), False),
    ("a", "a", True),
    (True, 1, False),
])
def test_structural_equal(a, b, same):
    assert structural_equal(a, b) is same


def test_closures_are_incomparable(interp):
    f = interp.eval("(lambda [$x] x)")
    with pytest.raises(EvalError, match="incomparable"):
        structural_equal(f, f)


def test_env_lookup_and_shadowing():
    e = env_extend(Environment(), [("m", Deferred.of(2))])
    assert e.get("m").force() == 2
    e2 = env_extend(env_extend(Environment(), [("x", Deferred.of(1))]), [("x", Deferred.of(2))])
    assert e2.get("x").force() == 2


def test_env_persistence():
    base = env_extend(Environment(), [("x", Deferred.of(1))])
    env_extend(base, [("x", Deferred.of(9)), ("y", Deferred.of(2))])
    assert base.get("x").force() == 1
    assert base.lookup("y") is None


def test_unbound():
    with pytest.raises(EvalError, match="unbound variable 'zz'"):
        Environment().get("zz")


def test_overflow(ev):
    with pytest.raises(EvalError, match="integer overflow"):
        ev("(* 4611686018427387904 2)")


@pytest.mark.parametrize("src, text", [
    ("{}", "{}"),
    ('["a" #t #f]', '["a" #t #f]'),
    ("<Pair 2 {1}>", "<Pair 2 {1}>"),
    ("(lambda [$x] x)", "#<closure>"),
    ("integer", "#<matcher>"),
    ("something", "something"),
    ("car", "#<builtin car>"),
])
def test_show(ev, src, text):
    assert ev(src) == text


def test_show_limit(ev):
    assert ev("nats", 3) == "{1 2 3 …}"
    assert ev("{1 2 3}", 3) == "{1 2 3}"


@pytest.mark.parametrize("k", [0, 1, 7, 25])
def test_infinite_streams_are_productive(ev, k):
    for s in ("nats", "(repeat 0)", "primes"):
        assert ev(f"(take {k} {s})").count(" ") == max(k - 1, 0)
