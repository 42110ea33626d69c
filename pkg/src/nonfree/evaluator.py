"""Call-by-need evaluation of expressions."""

from . import engine
from .core import (
    EMPTY, SOMETHING, Builtin, Closure, Data, Deferred, LazySeq, MatcherValue,
    TupleValue, check_int, is_matcher, show, stats, structural_equal, type_name,
)
from .errors import EvalError
from .reader import (
    App, CollectionExpr, Const, DataExpr, Define, If, Lambda, Match, MatchAll,
    MatcherExpr, Something, TupleExpr, Var,
)


def evaluate(env, expr):
    """Evaluate ``expr`` in ``env`` to weak head normal form."""
    stats.evals += 1
    try:
        ev = _DISPATCH[type(expr)]
    except KeyError:
        raise EvalError(f"cannot evaluate {type(expr).__name__}") from None
    return ev(env, expr)


def delay(env, expr):
    """Suspend ``expr``; constants and bound variables need no new thunk."""
    t = type(expr)
    if t is Const:
        return Deferred.of(expr.value)
    if t is Var:
        d = env.lookup(expr.name)
        if d is not None:
            return d
    return Deferred(lambda: evaluate(env, expr))


def apply(fn, args, pos=None):
    if isinstance(fn, Closure):
        if len(args) != len(fn.params):
            raise EvalError(
                f"arity mismatch: expected {len(fn.params)} arguments, got {len(args)}", pos)
        env = fn.env.extend(zip(fn.params, args)) if args else fn.env
        return evaluate(env, fn.body)
    if isinstance(fn, Builtin):
        if fn.arity is not None and len(args) != fn.arity:
            raise EvalError(
                f"arity mismatch: {fn.name} expects {fn.arity} arguments, got {len(args)}", pos)
        try:
            return fn.fn(*args)
        except EvalError as e:
            if e.pos is None:
                e.pos = pos
            raise
    raise EvalError(f"cannot apply a {type_name(fn)}", pos)


def _var(env, expr):
    d = env.lookup(expr.name)
    if d is None:
        raise EvalError(f"unbound variable '{expr.name}'", expr.pos)
    return d.force()


def _const(env, expr):
    return expr.value


def _lambda(env, expr):
    return Closure(expr.params, expr.body, env)


def _app(env, expr):
    fn = evaluate(env, expr.head)
    args = tuple(delay(env, a) for a in expr.args)
    value = apply(fn, args, expr.pos)
    if type(value) is MatcherValue and value.label is None and type(expr.head) is Var:
        value.label = (expr.head.name, args)
    return value


def _tuple(env, expr):
    return TupleValue(delay(env, e) for e in expr.items)


def _collection(env, expr):
    if not expr.items:
        return EMPTY
    return LazySeq.from_deferreds([delay(env, e) for e in expr.items])


def _data(env, expr):
    return Data(expr.name, (delay(env, e) for e in expr.args))


def _if(env, expr):
    c = evaluate(env, expr.cond)
    if c is True:
        return evaluate(env, expr.then)
    if c is False:
        return evaluate(env, expr.else_)
    raise EvalError(f"if expects a boolean, got {type_name(c)}", expr.pos)


def _something(env, expr):
    return SOMETHING


def eval_matcher(env, clauses):
    return MatcherValue(tuple(clauses), env)


def _matcher(env, expr):
    return eval_matcher(env, expr.clauses)


def _eval_matcher_operand(env, expr, pos):
    m = evaluate(env, expr)
    if not is_matcher(m):
        raise EvalError(f"expected a matcher, got {type_name(m)}", pos)
    return m


def eval_match_all(env, target, matcher, clause, pos=None):
    """Lazy collection of the clause body under every match result."""
    m = _eval_matcher_operand(env, matcher, pos)
    state = engine.initial_state(clause.pattern, m, delay(env, target), env)
    body = clause.body

    def bodies():
        for bindings in engine.enumerate_matches(state):
            yield Deferred(lambda b=bindings: evaluate(b, body))

    return LazySeq.from_iter(bodies())


def eval_match(env, target, matcher, clauses, pos=None):
    """Body of the first clause with a match, under its first result."""
    m = _eval_matcher_operand(env, matcher, pos)
    t = delay(env, target)
    for clause in clauses:
        state = engine.initial_state(clause.pattern, m, t, env)
        for bindings in engine.enumerate_matches(state):
            return evaluate(bindings, clause.body)
    raise EvalError(f"no matching clause for {show(t, limit=10)}", pos)


def _match_all(env, expr):
    return eval_match_all(env, expr.target, expr.matcher, expr.clause, expr.pos)


def _match(env, expr):
    return eval_match(env, expr.target, expr.matcher, expr.clauses, expr.pos)


def _define(env, expr):
    raise EvalError("define is only allowed at top level", expr.pos)


_DISPATCH = {
    Var: _var,
    Const: _const,
    Lambda: _lambda,
    App: _app,
    TupleExpr: _tuple,
    CollectionExpr: _collection,
    DataExpr: _data,
    If: _if,
    Something: _something,
    MatcherExpr: _matcher,
    MatchAll: _match_all,
    Match: _match,
    Define: _define,
}


def define_global(env, name, expr):
    """Bind ``name`` in the global frame; the binding may refer to itself."""
    def thunk():
        value = evaluate(env, expr)
        if type(value) is MatcherValue and value.label is None:
            value.label = name
        return value
    env.define(name, Deferred(thunk))


# ---------------------------------------------------------------------------
# builtins

def _int(d, who):
    v = d.force()
    if type(v) is not int:
        raise EvalError(f"{who} expects an integer, got {type_name(v)}")
    return v


def _bool(d, who):
    v = d.force()
    if type(v) is not bool:
        raise EvalError(f"{who} expects a boolean, got {type_name(v)}")
    return v


def _seq(d, who):
    v = d.force()
    if not isinstance(v, LazySeq):
        raise EvalError(f"{who} expects a collection, got {type_name(v)}")
    return v


def _add(a, b):
    return check_int(_int(a, "+") + _int(b, "+"))


def _sub(a, b):
    return check_int(_int(a, "-") - _int(b, "-"))


def _mul(a, b):
    return check_int(_int(a, "*") * _int(b, "*"))


def _mod(a, b):
    y = _int(b, "mod")
    if y == 0:
        raise EvalError("mod by zero")
    return _int(a, "mod") % y


def _eq(a, b):
    return structural_equal(a.force(), b.force())


def _lt(a, b):
    return _int(a, "lt?") < _int(b, "lt?")


def _car(xs):
    cell = _seq(xs, "car").uncons()
    if cell is None:
        raise EvalError("car of empty collection")
    return cell[0].force()


def _cdr(xs):
    cell = _seq(xs, "cdr").uncons()
    if cell is None:
        raise EvalError("cdr of empty collection")
    return cell[1]


def _empty(xs):
    return _seq(xs, "empty?").uncons() is None


def _take(n, xs):
    return _take_seq(_int(n, "take"), _seq(xs, "take"))


def _append(xs, ys):
    def go(src):
        def step():
            cell = src.uncons()
            if cell is None:
                return _seq(ys, "append")
            return (cell[0], go(cell[1]))
        return LazySeq(step)
    return go(_seq(xs, "append"))


def _take_seq(count, src):
    def step():
        if count <= 0:
            return None
        cell = src.uncons()
        if cell is None:
            return None
        return (cell[0], _take_seq(count - 1, cell[1]))
    return LazySeq(step)


def _splits(xs):
    """Every ``[prefix suffix]`` split of a collection, shortest prefix first."""
    whole = _seq(xs, "splits")

    def go(k, rest):
        def step():
            pair = TupleValue((Deferred(lambda: _take_seq(k, whole)), Deferred.of(rest)))
            cell = rest.uncons()
            tail = EMPTY if cell is None else go(k + 1, cell[1])
            return (Deferred.of(pair), tail)
        return LazySeq(step)
    return go(0, whole)


def _repeat(x):
    def go():
        return LazySeq(lambda: (x, go()))
    return go()


def _map(f, xs):
    fn = f.force()

    def go(src):
        def step():
            cell = src.uncons()
            if cell is None:
                return None
            h = cell[0]
            return (Deferred(lambda: apply(fn, (h,))), go(cell[1]))
        return LazySeq(step)
    return go(_seq(xs, "map"))


def _between(a, b):
    lo, hi = _int(a, "between"), _int(b, "between")
    return LazySeq.from_iter(Deferred.of(i) for i in range(lo, hi + 1))


def _not(a):
    return not _bool(a, "not")


def _and(a, b):
    return _bool(a, "and") and _bool(b, "and")


def _or(a, b):
    return _bool(a, "or") or _bool(b, "or")


BUILTINS = [
    Builtin("+", 2, _add),
    Builtin("-", 2, _sub),
    Builtin("*", 2, _mul),
    Builtin("mod", 2, _mod),
    Builtin("eq?", 2, _eq),
    Builtin("lt?", 2, _lt),
    Builtin("car", 1, _car),
    Builtin("cdr", 1, _cdr),
    Builtin("empty?", 1, _empty),
    Builtin("take", 2, _take),
    Builtin("append", 2, _append),
    Builtin("splits", 1, _splits),
    Builtin("repeat", 1, _repeat),
    Builtin("map", 2, _map),
    Builtin("between", 2, _between),
    Builtin("not", 1, _not),
    Builtin("and", 2, _and),
    Builtin("or", 2, _or),
]


def install_builtins(env):
    for b in BUILTINS:
        env.define(b.name, Deferred.of(b))
    return env
