"""Runtime values, call-by-need thunks, lazy collections and environments."""

from .errors import EvalError

INT_MIN = -(2 ** 63)
INT_MAX = 2 ** 63 - 1


class Stats:
    """Global instrumentation counters.

    ``evals``  expression evaluations started by the evaluator
    ``cells``  lazy collection cells computed
    ``calls``  invocations of the engine's matching function
    """

    def __init__(self):
        self.reset()

    def reset(self):
        self.evals = 0
        self.cells = 0
        self.calls = 0

    def snapshot(self):
        return {"evals": self.evals, "cells": self.cells, "calls": self.calls}


stats = Stats()

_UNSET = object()
_BUSY = object()


class Deferred:
    """A value that is computed at most once, on first :meth:`force`."""

    __slots__ = ("_value", "_thunk")

    def __init__(self, thunk):
        self._value = _UNSET
        self._thunk = thunk

    @classmethod
    def of(cls, value):
        d = cls.__new__(cls)
        d._value = value
        d._thunk = None
        return d

    @property
    def is_forced(self):
        return self._thunk is None

    def force(self):
        thunk = self._thunk
        if thunk is None:
            return self._value
        if thunk is _BUSY:
            raise EvalError("divergent binding")
        self._thunk = _BUSY
        try:
            value = thunk()
        except BaseException:
            self._thunk = thunk
            raise
        self._value = value
        self._thunk = None
        return value

    def __repr__(self):
        if self._thunk is None:
            return f"Deferred({self._value!r})"
        return "Deferred(<pending>)"


class LazySeq:
    """A memoized cons stream.

    A cell is either ``None`` (empty) or ``(head, tail)`` where ``head`` is a
    :class:`Deferred` and ``tail`` another ``LazySeq``.  The producer thunk may
    also return a ``LazySeq``, in which case this stream becomes an alias of
    that one's first cell.
    """

    __slots__ = ("_cell", "_thunk")

    def __init__(self, thunk):
        self._cell = None
        self._thunk = thunk

    @classmethod
    def cons(cls, head, tail):
        s = cls.__new__(cls)
        s._cell = (head, tail)
        s._thunk = None
        return s

    @classmethod
    def from_deferreds(cls, items):
        seq = EMPTY
        for d in reversed(items):
            seq = cls.cons(d, seq)
        return seq

    @classmethod
    def from_values(cls, values):
        return cls.from_deferreds([Deferred.of(v) for v in values])

    @classmethod
    def from_iter(cls, iterator):
        """Wrap a Python iterator of Deferreds; cells pull from it in order."""
        def step():
            for d in iterator:
                return (d, LazySeq(step))
            return None
        return cls(step)

    def uncons(self):
        thunk = self._thunk
        if thunk is None:
            return self._cell
        if thunk is _BUSY:
            raise EvalError("divergent binding")
        self._thunk = _BUSY
        try:
            cell = thunk()
            if isinstance(cell, LazySeq):
                cell = cell.uncons()
        except BaseException:
            self._thunk = thunk
            raise
        stats.cells += 1
        self._cell = cell
        self._thunk = None
        return cell

    def is_empty(self):
        return self.uncons() is None

    def __iter__(self):
        """Yield the element thunks, forcing cells one at a time."""
        seq = self
        while True:
            cell = seq.uncons()
            if cell is None:
                return
            yield cell[0]
            seq = cell[1]

    def forced_cells(self):
        """Number of cells already computed, counted from here without forcing."""
        n, seq = 0, self
        while seq._thunk is None and seq._cell is not None:
            n += 1
            seq = seq._cell[1]
        return n

    def __repr__(self):
        return "LazySeq(...)"


EMPTY = LazySeq(None)


class TupleValue:
    __slots__ = ("items",)

    def __init__(self, items):
        self.items = tuple(items)

    def __repr__(self):
        return f"TupleValue({len(self.items)})"


class Data:
    __slots__ = ("name", "args")

    def __init__(self, name, args):
        self.name = name
        self.args = tuple(args)

    def __repr__(self):
        return f"Data({self.name}, {len(self.args)})"


class Closure:
    __slots__ = ("params", "body", "env")

    def __init__(self, params, body, env):
        self.params = params
        self.body = body
        self.env = env


class Builtin:
    """A host function.  ``fn`` receives the argument thunks unforced."""

    __slots__ = ("name", "arity", "fn")

    def __init__(self, name, arity, fn):
        self.name = name
        self.arity = arity
        self.fn = fn


class MatcherValue:
    """Matcher clauses paired with the environment they were evaluated in.

    ``label`` is only used for display: either a name or a
    ``(function-name, argument-thunks)`` pair recorded when the matcher was
    returned by a function application.
    """

    __slots__ = ("clauses", "env", "label", "next_cache")

    def __init__(self, clauses, env, label=None):
        self.clauses = clauses
        self.env = env
        self.label = label
        self.next_cache = {}


class SomethingValue:
    __slots__ = ()

    def __repr__(self):
        return "SOMETHING"


SOMETHING = SomethingValue()


def is_matcher(value):
    if isinstance(value, (MatcherValue, SomethingValue)):
        return True
    if isinstance(value, TupleValue):
        return all(is_matcher(d.force()) for d in value.items)
    return False


class Environment:
    """Linked frames mapping names to :class:`Deferred`.

    Extension allocates a new frame and never touches the parent.  The global
    frame is the one exception: top-level ``define`` writes into it so that
    definitions may refer to each other regardless of order.
    """

    __slots__ = ("frame", "parent")

    def __init__(self, frame=None, parent=None):
        self.frame = {} if frame is None else frame
        self.parent = parent

    def lookup(self, name):
        env = self
        while env is not None:
            d = env.frame.get(name)
            if d is not None:
                return d
            env = env.parent
        return None

    def get(self, name):
        d = self.lookup(name)
        if d is None:
            raise EvalError(f"unbound variable '{name}'")
        return d

    def extend(self, bindings):
        frame = dict(bindings)
        if not frame:
            return self
        return Environment(frame, self)

    def define(self, name, deferred):
        self.frame[name] = deferred

    def frames_until(self, stop):
        """Bindings of the frames between ``self`` and ``stop``, oldest first."""
        out = []
        env = self
        while env is not None and env is not stop:
            out.append(env.frame)
            env = env.parent
        pairs = []
        for frame in reversed(out):
            pairs.extend(frame.items())
        return pairs


def env_extend(env, bindings):
    """Return ``env`` extended with ``(name, Deferred)`` pairs; later pairs win."""
    return env.extend(bindings)


def check_int(n):
    if n < INT_MIN or n > INT_MAX:
        raise EvalError("integer overflow")
    return n


def type_name(v):
    if isinstance(v, bool):
        return "boolean"
    if isinstance(v, int):
        return "integer"
    if isinstance(v, str):
        return "string"
    if isinstance(v, LazySeq):
        return "collection"
    if isinstance(v, TupleValue):
        return "tuple"
    if isinstance(v, Data):
        return "data"
    if isinstance(v, (Closure, Builtin)):
        return "function"
    if isinstance(v, (MatcherValue, SomethingValue)):
        return "matcher"
    return type(v).__name__


def structural_equal(a, b):
    """Deep equality of two forced values.

    Collections compare element-wise in order.  Comparing two infinite
    collections does not terminate.
    """
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if isinstance(x, Deferred):
            x = x.force()
        if isinstance(y, Deferred):
            y = y.force()
        for v in (x, y):
            if isinstance(v, (Closure, Builtin, MatcherValue, SomethingValue)):
                raise EvalError("incomparable value")
        if type(x) is not type(y):
            return False
        if isinstance(x, (bool, int, str)):
            if x != y:
                return False
        elif isinstance(x, TupleValue):
            if len(x.items) != len(y.items):
                return False
            stack.extend(zip(x.items, y.items))
        elif isinstance(x, Data):
            if x.name != y.name or len(x.args) != len(y.args):
                return False
            stack.extend(zip(x.args, y.args))
        elif isinstance(x, LazySeq):
            while True:
                cx, cy = x.uncons(), y.uncons()
                if cx is None or cy is None:
                    if cx is not cy:
                        return False
                    break
                stack.append((cx[0], cy[0]))
                x, y = cx[1], cy[1]
        else:
            raise EvalError("incomparable value")
    return True


def _quote(s):
    out = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{out}"'


def show(value, limit=None):
    """Print a value the way results are shown to users.

    ``limit`` caps the number of elements printed per collection; a cut-off
    collection ends in ``…``.
    """
    out = []
    _show(value, limit, out)
    return "".join(out)


def _show(v, limit, out):
    if isinstance(v, Deferred):
        v = v.force()
    if v is True:
        out.append("#t")
    elif v is False:
        out.append("#f")
    elif isinstance(v, int):
        out.append(str(v))
    elif isinstance(v, str):
        out.append(_quote(v))
    elif isinstance(v, LazySeq):
        out.append("{")
        first = True
        count = 0
        for d in v:
            if limit is not None and count >= limit:
                out.append(" …" if not first else "…")
                break
            if not first:
                out.append(" ")
            _show(d, limit, out)
            first = False
            count += 1
        out.append("}")
    elif isinstance(v, TupleValue):
        out.append("[")
        for i, d in enumerate(v.items):
            if i:
                out.append(" ")
            _show(d, limit, out)
        out.append("]")
    elif isinstance(v, Data):
        out.append("<" + v.name)
        for d in v.args:
            out.append(" ")
            _show(d, limit, out)
        out.append(">")
    elif isinstance(v, SomethingValue):
        out.append("something")
    elif isinstance(v, MatcherValue):
        out.append("#<matcher>")
    elif isinstance(v, Closure):
        out.append("#<closure>")
    elif isinstance(v, Builtin):
        out.append(f"#<builtin {v.name}>")
    else:
        raise TypeError(f"not a value: {v!r}")


def matcher_label(m, limit=None):
    """Display form of a matcher, e.g. ``integer`` or ``(multiset integer)``."""
    if isinstance(m, Deferred):
        m = m.force()
    if isinstance(m, SomethingValue):
        return "something"
    if isinstance(m, TupleValue):
        return "[" + " ".join(matcher_label(d, limit) for d in m.items) + "]"
    if isinstance(m, MatcherValue):
        label = m.label
        if label is None:
            return "#<matcher>"
        if isinstance(label, str):
            return label
        name, args = label
        parts = [name] + [_arg_label(d, limit) for d in args]
        return "(" + " ".join(parts) + ")"
    return show(m, limit)


def _arg_label(d, limit):
    v = d.force()
    if isinstance(v, (MatcherValue, SomethingValue, TupleValue)):
        return matcher_label(v, limit)
    return show(v, limit)
