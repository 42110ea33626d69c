"""The pattern-matching machine.

A matching *atom* is a (pattern, matcher, target) triple.  A matching *state*
is a stack of atoms together with the environment of the enclosing
``match-all`` and the bindings accumulated so far; a state with an empty
stack is a success.

Search proceeds over a binary reduction tree.  A node is a (lazy, possibly
infinite) list of states.  Stepping a node expands its head state into a
child node and keeps the remaining states as a tail node.  Every round
steps each node of the frontier once and replaces it by its child followed
by its tail.  Because every node gets stepped in each round, a state at
finite depth is reached after finitely many rounds even when some node has
infinitely many states.
"""

from typing import NamedTuple

from . import evaluator
from .core import (
    Data, Deferred, LazySeq, MatcherValue, SomethingValue, TupleValue,
    is_matcher, matcher_label, show, stats,
)
from .errors import EvalError
from .reader import (
    CtorPat, CtorPP, DCollection, DCtor, DVar, DWild, Hole, PatVar, TuplePat,
    ValuePat, ValuePP, Wildcard, unparse,
)


class MatchingAtom(NamedTuple):
    pattern: object
    matcher: object
    target: Deferred


class MatchingState:
    """``bindings`` is chained onto ``outer``, so it doubles as the lookup
    environment for value patterns; :meth:`delta` recovers the bindings
    made by this match alone."""

    __slots__ = ("atoms", "outer", "bindings")

    def __init__(self, atoms, outer, bindings):
        self.atoms = atoms
        self.outer = outer
        self.bindings = bindings

    def delta(self):
        return self.bindings.frames_until(self.outer)


def initial_state(pattern, matcher, target, env):
    if not isinstance(target, Deferred):
        target = Deferred.of(target)
    return MatchingState((MatchingAtom(pattern, matcher, target),), env, env)


class Node:
    """Memoized lazy list of matching states."""

    __slots__ = ("_cell", "_thunk")

    def __init__(self, thunk):
        self._cell = None
        self._thunk = thunk

    @classmethod
    def of(cls, states):
        node = EMPTY_NODE
        for s in reversed(states):
            n = cls(None)
            n._cell = (s, node)
            node = n
        return node

    @classmethod
    def from_iter(cls, iterator):
        def step():
            for s in iterator:
                return (s, Node(step))
            return None
        return cls(step)

    def uncons(self):
        if self._thunk is not None:
            thunk, self._thunk = self._thunk, None
            self._cell = thunk()
        return self._cell

    def is_empty(self):
        return self.uncons() is None

    def states(self, limit=None):
        node, n = self, 0
        while limit is None or n < limit:
            cell = node.uncons()
            if cell is None:
                return
            yield cell[0]
            node = cell[1]
            n += 1


EMPTY_NODE = Node(None)


# ---------------------------------------------------------------------------
# matching atoms

def match_function(atom, env):
    """Expand one atom.

    Returns ``(candidates, delta)``: an iterable of atom tuples, one per way
    the atom can proceed (empty means failure, ``[()]`` means done), and the
    bindings to add.  Only ``something`` ever produces bindings.
    """
    candidates, delta = _mfun(atom, env)
    if type(candidates) is _Pending:
        candidates = _candidates(*candidates)
    return candidates, delta


class _Pending(NamedTuple):
    """Candidates still to be read off a lazy collection of next targets."""
    subpatterns: list
    matchers: tuple
    targets: LazySeq


def _mfun(atom, env):
    stats.calls += 1
    pattern, matcher, target = atom
    pt = type(pattern)
    if type(matcher) is MatcherValue:
        return _match_with_clauses(pattern, matcher, target, env)
    if isinstance(matcher, SomethingValue):
        if pt is PatVar:
            return [()], [(pattern.name, target)]
        if pt is Wildcard:
            return [()], []
        raise EvalError(f"something cannot match pattern {unparse(pattern)}")
    if isinstance(matcher, TupleValue):
        if pt is TuplePat:
            ms, ps = matcher.items, pattern.items
            if len(ms) != len(ps):
                raise EvalError(
                    f"tuple pattern {unparse(pattern)} has {len(ps)} elements "
                    f"but the matcher has {len(ms)}")
            value = target.force()
            if not isinstance(value, TupleValue) or len(value.items) != len(ps):
                raise EvalError(f"expected a tuple of {len(ps)} elements, got {show(value, 10)}")
            return [tuple(MatchingAtom(p, m.force(), t)
                          for p, m, t in zip(ps, ms, value.items))], []
        if pt is Wildcard:
            return [()], []
        if pt is PatVar:
            return [()], [(pattern.name, target)]
        raise EvalError(
            f"pattern not supported by matcher: {unparse(pattern)} with {matcher_label(matcher)}")
    raise EvalError(f"not a matcher: {show(matcher, 10)}")


def _match_with_clauses(pattern, matcher, target, env):
    pt = type(pattern)
    for index, clause in enumerate(matcher.clauses):
        pp = clause.pp
        t = type(pp)
        if t is Hole:
            subpatterns, value_bindings = [pattern], []
        else:
            # cheap rejections before the general ppm
            if t is CtorPP:
                if pt is not CtorPat or pattern.name != pp.name:
                    continue
            elif t is ValuePP and pt is not ValuePat:
                continue
            r = ppm(env, pp, pattern)
            if r is None:
                continue
            subpatterns, value_bindings = r
        for dc in clause.data_clauses:
            dp = dc.dp
            dt = type(dp)
            if dt is DVar:
                data_bindings = [(dp.name, target)]
            elif dt is DWild:
                data_bindings = []
            else:
                data_bindings = pdm(dp, target)
                if data_bindings is None:
                    continue
            matchers = matcher.next_cache.get(index)
            if matchers is None or len(matchers) != len(subpatterns):
                matchers = _next_matchers(matcher, index, len(subpatterns))
            bindings = value_bindings + data_bindings
            benv = matcher.env.extend(bindings) if bindings else matcher.env
            targets = evaluator.evaluate(benv, dc.body)
            if type(targets) is not LazySeq and not isinstance(targets, LazySeq):
                raise EvalError(
                    f"matcher clause {unparse(clause.pp)} must return a collection of next targets")
            return _Pending(subpatterns, matchers, targets), []
        # the primitive-pattern pattern matched but no data clause did
        return [], []
    raise EvalError(
        f"pattern not supported by matcher: {unparse(pattern)} with {matcher_label(matcher)}")


def _next_matchers(matcher, index, arity):
    cached = matcher.next_cache.get(index)
    if cached is None:
        clause = matcher.clauses[index]
        value = evaluator.evaluate(matcher.env, clause.next_matchers)
        if isinstance(value, TupleValue):
            cached = tuple(d.force() for d in value.items)
        else:
            cached = (value,)
        for m in cached:
            if not is_matcher(m):
                raise EvalError(
                    f"next matcher of clause {unparse(clause.pp)} is not a matcher: {show(m, 10)}")
        matcher.next_cache[index] = cached
    if len(cached) != arity:
        clause = matcher.clauses[index]
        raise EvalError(
            f"clause {unparse(clause.pp)} has {arity} holes but {len(cached)} next matchers")
    return cached


def _atoms_of(subpatterns, matchers, d):
    k = len(subpatterns)
    if k == 1:
        return (MatchingAtom(subpatterns[0], matchers[0], d),)
    v = d.force()
    if not isinstance(v, TupleValue) or len(v.items) != k:
        raise EvalError(f"expected next targets as a tuple of {k}, got {show(v, 10)}")
    if k == 2:
        a, b = v.items
        return (MatchingAtom(subpatterns[0], matchers[0], a),
                MatchingAtom(subpatterns[1], matchers[1], b))
    return tuple(MatchingAtom(p, m, t) for p, m, t in zip(subpatterns, matchers, v.items))


def _candidates(subpatterns, matchers, targets):
    for d in targets:
        yield _atoms_of(subpatterns, matchers, d)


def ppm(env, pp, p):
    """Match a primitive-pattern pattern against a pattern.

    Returns ``(subpatterns, bindings)`` or ``None``.  Value-pattern contents
    are evaluated in ``env``, which includes the bindings made so far.
    """
    t = type(pp)
    if t is Hole:
        return [p], []
    if t is ValuePP:
        if type(p) is ValuePat:
            return [], [(pp.name, Deferred.of(evaluator.evaluate(env, p.expr)))]
        return None
    if t is CtorPP:
        if type(p) is not CtorPat or p.name != pp.name or len(p.args) != len(pp.args):
            return None
        subs, binds = [], []
        for a, b in zip(pp.args, p.args):
            r = ppm(env, a, b)
            if r is None:
                return None
            subs += r[0]
            binds += r[1]
        return subs, binds
    raise EvalError(f"not a primitive-pattern pattern: {pp!r}")


def pdm(dp, target):
    """Match a primitive-data pattern against a target.

    ``target`` is a Deferred (a plain value is accepted too) and is forced
    only as far as the pattern's shape requires.  Returns a list of
    bindings or ``None``.
    """
    if not isinstance(target, Deferred):
        target = Deferred.of(target)
    t = type(dp)
    if t is DVar:
        return [(dp.name, target)]
    if t is DWild:
        return []
    v = target.force()
    if t is DCollection:
        if not isinstance(v, LazySeq):
            return None
        binds, seq = [], v
        for h in dp.heads:
            cell = seq.uncons()
            if cell is None:
                return None
            r = pdm(h, cell[0])
            if r is None:
                return None
            binds += r
            seq = cell[1]
        if dp.rest is None:
            return binds if seq.uncons() is None else None
        r = pdm(dp.rest, Deferred.of(seq))
        return None if r is None else binds + r
    if t is DCtor:
        if not isinstance(v, Data) or v.name != dp.name or len(v.args) != len(dp.args):
            return None
        binds = []
        for sub, arg in zip(dp.args, v.args):
            r = pdm(sub, arg)
            if r is None:
                return None
            binds += r
        return binds
    raise EvalError(f"not a primitive-data pattern: {dp!r}")


# ---------------------------------------------------------------------------
# states, machine, enumeration

def step_node(node):
    """Step a node: ``(result, child, tail)``, each possibly ``None``.

    ``result`` is the bindings environment of a successful head state.
    """
    cell = node.uncons()
    if cell is None:
        return None, None, None
    state, tail = cell
    atoms = state.atoms
    if not atoms:
        return state.bindings, None, tail
    rest = atoms[1:]
    candidates, delta = _mfun(atoms[0], state.bindings)
    bindings = state.bindings.extend(delta) if delta else state.bindings
    outer = state.outer
    if type(candidates) is _Pending:
        child = _child_node(candidates, candidates.targets, rest, outer, bindings)
    else:
        child = Node.of([MatchingState(c + rest, outer, bindings) for c in candidates])
    return None, child, tail


def _child_node(pending, seq, rest, outer, bindings):
    """Node of the states for the candidates left in ``seq``."""
    def step():
        cell = seq.uncons()
        if cell is None:
            return None
        atoms = _atoms_of(pending.subpatterns, pending.matchers, cell[0])
        return (MatchingState(atoms + rest, outer, bindings),
                _child_node(pending, cell[1], rest, outer, bindings))
    return Node(step)


def step_machine(frontier):
    """One round over the frontier: ``(results, next_frontier)``.

    Each node is replaced in place by its child node and then its tail node,
    so within a round the older branch point decides the order.  Empty nodes
    are dropped since they can only step to nothing.

    This is :func:`step_node` applied to every node, inlined because it is
    the innermost loop of every search.
    """
    results, nodes = [], []
    append = nodes.append
    for node in frontier:
        cell = node._cell if node._thunk is None else node.uncons()
        if cell is None:
            continue
        state, tail = cell
        atoms = state.atoms
        if atoms:
            candidates, delta = _mfun(atoms[0], state.bindings)
            bindings = state.bindings.extend(delta) if delta else state.bindings
            if type(candidates) is _Pending:
                child = _child_node(candidates, candidates.targets, atoms[1:],
                                    state.outer, bindings)
                if child.uncons() is not None:
                    append(child)
            elif candidates:
                rest, outer = atoms[1:], state.outer
                append(Node.of([MatchingState(c + rest, outer, bindings)
                                for c in candidates]))
        else:
            results.append(state.bindings)
        if tail.uncons() is not None:
            append(tail)
    return results, nodes


def enumerate_matches(initial):
    """Yield the bindings environment of every success, in round order."""
    frontier = [Node.of([initial])]
    while frontier:
        results, frontier = step_machine(frontier)
        yield from results


# ---------------------------------------------------------------------------
# tracing

RULE = "-" * 40


def format_atom(atom, limit=10):
    return "[{} {} {}]".format(
        unparse(atom.pattern), matcher_label(atom.matcher, limit), show(atom.target, limit))


def format_state(state, limit=10):
    atoms = " ".join(format_atom(a, limit) for a in state.atoms)
    binds = " ".join(f"[{name} {show(d, limit)}]" for name, d in state.delta())
    return f"MState {{{atoms}}} env {{{binds}}}"


def trace(initial, limit, node_limit=20):
    """Render the frontier of each round, up to ``limit`` rounds, as text."""
    lines = []
    frontier = [Node.of([initial])]
    for r in range(limit + 1):
        if r:
            lines.append(RULE)
        for node in frontier:
            count = 0
            for state in node.states(node_limit + 1):
                if count == node_limit:
                    lines.append("…")
                    break
                lines.append(format_state(state))
                count += 1
        if r == limit:
            break
        _, frontier = step_machine(frontier)
        if not frontier:
            break
    return "\n".join(lines) + "\n"
