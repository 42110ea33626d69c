import sys

from . import engine
from .core import Environment, is_matcher, show, type_name
from .errors import EvalError
from .evaluator import define_global, delay, evaluate, install_builtins
from .prelude import load_prelude
from .reader import Define, MatchAll, read_expression, read_program

# evaluation recurses on the host stack
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


class Interpreter:
    """A session: a global environment with builtins and (optionally) the prelude."""

    def __init__(self, prelude=True, sections=None):
        self.env = install_builtins(Environment())
        if prelude:
            load_prelude(self.env, sections)

    def execute(self, form):
        """Run one top-level form; returns ``None`` for a definition."""
        if isinstance(form, Define):
            define_global(self.env, form.name, form.expr)
            return None
        return evaluate(self.env, form)

    def run(self, source):
        """Run every form in ``source``; returns the values of the expressions."""
        values = []
        for form in read_program(source):
            value = self.execute(form)
            if value is not None:
                values.append(value)
        return values

    def eval(self, text):
        return self.execute(read_expression(text))

    def eval_show(self, text, limit=None):
        return show(self.eval(text), limit)

    def lookup(self, name):
        return self.env.get(name).force()

    def initial_state(self, text):
        """Initial matching state of a ``match-all`` expression."""
        expr = read_expression(text)
        if not isinstance(expr, MatchAll):
            raise EvalError("expected a match-all expression", getattr(expr, "pos", None))
        m = evaluate(self.env, expr.matcher)
        if not is_matcher(m):
            raise EvalError(f"expected a matcher, got {type_name(m)}", expr.pos)
        return engine.initial_state(expr.clause.pattern, m, delay(self.env, expr.target), self.env)

    def trace(self, text, rounds):
        return engine.trace(self.initial_state(text), rounds)
