"""An interpreter for a lazy, pattern-matching-oriented Lisp.

Matchers are first-class values that tell the matching engine how to
decompose a target for each pattern constructor, which makes it possible to
pattern-match data without canonical forms (multisets, sets, unordered
pairs) with non-linear patterns and backtracking.
"""

from .core import show, stats
from .errors import EvalError, LangError, ReadError
from .interpreter import Interpreter

__all__ = ["Interpreter", "show", "stats", "LangError", "ReadError", "EvalError"]
__version__ = "0.1.0"
