class LangError(Exception):
    """Base class for diagnostics raised by the interpreter.

    ``pos`` is a ``(line, column)`` pair when the error can be tied to a
    place in the source text.
    """

    def __init__(self, message, pos=None):
        super().__init__(message)
        self.message = message
        self.pos = pos

    def __str__(self):
        if self.pos is None:
            return self.message
        return f"{self.message} at {self.pos[0]}:{self.pos[1]}"


class ReadError(LangError):
    pass


class EvalError(LangError):
    pass
