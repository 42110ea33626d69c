"""Tokenizer, parser and printer for the surface syntax.

The language is a Lisp with four bracket families::

    ( )   application and special forms
    [ ]   tuples (and tuple patterns)
    { }   collections
    < >   data construction (Uppercase) and pattern constructors (lowercase)

Patterns add the sigils ``$x`` (pattern variable), ``,M`` (value pattern) and
``_`` (wildcard).  Inside ``matcher`` clauses the primitive-pattern pattern
uses ``$`` as an anonymous hole and ``,$x`` to capture the content of a value
pattern; primitive-data patterns additionally allow ``{}`` and ``{dp @dp}``.

A single-element tuple ``[x]`` is the same thing as ``x``; the parser
collapses it for expressions and patterns alike.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import ReadError

__all__ = [
    "Token", "tokenize", "parse_program", "parse_expression", "parse_pattern",
    "unparse", "read_program", "read_expression",
]


class Token(NamedTuple):
    kind: str     # open close dollar comma underscore at int string bool ident
    text: str
    line: int
    col: int

    @property
    def pos(self):
        return (self.line, self.col)


OPENERS = {"(": ")", "[": "]", "{": "}", "<": ">"}
CLOSERS = {v: k for k, v in OPENERS.items()}
IDENT_CHARS = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    "-+*/?!=_.:%&^~'"
)
ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


def tokenize(source):
    """Split ``source`` into tokens, dropping whitespace and ``;`` comments."""
    tokens = []
    i, line, col = 0, 1, 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == ";":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start = (line, col)
        if ch in OPENERS:
            tokens.append(Token("open", ch, *start))
        elif ch in CLOSERS:
            tokens.append(Token("close", ch, *start))
        elif ch == "$":
            tokens.append(Token("dollar", ch, *start))
        elif ch == ",":
            tokens.append(Token("comma", ch, *start))
        elif ch == "@":
            tokens.append(Token("at", ch, *start))
        elif ch == "#":
            word = source[i:i + 2]
            if word in ("#t", "#f") and (i + 2 >= n or source[i + 2] not in IDENT_CHARS):
                tokens.append(Token("bool", word, *start))
                i, col = i + 2, col + 2
                continue
            raise ReadError(f"illegal character {ch!r}", start)
        elif ch == '"':
            j = i + 1
            chars = []
            sline, scol = line, col + 1
            while True:
                if j >= n:
                    raise ReadError("unterminated string", start)
                c = source[j]
                if c == '"':
                    break
                if c == "\\":
                    if j + 1 >= n:
                        raise ReadError("unterminated string", start)
                    esc = source[j + 1]
                    if esc not in ESCAPES:
                        raise ReadError(f"unknown escape \\{esc}", (sline, scol))
                    chars.append(ESCAPES[esc])
                    j += 2
                    scol += 2
                    continue
                chars.append(c)
                if c == "\n":
                    sline, scol = sline + 1, 1
                else:
                    scol += 1
                j += 1
            tokens.append(Token("string", "".join(chars), *start))
            i, line, col = j + 1, sline, scol + 1
            continue
        elif ch in IDENT_CHARS:
            j = i
            while j < n and source[j] in IDENT_CHARS:
                j += 1
            word = source[i:j]
            if word == "_":
                kind = "underscore"
            elif _is_int(word):
                kind = "int"
            elif word[0].isdigit():
                raise ReadError(f"malformed number {word!r}", start)
            else:
                kind = "ident"
            tokens.append(Token(kind, word, *start))
            col += j - i
            i = j
            continue
        else:
            raise ReadError(f"illegal character {ch!r}", start)
        i, col = i + 1, col + 1
    return tokens


def _is_int(word):
    digits = word[1:] if word[0] == "-" else word
    return digits.isdigit() and digits.isascii()


# ---------------------------------------------------------------------------
# AST.  Source positions are carried along but excluded from equality so that
# re-parsed output compares equal to the original.

def _pos():
    return field(default=None, compare=False, repr=False)


class Node:
    pass


@dataclass(frozen=True)
class Var(Node):
    name: str
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Const(Node):
    value: object
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Lambda(Node):
    params: tuple
    body: Node
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class App(Node):
    head: Node
    args: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class TupleExpr(Node):
    items: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class CollectionExpr(Node):
    items: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class DataExpr(Node):
    name: str
    args: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class MatchClause(Node):
    pattern: Node
    body: Node


@dataclass(frozen=True)
class MatchAll(Node):
    target: Node
    matcher: Node
    clause: MatchClause
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Match(Node):
    target: Node
    matcher: Node
    clauses: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Something(Node):
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class DataClause(Node):
    dp: Node
    body: Node


@dataclass(frozen=True)
class MatcherClause(Node):
    pp: Node
    next_matchers: Node
    data_clauses: tuple


@dataclass(frozen=True)
class MatcherExpr(Node):
    clauses: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class If(Node):
    cond: Node
    then: Node
    else_: Node
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Define(Node):
    name: str
    expr: Node
    pos: Optional[tuple] = _pos()


# patterns

@dataclass(frozen=True)
class Wildcard(Node):
    pass


@dataclass(frozen=True)
class PatVar(Node):
    name: str


@dataclass(frozen=True)
class ValuePat(Node):
    expr: Node


@dataclass(frozen=True)
class CtorPat(Node):
    name: str
    args: tuple


@dataclass(frozen=True)
class TuplePat(Node):
    items: tuple


# primitive-pattern patterns

@dataclass(frozen=True)
class Hole(Node):
    pass


@dataclass(frozen=True)
class ValuePP(Node):
    name: str


@dataclass(frozen=True)
class CtorPP(Node):
    name: str
    args: tuple


# primitive-data patterns

@dataclass(frozen=True)
class DVar(Node):
    name: str


@dataclass(frozen=True)
class DWild(Node):
    pass


@dataclass(frozen=True)
class DCollection(Node):
    """``{}``, ``{dp ...}`` or ``{dp ... @rest}``."""
    heads: tuple
    rest: Optional[Node] = None


@dataclass(frozen=True)
class DCtor(Node):
    name: str
    args: tuple


SPECIAL_FORMS = frozenset({"lambda", "define", "if", "match-all", "match", "matcher"})


class Parser:

    def __init__(self, tokens):
        self.tokens = list(tokens)
        self.i = 0

    # -- token helpers

    def peek(self, offset=0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def next(self, what="a form"):
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1].pos if self.tokens else (1, 1)
            raise ReadError(f"unexpected end of input, expected {what}", last)
        self.i += 1
        return tok

    def expect_open(self, bracket, what):
        tok = self.next(what)
        if tok.kind != "open" or tok.text != bracket:
            raise ReadError(f"expected '{bracket}' to start {what}, got {tok.text!r}", tok.pos)
        return tok

    def at_close(self, bracket):
        tok = self.peek()
        if tok is None:
            return False
        if tok.kind == "close":
            if tok.text != bracket:
                raise ReadError(f"bracket mismatch: expected '{bracket}', got '{tok.text}'", tok.pos)
            return True
        return False

    def expect_close(self, bracket):
        tok = self.next(f"'{bracket}'")
        if tok.kind != "close":
            raise ReadError(f"expected '{bracket}', got {tok.text!r}", tok.pos)
        if tok.text != bracket:
            raise ReadError(f"bracket mismatch: expected '{bracket}', got '{tok.text}'", tok.pos)

    def bound_name(self, what):
        """Read ``$name`` and return ``name``."""
        tok = self.next(what)
        if tok.kind != "dollar":
            raise ReadError(f"expected $name for {what}, got {tok.text!r}", tok.pos)
        name = self.adjacent_ident()
        if name is None:
            raise ReadError(f"expected a name after '$' in {what}", tok.pos)
        return name

    def adjacent_ident(self):
        """If the token right after the last ``$`` is a touching identifier, eat it."""
        dollar = self.tokens[self.i - 1]
        tok = self.peek()
        if tok is not None and tok.kind == "ident" and tok.line == dollar.line \
                and tok.col == dollar.col + 1:
            self.i += 1
            return tok.text
        return None

    # -- programs and expressions

    def program(self):
        forms = []
        while self.peek() is not None:
            forms.append(self.expression(top=True))
        return forms

    def expression(self, top=False):
        tok = self.next("an expression")
        kind = tok.kind
        if kind == "int":
            return Const(int(tok.text), pos=tok.pos)
        if kind == "string":
            return Const(tok.text, pos=tok.pos)
        if kind == "bool":
            return Const(tok.text == "#t", pos=tok.pos)
        if kind == "ident":
            if tok.text == "something":
                return Something(pos=tok.pos)
            if tok.text in SPECIAL_FORMS:
                raise ReadError(f"special form '{tok.text}' used as a value", tok.pos)
            return Var(tok.text, pos=tok.pos)
        if kind == "open":
            if tok.text == "(":
                return self.form(tok, top)
            if tok.text == "[":
                items = self.expressions_until("]")
                if len(items) == 1:
                    return items[0]
                return TupleExpr(tuple(items), pos=tok.pos)
            if tok.text == "{":
                if self.peek() is not None and self.peek().kind == "at":
                    raise ReadError("'@' is only allowed in primitive-data patterns", self.peek().pos)
                return CollectionExpr(tuple(self.expressions_until("}")), pos=tok.pos)
            # '<'
            name = self.next("a data constructor name")
            if name.kind != "ident" or not name.text[0].isupper():
                raise ReadError("data constructor names start with an uppercase letter", name.pos)
            return DataExpr(name.text, tuple(self.expressions_until(">")), pos=tok.pos)
        if kind == "close":
            raise ReadError(f"unexpected '{tok.text}'", tok.pos)
        if kind == "comma":
            raise ReadError("',' is only allowed in patterns", tok.pos)
        if kind == "dollar":
            raise ReadError("'$' is only allowed in binders and patterns", tok.pos)
        if kind == "underscore":
            raise ReadError("'_' is only allowed in patterns", tok.pos)
        raise ReadError("'@' is only allowed in primitive-data patterns", tok.pos)

    def expressions_until(self, bracket):
        items = []
        while not self.at_close(bracket):
            if self.peek() is None:
                self.expect_close(bracket)
            items.append(self.expression())
        self.expect_close(bracket)
        return items

    def form(self, open_tok, top):
        head = self.peek()
        if head is None:
            self.expect_close(")")
        if head.kind == "close" and head.text == ")":
            raise ReadError("empty application '()'", open_tok.pos)
        pos = open_tok.pos
        if head.kind == "ident" and head.text in SPECIAL_FORMS:
            self.i += 1
            name = head.text
            if name == "define":
                if not top:
                    raise ReadError("define is only allowed at top level", pos)
                var = self.bound_name("define")
                expr = self.expression()
                self.expect_close(")")
                return Define(var, expr, pos=pos)
            if name == "lambda":
                self.expect_open("[", "lambda parameters")
                params = []
                while not self.at_close("]"):
                    p = self.bound_name("lambda parameter")
                    if p in params:
                        raise ReadError(f"duplicate parameter '{p}'", pos)
                    params.append(p)
                self.expect_close("]")
                body = self.expression()
                self.expect_close(")")
                return Lambda(tuple(params), body, pos=pos)
            if name == "if":
                args = self.expressions_until(")")
                if len(args) != 3:
                    raise ReadError(f"if takes 3 arguments, got {len(args)}", pos)
                return If(*args, pos=pos)
            if name == "match-all":
                target = self.expression()
                matcher = self.expression()
                clause = self.match_clause()
                self.expect_close(")")
                return MatchAll(target, matcher, clause, pos=pos)
            if name == "match":
                target = self.expression()
                matcher = self.expression()
                self.expect_open("{", "match clauses")
                clauses = []
                while not self.at_close("}"):
                    clauses.append(self.match_clause())
                self.expect_close("}")
                self.expect_close(")")
                if not clauses:
                    raise ReadError("match needs at least one clause", pos)
                return Match(target, matcher, tuple(clauses), pos=pos)
            # matcher
            self.expect_open("{", "matcher clauses")
            clauses = []
            while not self.at_close("}"):
                clauses.append(self.matcher_clause())
            self.expect_close("}")
            self.expect_close(")")
            return MatcherExpr(tuple(clauses), pos=pos)
        fn = self.expression()
        args = self.expressions_until(")")
        return App(fn, tuple(args), pos=pos)

    def match_clause(self):
        self.expect_open("[", "a match clause")
        pattern = self.pattern()
        body = self.expression()
        self.expect_close("]")
        return MatchClause(pattern, body)

    def matcher_clause(self):
        self.expect_open("[", "a matcher clause")
        pp = self.primitive_pattern()
        next_matchers = self.expression()
        self.expect_open("{", "primitive-data-match clauses")
        data_clauses = []
        while not self.at_close("}"):
            self.expect_open("[", "a primitive-data-match clause")
            dp = self.data_pattern()
            body = self.expression()
            self.expect_close("]")
            data_clauses.append(DataClause(dp, body))
        self.expect_close("}")
        self.expect_close("]")
        return MatcherClause(pp, next_matchers, tuple(data_clauses))

    # -- patterns

    def pattern(self):
        tok = self.next("a pattern")
        if tok.kind == "underscore":
            return Wildcard()
        if tok.kind == "dollar":
            name = self.adjacent_ident()
            if name is None:
                raise ReadError("pattern hole '$' is only allowed in matcher clauses", tok.pos)
            return PatVar(name)
        if tok.kind == "comma":
            return ValuePat(self.expression())
        if tok.kind == "open" and tok.text == "<":
            name = self.next("a pattern constructor name")
            if name.kind != "ident" or not name.text[0].islower():
                raise ReadError("pattern constructor names start with a lowercase letter", name.pos)
            args = []
            while not self.at_close(">"):
                args.append(self.pattern())
            self.expect_close(">")
            return CtorPat(name.text, tuple(args))
        if tok.kind == "open" and tok.text == "[":
            items = []
            while not self.at_close("]"):
                items.append(self.pattern())
            self.expect_close("]")
            return items[0] if len(items) == 1 else TuplePat(tuple(items))
        if tok.kind == "at":
            raise ReadError("'@' is only allowed in primitive-data patterns", tok.pos)
        raise ReadError(f"unexpected {tok.text!r} in pattern", tok.pos)

    def primitive_pattern(self):
        tok = self.next("a primitive-pattern pattern")
        if tok.kind == "dollar":
            if self.adjacent_ident() is not None:
                raise ReadError("pattern holes are anonymous: use '$', not '$name'", tok.pos)
            return Hole()
        if tok.kind == "comma":
            d = self.next("'$name' after ','")
            if d.kind != "dollar":
                raise ReadError("expected ',$name' in primitive-pattern pattern", d.pos)
            name = self.adjacent_ident()
            if name is None:
                raise ReadError("expected ',$name' in primitive-pattern pattern", d.pos)
            return ValuePP(name)
        if tok.kind == "open" and tok.text == "<":
            name = self.next("a pattern constructor name")
            if name.kind != "ident" or not name.text[0].islower():
                raise ReadError("pattern constructor names start with a lowercase letter", name.pos)
            args = []
            while not self.at_close(">"):
                args.append(self.primitive_pattern())
            self.expect_close(">")
            return CtorPP(name.text, tuple(args))
        raise ReadError(f"unexpected {tok.text!r} in primitive-pattern pattern", tok.pos)

    def data_pattern(self):
        tok = self.next("a primitive-data pattern")
        if tok.kind == "dollar":
            name = self.adjacent_ident()
            if name is None:
                raise ReadError("expected '$name' in primitive-data pattern", tok.pos)
            return DVar(name)
        if tok.kind == "underscore":
            return DWild()
        if tok.kind == "open" and tok.text == "{":
            heads, rest = [], None
            while not self.at_close("}"):
                if self.peek() is None:
                    self.expect_close("}")
                if self.peek().kind == "at":
                    at = self.next()
                    if not heads:
                        raise ReadError("'@rest' needs at least one element before it", at.pos)
                    rest = self.data_pattern()
                    if not self.at_close("}"):
                        raise ReadError("'@rest' must be the last element", at.pos)
                    break
                heads.append(self.data_pattern())
            self.expect_close("}")
            return DCollection(tuple(heads), rest)
        if tok.kind == "open" and tok.text == "<":
            name = self.next("a data constructor name")
            if name.kind != "ident" or not name.text[0].isupper():
                raise ReadError("data constructor names start with an uppercase letter", name.pos)
            args = []
            while not self.at_close(">"):
                args.append(self.data_pattern())
            self.expect_close(">")
            return DCtor(name.text, tuple(args))
        raise ReadError(f"unexpected {tok.text!r} in primitive-data pattern", tok.pos)


def parse_program(tokens):
    """Parse a token stream into a list of top-level forms."""
    return Parser(tokens).program()


def parse_expression(tokens):
    """Parse exactly one expression (``define`` is accepted)."""
    p = Parser(tokens)
    expr = p.expression(top=True)
    extra = p.peek()
    if extra is not None:
        raise ReadError(f"unexpected {extra.text!r} after expression", extra.pos)
    return expr


def parse_pattern(tokens):
    p = Parser(tokens)
    pat = p.pattern()
    extra = p.peek()
    if extra is not None:
        raise ReadError(f"unexpected {extra.text!r} after pattern", extra.pos)
    return pat


def read_program(source):
    return parse_program(tokenize(source))


def read_expression(source):
    return parse_expression(tokenize(source))


# ---------------------------------------------------------------------------
# printing

def _quote(s):
    out = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{out}"'


def _join(items):
    return " ".join(unparse(x) for x in items)


def _wrap(open_, head, items, close):
    inner = " ".join([head] + [unparse(x) for x in items]) if head else _join(items)
    return f"{open_}{inner}{close}"


def unparse(node):
    """Render an AST node back to source text."""
    t = type(node)
    if t is Var:
        return node.name
    if t is Const:
        v = node.value
        if v is True:
            return "#t"
        if v is False:
            return "#f"
        if isinstance(v, str):
            return _quote(v)
        return str(v)
    if t is Something:
        return "something"
    if t is Lambda:
        params = " ".join("$" + p for p in node.params)
        return f"(lambda [{params}] {unparse(node.body)})"
    if t is App:
        return _wrap("(", unparse(node.head), node.args, ")")
    if t is TupleExpr:
        return _wrap("[", "", node.items, "]")
    if t is CollectionExpr:
        return _wrap("{", "", node.items, "}")
    if t is DataExpr:
        return _wrap("<", node.name, node.args, ">")
    if t is MatchClause:
        return f"[{unparse(node.pattern)} {unparse(node.body)}]"
    if t is MatchAll:
        return f"(match-all {unparse(node.target)} {unparse(node.matcher)} {unparse(node.clause)})"
    if t is Match:
        return f"(match {unparse(node.target)} {unparse(node.matcher)} {{{_join(node.clauses)}}})"
    if t is MatcherExpr:
        return f"(matcher {{{_join(node.clauses)}}})"
    if t is MatcherClause:
        return f"[{unparse(node.pp)} {unparse(node.next_matchers)} {{{_join(node.data_clauses)}}}]"
    if t is DataClause:
        return f"[{unparse(node.dp)} {unparse(node.body)}]"
    if t is If:
        return f"(if {unparse(node.cond)} {unparse(node.then)} {unparse(node.else_)})"
    if t is Define:
        return f"(define ${node.name} {unparse(node.expr)})"
    if t is Wildcard or t is DWild:
        return "_"
    if t is PatVar or t is DVar:
        return "$" + node.name
    if t is ValuePat:
        return "," + unparse(node.expr)
    if t is CtorPat or t is CtorPP or t is DCtor:
        return _wrap("<", node.name, node.args, ">")
    if t is TuplePat:
        return _wrap("[", "", node.items, "]")
    if t is Hole:
        return "$"
    if t is ValuePP:
        return ",$" + node.name
    if t is DCollection:
        parts = [unparse(h) for h in node.heads]
        if node.rest is not None:
            parts.append("@" + unparse(node.rest))
        return "{" + " ".join(parts) + "}"
    raise TypeError(f"cannot print {node!r}")
