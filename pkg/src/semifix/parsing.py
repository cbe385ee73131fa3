"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := NUMBER | 'inf' | IDENT | '(' expr ')'

The parser produces a small AST; :func:`evaluate` turns it into a
:class:`~semifix.series.Series` once a variable context is known, and
:func:`degree_bound` gives an upper bound on the total degree of the expanded
polynomial so callers can pick a truncation degree that loses nothing.
"""

import re
from dataclasses import dataclass

from .errors import DomainError, ParseError

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^()=|>,])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "number" | "ident" | "op" | "end"
    text: str
    line: int
    column: int


def tokenize(text, line=1, column=1):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, column + bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), line, column + start))
        pos = m.end()
    tokens.append(Token("end", "", line, column + len(text.rstrip())))
    return tokens


@dataclass(frozen=True)
class Num:
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Var:
    name: str
    line: int
    column: int


@dataclass(frozen=True)
class Add:
    terms: tuple


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.next()
        if tok.text != text:
            found = tok.text or "end of line"
            raise ParseError(f"expected {text!r}, found {found!r}", tok.line, tok.column)
        return tok

    def expr(self):
        terms = [self.term()]
        while self.peek().text == "+":
            self.next()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek().text == "*":
            self.next()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.peek().text == "^":
            self.next()
            tok = self.next()
            if tok.kind != "number" or not tok.text.isdigit():
                raise ParseError("exponent must be a non-negative integer", tok.line, tok.column)
            return Pow(base, int(tok.text))
        return base

    def atom(self):
        tok = self.next()
        if tok.kind == "number":
            return Num(tok.text, tok.line, tok.column)
        if tok.kind == "ident":
            if tok.text == "inf":
                return Num(tok.text, tok.line, tok.column)
            return Var(tok.text, tok.line, tok.column)
        if tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.text or "end of line"
        raise ParseError(f"unexpected {found!r}", tok.line, tok.column)


def parse_expression(text, line=1, column=1):
    """Parse ``text`` into an expression AST; the whole input must be consumed."""
    return parse_tokens(tokenize(text, line, column))


def parse_tokens(tokens):
    p = _Parser(tokens)
    node = p.expr()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
    return node


def variables(node):
    """All :class:`Var` nodes in source order."""
    if isinstance(node, Var):
        return [node]
    if isinstance(node, Add):
        return [v for t in node.terms for v in variables(t)]
    if isinstance(node, Mul):
        return [v for f in node.factors for v in variables(f)]
    if isinstance(node, Pow):
        return variables(node.base)
    return []


def degree_bound(node):
    if isinstance(node, Num):
        return 0
    if isinstance(node, Var):
        return 1
    if isinstance(node, Add):
        return max(degree_bound(t) for t in node.terms)
    if isinstance(node, Mul):
        return sum(degree_bound(f) for f in node.factors)
    if isinstance(node, Pow):
        return degree_bound(node.base) * node.exponent
    raise TypeError(node)


def evaluate(node, ctx):
    """Build the series denoted by ``node`` in context ``ctx``."""
    if isinstance(node, Num):
        sr = ctx.semiring
        try:
            value = sr.literal(node.text)
        except DomainError as exc:
            # integers outside the carrier (e.g. 2 over Boolean) denote n copies of one
            if not node.text.isdigit():
                raise ParseError(str(exc), node.line, node.column) from None
            value = sr.from_int(int(node.text))
        return ctx.const(value)
    if isinstance(node, Var):
        if node.name not in ctx.names:
            raise ParseError(f"undeclared identifier {node.name!r}", node.line, node.column)
        return ctx.var(node.name)
    if isinstance(node, Add):
        out = evaluate(node.terms[0], ctx)
        for t in node.terms[1:]:
            out = out + evaluate(t, ctx)
        return out
    if isinstance(node, Mul):
        out = evaluate(node.factors[0], ctx)
        for f in node.factors[1:]:
            out = out * evaluate(f, ctx)
        return out
    if isinstance(node, Pow):
        return evaluate(node.base, ctx) ** node.exponent
    raise TypeError(node)
