"""Readers for equation files and grammar files.

Equation files are line oriented::

    # binary trees
    semiring nat
    truncate 9
    param z
    var B
    B = z + z*B^2

Grammar files use ``N -> alpha | beta`` productions.  Nonterminals start
with an uppercase letter, terminals are lowercase identifiers and ``eps`` is
the empty word.  Optional headers: ``semiring``, ``truncate``, ``start N`` and
``marker z`` (or ``marker none`` to drop the length marker).  A block::

    weights
    a 3
    b 1
    end

assigns semiring constants to terminals; unlisted terminals weigh one.
Each terminal becomes ``weight * marker``, concatenation is product and
alternatives are sums.
"""

import re
from dataclasses import dataclass, field, replace

from .errors import DomainError, ParseError
from .fixpoint import EquationSystem
from .parsing import degree_bound, evaluate, parse_expression, variables
from .semiring import get_semiring
from .series import Context

__all__ = [
    "DEFAULT_SEMIRING",
    "DEFAULT_DEGREE",
    "ProblemFile",
    "GrammarFile",
    "read_problem",
    "parse_system",
    "read_grammar",
    "parse_grammar",
]

DEFAULT_SEMIRING = "nat"
DEFAULT_DEGREE = 8

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_KEYWORDS = {"semiring", "truncate", "param", "var", "inf", "eps", "start", "marker", "weights", "end"}


def _lines(text):
    """``(line_no, indent, content)`` with comments and blank lines removed."""
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield no, len(body) - len(body.lstrip()), body.rstrip()


def _words(body, col):
    """Whitespace- or comma-separated words with their columns."""
    for m in re.finditer(r"[^\s,]+", body):
        yield m.group(), col + m.start()


def _semiring_header(value, line, col):
    try:
        return get_semiring(value).name
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from None


def _degree_header(value, line, col):
    if not value.isdigit():
        raise ParseError(f"truncation degree must be a non-negative integer, got {value!r}", line, col)
    return int(value)


def _check_ident(name, line, col):
    if not _IDENT.match(name):
        raise ParseError(f"invalid identifier {name!r}", line, col)
    if name in _KEYWORDS:
        raise ParseError(f"{name!r} is a reserved word", line, col)


@dataclass
class ProblemFile:
    semiring: str = DEFAULT_SEMIRING
    truncate: int = DEFAULT_DEGREE
    params: list = field(default_factory=list)
    vars: list = field(default_factory=list)
    equations: dict = field(default_factory=dict)
    locations: dict = field(default_factory=dict, repr=False)
    declared_at: dict = field(default_factory=dict, repr=False)

    def system(self, semiring=None, degree=None):
        sr = get_semiring(semiring or self.semiring)
        D = self.truncate if degree is None else degree
        trees = []
        for x in self.vars:
            text, line, col = self.equations[x]
            trees.append(parse_expression(text, line, col))
        dr = max([D] + [degree_bound(t) for t in trees])
        ctx = Context(sr, tuple(self.params) + tuple(self.vars), dr)
        rhs = [evaluate(t, ctx) for t in trees]
        return EquationSystem(self.params, self.vars, rhs, D)


def read_problem(text):
    prob = ProblemFile()
    seen = {}
    pending = []
    for line, _, body in _lines(text):
        head = body.split(None, 1)[0]
        if "=" in body and head not in ("semiring", "truncate", "param", "var"):
            lhs, rhs = body.split("=", 1)
            name = lhs.strip()
            ncol = len(lhs) - len(lhs.lstrip()) + 1
            _check_ident(name, line, ncol)
            if name in prob.equations:
                first = prob.locations[name]
                raise ParseError(f"duplicate equation for {name} (first at line {first})", line, ncol)
            if not rhs.strip():
                raise ParseError(f"empty right-hand side for {name}", line, len(lhs) + 2)
            prob.equations[name] = (rhs, line, len(lhs) + 2)
            prob.locations[name] = line
            pending.append((name, line, ncol))
            continue
        words = list(_words(body, 1))
        key, kcol = words[0]
        args = words[1:]
        if key in ("semiring", "truncate"):
            if len(args) != 1:
                raise ParseError(f"{key} takes exactly one value", line, kcol)
            value, vcol = args[0]
            if key == "semiring":
                prob.semiring = _semiring_header(value, line, vcol)
            else:
                prob.truncate = _degree_header(value, line, vcol)
        elif key in ("param", "var"):
            if not args:
                raise ParseError(f"{key} needs at least one identifier", line, kcol)
            for name, ncol in args:
                _check_ident(name, line, ncol)
                if name in seen:
                    raise ParseError(f"{name} declared twice (first at line {seen[name]})", line, ncol)
                seen[name] = line
                prob.declared_at[name] = (line, ncol)
                (prob.params if key == "param" else prob.vars).append(name)
        else:
            raise ParseError(f"unexpected {key!r}; expected a header or an equation", line, kcol)
    for name, line, col in pending:
        if name not in prob.vars:
            what = "parameter" if name in prob.params else "undeclared identifier"
            raise ParseError(f"equation for {what} {name!r}", line, col)
    for x in prob.vars:
        if x not in prob.equations:
            raise ParseError(f"unknown {x} has no equation", *prob.declared_at[x])
    if not prob.vars:
        raise ParseError("no unknowns declared")
    # resolve identifiers now so errors carry locations regardless of later overrides
    declared = set(prob.params) | set(prob.vars)
    for x in prob.vars:
        text, line, col = prob.equations[x]
        tree = parse_expression(text, line, col)
        _check_declared(tree, declared)
    return prob


def _check_declared(tree, declared):
    for v in variables(tree):
        if v.name not in declared:
            raise ParseError(f"undeclared identifier {v.name!r}", v.line, v.column)


def parse_system(text, semiring=None, degree=None):
    """Equation-file text to a validated :class:`EquationSystem`."""
    return read_problem(text).system(semiring, degree)


# -- grammars --------------------------------------------------------------------------------


@dataclass
class GrammarFile:
    nonterminals: list = field(default_factory=list)
    terminals: list = field(default_factory=list)
    productions: dict = field(default_factory=dict)
    start: str = None
    semiring: str = DEFAULT_SEMIRING
    truncate: int = DEFAULT_DEGREE
    marker: str = "z"
    weights: dict = field(default_factory=dict)

    def unit_costs(self):
        """The same grammar without length marker and every terminal weighted ``1``.

        Over the tropical semiring the start symbol then solves to the length
        of a shortest word.
        """
        return replace(self, marker=None, weights={t: ("1", None, None) for t in self.terminals})

    def system(self, semiring=None, degree=None):
        """Generating-function translation, one unknown per nonterminal."""
        sr = get_semiring(semiring or self.semiring)
        D = self.truncate if degree is None else degree
        params = (self.marker,) if self.marker else ()
        longest = max(len(alt) for alts in self.productions.values() for alt in alts)
        ctx = Context(sr, params + tuple(self.nonterminals), max(D, longest))
        weights = {}
        for t in self.terminals:
            text, line, col = self.weights.get(t, (None, None, None))
            if text is None:
                w = ctx.one()
            else:
                try:
                    w = ctx.const(sr.literal(text))
                except DomainError as exc:
                    raise ParseError(str(exc), line, col) from None
            weights[t] = w * ctx.var(self.marker) if self.marker else w
        rhs = []
        for n in self.nonterminals:
            total = ctx.zero()
            for alt in self.productions[n]:
                term = ctx.one()
                for sym in alt:
                    term = term * (weights[sym] if sym in weights else ctx.var(sym))
                total = total + term
            rhs.append(total)
        return EquationSystem(params, tuple(self.nonterminals), rhs, D)


def _is_nonterminal(name):
    return name[0].isupper()


def read_grammar(text):
    g = GrammarFile()
    uses = []
    in_weights = False
    for line, _, body in _lines(text):
        words = list(_words(body, 1))
        key, kcol = words[0]
        if in_weights:
            if key == "end" and len(words) == 1:
                in_weights = False
                continue
            if len(words) != 2:
                raise ParseError("weight lines are 'terminal value'", line, kcol)
            (t, tcol), (v, vcol) = words
            if not _IDENT.match(t) or _is_nonterminal(t) or t == "eps":
                raise ParseError(f"{t!r} is not a terminal", line, tcol)
            g.weights[t] = (v, line, vcol)
            continue
        if "->" in body:
            lhs, rhs = body.split("->", 1)
            name = lhs.strip()
            ncol = len(lhs) - len(lhs.lstrip()) + 1
            if not _IDENT.match(name) or not _is_nonterminal(name):
                raise ParseError(f"left-hand side {name!r} is not a nonterminal", line, ncol)
            if name not in g.productions:
                g.productions[name] = []
                g.nonterminals.append(name)
            offset = len(lhs) + 3
            for alt_text in rhs.split("|"):
                syms = list(_words(alt_text, offset))
                offset += len(alt_text) + 1
                if not syms:
                    raise ParseError(f"empty alternative for {name}; write eps", line, offset - 1)
                if [s for s, _ in syms] == ["eps"]:
                    g.productions[name].append(())
                    continue
                alt = []
                for s, scol in syms:
                    if s == "eps":
                        raise ParseError("eps must stand alone in an alternative", line, scol)
                    if not _IDENT.match(s):
                        raise ParseError(f"invalid symbol {s!r}", line, scol)
                    if _is_nonterminal(s):
                        uses.append((s, line, scol))
                    elif s not in g.terminals:
                        g.terminals.append(s)
                    alt.append(s)
                g.productions[name].append(tuple(alt))
            continue
        args = words[1:]
        if key == "weights" and not args:
            in_weights = True
            continue
        if key not in ("semiring", "truncate", "start", "marker") or len(args) != 1:
            raise ParseError(f"unexpected {body.strip()!r}", line, kcol)
        value, vcol = args[0]
        if key == "semiring":
            g.semiring = _semiring_header(value, line, vcol)
        elif key == "truncate":
            g.truncate = _degree_header(value, line, vcol)
        elif key == "start":
            if not _is_nonterminal(value):
                raise ParseError(f"start symbol {value!r} is not a nonterminal", line, vcol)
            g.start = (value, line, vcol)
        else:
            if value == "none":
                g.marker = None
            else:
                _check_ident(value, line, vcol)
                if _is_nonterminal(value):
                    raise ParseError("the length marker must be lowercase", line, vcol)
                g.marker = value
    if in_weights:
        raise ParseError("weights block is missing its 'end'")
    if not g.nonterminals:
        raise ParseError("grammar has no productions")
    for s, line, col in uses:
        if s not in g.productions:
            raise ParseError(f"nonterminal {s} has no production", line, col)
    for t, (_, line, col) in g.weights.items():
        if t not in g.terminals:
            raise ParseError(f"weight for unused terminal {t!r}", line, col)
    if g.start is None:
        g.start = g.nonterminals[0]
    else:
        name, line, col = g.start
        if name not in g.productions:
            raise ParseError(f"start symbol {name} has no production", line, col)
        g.start = name
    if g.marker in g.nonterminals:
        raise ParseError(f"marker {g.marker} clashes with a nonterminal")
    return g


def parse_grammar(text, semiring=None, degree=None):
    return read_grammar(text).system(semiring, degree)
