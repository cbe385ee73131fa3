"""Exact fixpoint solving for polynomial systems over omega-continuous semirings."""

from .differential import derivative, tangent, taylor_distance
from .errors import ContextError, DivergenceError, DomainError, ParseError
from .fixpoint import EquationSystem, SemiringMatrix, kleene_fixpoint, matrix_star, repetition, trace
from .newton import newton_solve
from .problems import parse_grammar, parse_system
from .semiring import BOOL, NAT, REAL, TROPICAL, VITERBI, get_semiring
from .series import Context, Series

__version__ = "0.1.0"

__all__ = [
    "BOOL",
    "NAT",
    "REAL",
    "TROPICAL",
    "VITERBI",
    "get_semiring",
    "Context",
    "Series",
    "derivative",
    "tangent",
    "taylor_distance",
    "EquationSystem",
    "SemiringMatrix",
    "kleene_fixpoint",
    "matrix_star",
    "repetition",
    "trace",
    "newton_solve",
    "parse_system",
    "parse_grammar",
    "ContextError",
    "DivergenceError",
    "DomainError",
    "ParseError",
]
