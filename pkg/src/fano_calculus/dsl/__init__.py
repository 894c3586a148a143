"""Expression language: parser, printer and evaluator."""

from .evaluate import EvaluationError, evaluate, evaluate_text, format_value
from .nodes import BinOp, Call, Indexed, Neg, Num, Pow, Sym, Trans
from .parser import (
    DSLError, GradingError, LexError, ParseError, Sort, UnknownAtom, check_sorts, parse, tokenize,
)
from .printer import to_text
