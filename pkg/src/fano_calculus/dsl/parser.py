"""Lexer, recursive-descent parser and sort checker for expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '@' | '∘') unary)*      # a number may be
                                                       # followed directly
                                                       # by a factor
    unary   := '-' unary | postfix
    postfix := primary ('^' NAT | '^t' | 'ᵗ')*
    primary := NAT ['/' NAT] | SYMBOL | KIND '[' LABEL ']'
             | FUNC '(' expr (',' expr)* ')' | '(' expr ')'

Symbols: scalars ``a``; classes on F ``F g c Cx o``; classes on X ``X h x``;
correspondences ``D I Gh Gh2 Gphi I1 I2 FxO OxF FxF`` and the factors
``g1 g2 c1 c2``.  Indexed symbols ``S[l]``, ``pt[l]``, ``line[l]``.
Functions ``push pull Psi Phi deg tr phi^* phi_*``.  Unicode aliases:
``∘`` for ``@``, ``ᵗ`` for ``^t``, ``φ*``/``φ^*`` for ``phi^*``,
``φ_*`` for ``phi_*``, ``Δ`` for ``D``, ``𝔬`` for ``o``, ``·`` for ``*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..correspondence import ATOM_CODIM
from .nodes import BinOp, Call, Indexed, Neg, Num, Pow, Sym, Trans

__all__ = [
    "DSLError", "LexError", "ParseError", "GradingError", "UnknownAtom",
    "Sort", "parse", "check_sorts", "tokenize", "SYMBOL_SORTS", "FUNCTIONS",
]


class DSLError(ValueError):
    def __init__(self, message: str, span=None):
        self.span = span
        self.bare = message
        if span:
            message = f"{span[0]}:{span[1]}: {message}"
        super().__init__(message)


class LexError(DSLError):
    pass


class ParseError(DSLError):
    pass


class GradingError(DSLError):
    pass


class UnknownAtom(DSLError):
    pass


@dataclass(frozen=True)
class Sort:
    kind: str  # scalar | F | X | corr
    codim: int | None = None

    def __str__(self):
        return self.kind if self.codim is None else f"{self.kind}[codim {self.codim}]"


SYMBOL_SORTS: dict[str, Sort] = {"a": Sort("scalar")}
SYMBOL_SORTS.update({k: Sort("F", v) for k, v in {"F": 0, "g": 1, "c": 2, "Cx": 3, "o": 4}.items()})
SYMBOL_SORTS.update({k: Sort("X", v) for k, v in {"X": 0, "h": 1, "x": 4}.items()})
SYMBOL_SORTS.update({k: Sort("corr", v) for k, v in ATOM_CODIM.items()})
SYMBOL_SORTS.update({k: Sort("corr", v) for k, v in {"g1": 1, "g2": 1, "c1": 2, "c2": 2}.items()})

INDEXED_SORTS = {"S": Sort("F", 2), "pt": Sort("F", 4), "line": Sort("X", 3)}

FUNCTIONS = {"push": 2, "pull": 2, "Psi": 1, "Phi": 1, "deg": 1, "tr": 1, "phi^*": 1, "phi_*": 1}

_ALIASES = {"Δ": "D", "𝔬": "o"}

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<phiop>(?:phi|φ)(?:\^\*|_\*|\*|_))
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*|Δ|𝔬)
  | (?P<op>[-+*/^(),@\[\]]|∘|ᵗ|·)
""", re.VERBOSE)

_LABEL_RE = re.compile(r"[A-Za-z0-9_']+")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int

    @property
    def span(self):
        return (self.line, self.col)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise LexError(f"unexpected character {text[pos]!r}", (line, col))
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "phiop":
            canon = "phi_*" if "_" in tok else "phi^*"
            tokens.append(Token("phiop", canon, line, col))
        elif kind == "ident":
            tokens.append(Token("ident", _ALIASES.get(tok, tok), line, col))
        elif kind == "op":
            tok = {"∘": "@", "·": "*"}.get(tok, tok)
            tokens.append(Token("op", tok, line, col))
        elif kind == "num":
            tokens.append(Token("num", tok, line, col))
        pos = m.end()
        # labels inside brackets are read raw
        if kind == "op" and tok == "[":
            close = text.find("]", pos)
            if close < 0:
                raise LexError("unterminated '['", (line, col))
            raw = text[pos:close].strip()
            if not _LABEL_RE.fullmatch(raw):
                raise LexError(f"bad label {raw!r}", (line, pos - line_start + 1))
            tokens.append(Token("label", raw, line, pos - line_start + 1))
            pos = close
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, *ops) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text in ops

    def expect_op(self, op: str) -> Token:
        t = self.peek()
        if not (t.kind == "op" and t.text == op):
            found = t.text or "end of input"
            raise ParseError(f"expected '{op}', found {found!r}", t.span)
        return self.advance()

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", self.peek().span)
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.span)
        return node

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), op.span)
        return node

    def _starts_primary(self) -> bool:
        t = self.peek()
        return t.kind in ("ident", "phiop") or (t.kind == "op" and t.text == "(")

    def term(self):
        node = self.unary()
        while True:
            if self.at_op("*", "@"):
                op = self.advance()
                node = BinOp(op.text, node, self.unary(), op.span)
            elif self.at_op("/"):
                raise ParseError("'/' is only allowed between integer literals", self.peek().span)
            elif isinstance(node, Num) and self._starts_primary():
                node = BinOp("*", node, self.unary(), self.peek().span)
            elif (isinstance(node, BinOp) and node.op == "*" and isinstance(node.right, Num)
                  and self._starts_primary()):
                node = BinOp("*", node, self.unary(), self.peek().span)
            else:
                return node

    def unary(self):
        if self.at_op("-"):
            t = self.advance()
            return Neg(self.unary(), t.span)
        return self.postfix()

    def postfix(self):
        node = self.primary()
        while True:
            if self.at_op("ᵗ"):
                t = self.advance()
                node = Trans(node, t.span)
            elif self.at_op("^"):
                t = self.advance()
                nxt = self.peek()
                if nxt.kind == "num":
                    self.advance()
                    node = Pow(node, int(nxt.text), t.span)
                elif nxt.kind == "ident" and nxt.text == "t":
                    self.advance()
                    node = Trans(node, t.span)
                else:
                    raise ParseError("expected a natural number or 't' after '^'", nxt.span)
            else:
                return node

    def primary(self):
        t = self.peek()
        if t.kind == "num":
            self.advance()
            value = Fraction(int(t.text))
            if self.at_op("/"):
                self.advance()
                d = self.peek()
                if d.kind != "num":
                    raise ParseError("'/' is only allowed between integer literals", d.span)
                self.advance()
                if int(d.text) == 0:
                    raise ParseError("division by zero", d.span)
                value = value / int(d.text)
            return Num(value, t.span)
        if t.kind == "phiop":
            self.advance()
            return self.call(t.text, t)
        if t.kind == "ident":
            self.advance()
            if t.text in FUNCTIONS and self.at_op("("):
                return self.call(t.text, t)
            if t.text in INDEXED_SORTS and self.at_op("["):
                self.advance()
                lab = self.advance()
                if lab.kind != "label":
                    raise ParseError("expected a label", lab.span)
                self.expect_op("]")
                return Indexed(t.text, lab.text, t.span)
            if t.text in FUNCTIONS:
                raise ParseError(f"function {t.text} needs arguments", t.span)
            if t.text in INDEXED_SORTS:
                raise ParseError(f"{t.text} needs a label, e.g. {t.text}[l]", t.span)
            if t.text not in SYMBOL_SORTS:
                raise UnknownAtom(f"unknown atom {t.text!r}", t.span)
            return Sym(t.text, t.span)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", t.span)

    def call(self, name: str, tok: Token):
        self.expect_op("(")
        args = [self.expr()]
        while self.at_op(","):
            self.advance()
            args.append(self.expr())
        self.expect_op(")")
        if len(args) != FUNCTIONS[name]:
            raise ParseError(f"{name} takes {FUNCTIONS[name]} argument(s), got {len(args)}", tok.span)
        if name == "tr":
            return Trans(args[0], tok.span)
        return Call(name, tuple(args), tok.span)


def check_sorts(node) -> Sort:
    """Infer the sort of a tree, raising ``GradingError`` on violations."""
    if isinstance(node, Num):
        return Sort("scalar")
    if isinstance(node, Sym):
        if node.name not in SYMBOL_SORTS:
            raise UnknownAtom(f"unknown atom {node.name!r}", node.span)
        return SYMBOL_SORTS[node.name]
    if isinstance(node, Indexed):
        return INDEXED_SORTS[node.kind]
    if isinstance(node, Neg):
        return check_sorts(node.operand)
    if isinstance(node, Pow):
        s = check_sorts(node.base)
        return s if s.codim is None else Sort(s.kind, s.codim * node.exponent)
    if isinstance(node, Trans):
        s = check_sorts(node.operand)
        if s.kind != "corr":
            raise GradingError(f"transpose needs a correspondence, got {s}", node.span)
        return s
    if isinstance(node, BinOp):
        l, r = check_sorts(node.left), check_sorts(node.right)
        if node.op in "+-":
            if l.kind == "scalar" and r.kind == "scalar":
                return l
            if "scalar" in (l.kind, r.kind):
                other = r if l.kind == "scalar" else l
                if other.kind in ("F", "X") and other.codim == 0:
                    return other
                raise GradingError(f"cannot add a scalar to {other}", node.span)
            if l.kind != r.kind:
                raise GradingError(f"cannot add {l} and {r}", node.span)
            if l.codim != r.codim:
                raise GradingError(f"mixed codimensions {l.codim} and {r.codim} in a sum", node.span)
            return l
        if node.op == "*":
            if l.kind == "scalar":
                return r
            if r.kind == "scalar":
                return l
            if l.kind != r.kind:
                raise GradingError(f"cannot multiply {l} by {r}", node.span)
            return Sort(l.kind, l.codim + r.codim)
        if node.op == "@":
            if l.kind != "corr" or r.kind != "corr":
                raise GradingError(f"composition needs correspondences, got {l} and {r}", node.span)
            return Sort("corr", l.codim + r.codim - 4)
    if isinstance(node, Call):
        sorts = [check_sorts(a) for a in node.args]
        f = node.func
        if f in ("push", "pull"):
            c, u = sorts
            if c.kind != "corr" or u.kind != "F":
                raise GradingError(f"{f} needs (correspondence, class on F), got ({c}, {u})", node.span)
            return Sort("F", u.codim + c.codim - 4)
        if f in ("phi^*", "phi_*"):
            (u,) = sorts
            if u.kind != "F":
                raise GradingError(f"{f} needs a class on F, got {u}", node.span)
            return u
        if f == "Psi":
            (u,) = sorts
            if u.kind != "F":
                raise GradingError(f"Psi needs a class on F, got {u}", node.span)
            return Sort("X", u.codim - 1)
        if f == "Phi":
            (u,) = sorts
            if u.kind != "X":
                raise GradingError(f"Phi needs a class on X, got {u}", node.span)
            return Sort("F", u.codim - 1)
        if f == "deg":
            (u,) = sorts
            if u.kind not in ("F", "X"):
                raise GradingError(f"deg needs a cycle class, got {u}", node.span)
            return Sort("scalar")
    raise TypeError(f"not an expression node: {node!r}")


def parse(text: str, check: bool = True):
    """Parse ``text``; with ``check`` the tree is also sort-checked."""
    node = _Parser(text).parse()
    if check:
        check_sorts(node)
    return node
