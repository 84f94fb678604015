"""Expression trees denoting interval-valued functions of real variables.

Nodes cover interval constants, real variables, the Moore operators, the
gH-difference, abs/pow on real-valued subexpressions, the Euclidean norm of
the argument vector, and guarded piecewise definitions.  Evaluation is
vectorized: every node maps an (N, n) array of points to a pair of (N,)
endpoint arrays.

Text grammar (whitespace insignificant)::

    expr   := term (("+" | "-" | "ghsub") term)*
    term   := factor (("*" | "/") factor)*
    factor := interval | number | var | "abs" "(" expr ")"
            | "pow" INT "(" expr ")" | "(" expr ")"
    interval := "[" number "," number "]"
    var      := "x" INT                      (1-based)
    piecewise := "piecewise" "{" (guard "=>" expr ";")+ "}"
    guard     := comparison ("and" comparison)*
    comparison := var ("<=" | ">=") number

Bare numbers parse as degenerate intervals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import (
    NonDegenerateRealNode,
    OverlappingPieces,
    ParseError,
    PiecewiseCoverageError,
    ZeroInDenominator,
)
from .interval import Interval

# --------------------------------------------------------------------------
# Node types
# --------------------------------------------------------------------------


class Expr:
    """Base class for expression-tree nodes."""

    def arity_floor(self) -> int:
        """Smallest arity this expression is compatible with."""
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: Interval

    def arity_floor(self) -> int:
        return 0


@dataclass(frozen=True)
class Var(Expr):
    index: int  # 0-based

    def arity_floor(self) -> int:
        return self.index + 1


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # one of "+", "-", "ghsub", "*", "/"
    left: Expr
    right: Expr

    def arity_floor(self) -> int:
        return max(self.left.arity_floor(), self.right.arity_floor())


@dataclass(frozen=True)
class Abs(Expr):
    child: Expr

    def arity_floor(self) -> int:
        return self.child.arity_floor()


@dataclass(frozen=True)
class Pow(Expr):
    exponent: int
    child: Expr

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("pow exponent must be a positive integer")

    def arity_floor(self) -> int:
        return self.child.arity_floor()


@dataclass(frozen=True)
class Norm(Expr):
    """Euclidean norm of the full argument vector (a degenerate value)."""

    def arity_floor(self) -> int:
        return 0


@dataclass(frozen=True)
class Comparison:
    var_index: int  # 0-based
    op: str  # "<=" or ">="
    bound: float

    def holds(self, xs: np.ndarray) -> np.ndarray:
        col = xs[:, self.var_index]
        return col <= self.bound if self.op == "<=" else col >= self.bound


@dataclass(frozen=True)
class Guard:
    comparisons: Tuple[Comparison, ...]

    def holds(self, xs: np.ndarray) -> np.ndarray:
        mask = np.ones(xs.shape[0], dtype=bool)
        for comp in self.comparisons:
            mask &= comp.holds(xs)
        return mask


@dataclass(frozen=True)
class Piecewise(Expr):
    pieces: Tuple[Tuple[Guard, Expr], ...]

    def arity_floor(self) -> int:
        floor = 0
        for guard, body in self.pieces:
            floor = max(floor, body.arity_floor())
            for comp in guard.comparisons:
                floor = max(floor, comp.var_index + 1)
        return floor


# --------------------------------------------------------------------------
# Vectorized evaluation
# --------------------------------------------------------------------------

_PIECE_AGREEMENT_TOL = 1e-12


def eval_lo_hi(node: Expr, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate an expression at every row of xs, returning (lo, hi) arrays."""
    n_pts = xs.shape[0]
    if isinstance(node, Const):
        return (np.full(n_pts, node.value.lo), np.full(n_pts, node.value.hi))
    if isinstance(node, Var):
        col = np.asarray(xs[:, node.index], dtype=float)
        return col.copy(), col.copy()
    if isinstance(node, BinOp):
        llo, lhi = eval_lo_hi(node.left, xs)
        rlo, rhi = eval_lo_hi(node.right, xs)
        if node.op == "+":
            return llo + rlo, lhi + rhi
        if node.op == "-":
            return llo - rhi, lhi - rlo
        if node.op == "ghsub":
            dlo = llo - rlo
            dhi = lhi - rhi
            return np.minimum(dlo, dhi), np.maximum(dlo, dhi)
        if node.op == "*":
            prods = np.stack([llo * rlo, llo * rhi, lhi * rlo, lhi * rhi])
            return prods.min(axis=0), prods.max(axis=0)
        if node.op == "/":
            if np.any((rlo <= 0.0) & (rhi >= 0.0)):
                bad = int(np.argmax((rlo <= 0.0) & (rhi >= 0.0)))
                raise ZeroInDenominator(
                    f"denominator contains 0 at point {xs[bad].tolist()}"
                )
            quots = np.stack([llo / rlo, llo / rhi, lhi / rlo, lhi / rhi])
            return quots.min(axis=0), quots.max(axis=0)
        raise ValueError(f"unknown operator {node.op!r}")  # pragma: no cover
    if isinstance(node, Abs):
        lo, hi = _degenerate_child(node.child, xs, "abs")
        v = np.abs(lo)
        return v, v.copy()
    if isinstance(node, Pow):
        lo, hi = _degenerate_child(node.child, xs, f"pow{node.exponent}")
        v = lo ** node.exponent
        return v, v.copy()
    if isinstance(node, Norm):
        v = np.sqrt(np.sum(xs * xs, axis=1))
        return v, v.copy()
    if isinstance(node, Piecewise):
        return _eval_piecewise(node, xs)
    raise TypeError(f"not an expression node: {node!r}")  # pragma: no cover


def _degenerate_child(child: Expr, xs: np.ndarray, op_name: str):
    lo, hi = eval_lo_hi(child, xs)
    if np.any(lo != hi):
        bad = int(np.argmax(lo != hi))
        raise NonDegenerateRealNode(
            f"{op_name} needs a real-valued argument, got "
            f"[{lo[bad]}, {hi[bad]}] at point {xs[bad].tolist()}"
        )
    return lo, hi


def _eval_piecewise(node: Piecewise, xs: np.ndarray):
    n_pts = xs.shape[0]
    out_lo = np.full(n_pts, np.nan)
    out_hi = np.full(n_pts, np.nan)
    covered = np.zeros(n_pts, dtype=bool)
    for guard, body in node.pieces:
        mask = guard.holds(xs)
        if not mask.any():
            continue
        lo, hi = eval_lo_hi(body, xs[mask])
        overlap = covered[mask]
        if overlap.any():
            # Closed guards meet at shared boundaries; that is only legal
            # when both pieces agree there, otherwise the pieces fail to
            # partition the domain.
            if (np.max(np.abs(lo[overlap] - out_lo[mask][overlap])) > _PIECE_AGREEMENT_TOL
                    or np.max(np.abs(hi[overlap] - out_hi[mask][overlap])) > _PIECE_AGREEMENT_TOL):
                where = xs[mask][overlap][0]
                raise OverlappingPieces(
                    f"guards overlap with different values at {where.tolist()}"
                )
        tmp_lo = out_lo[mask]
        tmp_hi = out_hi[mask]
        fresh = ~overlap
        tmp_lo[fresh] = lo[fresh]
        tmp_hi[fresh] = hi[fresh]
        out_lo[mask] = tmp_lo
        out_hi[mask] = tmp_hi
        covered |= mask
    if not covered.all():
        where = xs[~covered][0]
        raise PiecewiseCoverageError(f"no guard covers point {where.tolist()}")
    return out_lo, out_hi


# --------------------------------------------------------------------------
# Tokenizer / parser
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
    |(?P<ident>[A-Za-z_]+\d*)
    |(?P<symbol><=|>=|=>|[+\-*/()\[\]{},;])
    |(?P<ws>\s+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "ident", "symbol", "end"
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    line, col = 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("end", "", line, col))
    return tokens


_VAR_RE = re.compile(r"x(\d+)$")
_POW_RE = re.compile(r"pow(\d+)$")


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, got {tok.text!r}", tok.line, tok.col)
        return tok

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    # grammar entry: piecewise or plain expression
    def parse_top(self) -> Expr:
        if self.peek().text == "piecewise":
            node = self.parse_piecewise()
        else:
            node = self.parse_expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
        return node

    def parse_piecewise(self) -> Piecewise:
        self.expect("piecewise")
        self.expect("{")
        pieces = []
        while self.peek().text != "}":
            guard = self.parse_guard()
            self.expect("=>")
            body = self.parse_expr()
            self.expect(";")
            pieces.append((guard, body))
        self.expect("}")
        if not pieces:
            self.fail("piecewise needs at least one piece")
        return Piecewise(tuple(pieces))

    def parse_guard(self) -> Guard:
        comps = [self.parse_comparison()]
        while self.peek().text == "and":
            self.next()
            comps.append(self.parse_comparison())
        return Guard(tuple(comps))

    def parse_comparison(self) -> Comparison:
        tok = self.next()
        m = _VAR_RE.fullmatch(tok.text) if tok.kind == "ident" else None
        if m is None:
            raise ParseError(f"guard must start with a variable, got {tok.text!r}",
                             tok.line, tok.col)
        idx = int(m.group(1)) - 1
        if idx < 0:
            raise ParseError("variables are 1-based", tok.line, tok.col)
        op = self.next()
        if op.text not in ("<=", ">="):
            raise ParseError(f"expected <= or >=, got {op.text!r}", op.line, op.col)
        return Comparison(idx, op.text, self.parse_signed_number())

    def parse_signed_number(self) -> float:
        sign = 1.0
        if self.peek().text == "-":
            self.next()
            sign = -1.0
        tok = self.next()
        if tok.kind != "number":
            raise ParseError(f"expected a number, got {tok.text!r}", tok.line, tok.col)
        return sign * float(tok.text)

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.peek().text in ("+", "-", "ghsub"):
            op = self.next().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            node = BinOp(op, node, self.parse_factor())
        return node

    def parse_factor(self) -> Expr:
        tok = self.peek()
        if tok.text == "[":
            return self.parse_interval()
        if tok.text == "(":
            self.next()
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.text == "-" or tok.kind == "number":
            return Const(Interval.point(self.parse_signed_number()))
        if tok.kind == "ident":
            m = _VAR_RE.fullmatch(tok.text)
            if m is not None:
                self.next()
                idx = int(m.group(1)) - 1
                if idx < 0:
                    raise ParseError("variables are 1-based", tok.line, tok.col)
                return Var(idx)
            if tok.text == "abs":
                self.next()
                self.expect("(")
                node = self.parse_expr()
                self.expect(")")
                return Abs(node)
            m = _POW_RE.fullmatch(tok.text)
            if m is not None:
                self.next()
                self.expect("(")
                node = self.parse_expr()
                self.expect(")")
                exponent = int(m.group(1))
                if exponent < 1:
                    raise ParseError("pow exponent must be >= 1", tok.line, tok.col)
                return Pow(exponent, node)
            if tok.text == "norm":
                # extension beyond the published grammar, used for
                # constant-times-norm functions
                self.next()
                self.expect("(")
                self.expect(")")
                return Norm()
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)

    def parse_interval(self) -> Const:
        self.expect("[")
        lo = self.parse_signed_number()
        self.expect(",")
        hi = self.parse_signed_number()
        self.expect("]")
        return Const(Interval(lo, hi))


def parse_expr(text: str) -> Expr:
    """Parse expression text (optionally a piecewise block) into a tree."""
    return _Parser(tokenize(text)).parse_top()
