"""AST node types for lever scripts.

All nodes are frozen dataclasses carrying a SourceSpan. Spans are excluded
from equality, so two parses of differently-formatted but structurally equal
source compare equal (the round-trip property the formatter relies on).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import SourceSpan

BINARY_OPS = ("or", "and", "<", "<=", ">", ">=", "==", "!=", "+", "-", "*", "/", "^")
UNARY_OPS = ("-", "not")


@dataclass(frozen=True)
class Address:
    """A state address: `in.<param>` or `out.<region>.<attribute>`."""

    namespace: str  # "in" | "out"
    segments: tuple[str, ...]
    span: SourceSpan = field(compare=False)

    @property
    def region(self) -> str:
        assert self.namespace == "out"
        return self.segments[0]

    @property
    def attribute(self) -> str:
        assert self.namespace == "out"
        return self.segments[1]

    @property
    def param(self) -> str:
        assert self.namespace == "in"
        return self.segments[0]

    def dotted(self) -> str:
        return ".".join((self.namespace, *self.segments))


class Expr:
    """Base class for expression nodes."""

    span: SourceSpan


class Stmt:
    """Base class for statement nodes."""

    span: SourceSpan


@dataclass(frozen=True)
class Number(Expr):
    value: float
    text: str  # source lexeme, re-emitted verbatim by the formatter
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class AddressRef(Expr):
    address: Address
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class LocalRef(Expr):
    name: str
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    operand: Expr
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Ternary(Expr):
    cond: Expr
    then: Expr
    otherwise: Expr
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Call(Expr):
    func: str  # abs | min | max | floor | ceil | round
    args: tuple[Expr, ...]
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Lifecycle(Expr):
    targets: tuple[Address, ...]
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class VarDecl(Stmt):
    name: str
    expr: Expr
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Assign(Stmt):
    address: Address
    expr: Expr
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Change(Stmt):
    address: Address
    amount: Expr
    start_year: Expr
    end_year: Expr
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Distribute(Stmt):
    amount: Expr
    targets: tuple[Address, ...]
    span: SourceSpan = field(compare=False)
    mode: str = "proportional"


@dataclass(frozen=True)
class Limit(Stmt):
    address: Address
    lo: Expr
    hi: Expr
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then_block: tuple[Stmt, ...]
    else_block: tuple[Stmt, ...] | None
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Program:
    statements: tuple[Stmt, ...]
    source_name: str = field(default="<script>", compare=False)
