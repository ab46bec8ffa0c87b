"""Static validation of lever scripts against a vocabulary.

check() never raises for script problems; it collects every violation it can
find so an editor (or the prototype drawer) can show them all at once. A
script with zero violations is guaranteed not to hit unknown-address errors
at runtime, provided the same input-name set is bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..projection import GLOBAL_REGION, Vocabulary
from .lexer import SourceSpan
from .nodes import (
    Address,
    AddressRef,
    Assign,
    Binary,
    Call,
    Change,
    Distribute,
    Expr,
    If,
    Lifecycle,
    Limit,
    LocalRef,
    Number,
    Program,
    Stmt,
    Ternary,
    Unary,
    VarDecl,
)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    span: SourceSpan

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.code}: {self.message}"


class _Checker:
    def __init__(self, vocabulary: Vocabulary, inputs: set[str] | None):
        self.vocabulary = vocabulary
        self.inputs = inputs
        self.violations: list[Violation] = []
        self.declared: set[str] = set()  # every name ever declared (once-per-program)

    def report(self, code: str, message: str, span: SourceSpan):
        self.violations.append(Violation(code=code, message=message, span=span))

    # -- addresses -----------------------------------------------------------

    def check_read_address(self, address: Address):
        if address.namespace == "in":
            if self.inputs is not None and address.param not in self.inputs:
                self.report(
                    "UnknownInput",
                    f"no lever input named {address.param!r}",
                    address.span,
                )
            return
        region, attribute = address.region, address.attribute
        if region != GLOBAL_REGION and not self.vocabulary.has_region(region):
            self.report("UnknownRegion", f"unknown region {region!r}", address.span)
        if not self.vocabulary.has_attribute(attribute):
            self.report(
                "UnknownAttribute", f"unknown attribute {attribute!r}", address.span
            )

    def check_write_address(self, address: Address):
        if address.namespace == "in":
            self.report(
                "WriteToInput",
                f"lever inputs are read-only ({address.dotted()})",
                address.span,
            )
            return
        if address.region == GLOBAL_REGION:
            self.report(
                "ReadOnlyAddress",
                f"out.global.* is a computed aggregate and cannot be written "
                f"({address.dotted()})",
                address.span,
            )
            if not self.vocabulary.has_attribute(address.attribute):
                self.report(
                    "UnknownAttribute",
                    f"unknown attribute {address.attribute!r}",
                    address.span,
                )
            return
        self.check_read_address(address)

    # -- expressions -----------------------------------------------------------

    def check_expr(self, expr: Expr, visible: set[str]):
        if isinstance(expr, Number):
            return
        if isinstance(expr, LocalRef):
            if expr.name not in visible:
                self.report(
                    "UseBeforeDecl",
                    f"variable {expr.name!r} read before its 'var' declaration",
                    expr.span,
                )
            return
        if isinstance(expr, AddressRef):
            self.check_read_address(expr.address)
            return
        if isinstance(expr, Binary):
            self.check_expr(expr.lhs, visible)
            self.check_expr(expr.rhs, visible)
            return
        if isinstance(expr, Unary):
            self.check_expr(expr.operand, visible)
            return
        if isinstance(expr, Ternary):
            self.check_expr(expr.cond, visible)
            self.check_expr(expr.then, visible)
            self.check_expr(expr.otherwise, visible)
            return
        if isinstance(expr, Call):
            for arg in expr.args:
                self.check_expr(arg, visible)
            return
        if isinstance(expr, Lifecycle):
            for target in expr.targets:
                if target.namespace != "out":
                    self.report(
                        "NotAConsumptionSector",
                        f"lifecycle target must be an out.* address ({target.dotted()})",
                        target.span,
                    )
                    continue
                self.check_read_address(target)
                if self.vocabulary.has_attribute(target.attribute):
                    attr = self.vocabulary.attribute(target.attribute)
                    if attr.kind != "consumption-sector":
                        self.report(
                            "NotAConsumptionSector",
                            f"lifecycle target {target.dotted()} is {attr.kind}, "
                            f"not a consumption sector",
                            target.span,
                        )
            return
        raise TypeError(f"unhandled expression node {type(expr).__name__}")

    # -- statements --------------------------------------------------------------

    def check_block(self, statements: tuple[Stmt, ...], visible: set[str]):
        """Check a statement list; names declared here are visible only after
        their declaration and only within this block (and nested blocks)."""
        local_visible = set(visible)
        for stmt in statements:
            if isinstance(stmt, VarDecl):
                self.check_expr(stmt.expr, local_visible)
                if stmt.name in self.declared:
                    self.report(
                        "DuplicateDecl",
                        f"variable {stmt.name!r} already declared",
                        stmt.span,
                    )
                self.declared.add(stmt.name)
                local_visible.add(stmt.name)
            elif isinstance(stmt, Assign):
                self.check_write_address(stmt.address)
                self.check_expr(stmt.expr, local_visible)
            elif isinstance(stmt, Change):
                self.check_write_address(stmt.address)
                self.check_expr(stmt.amount, local_visible)
                self.check_expr(stmt.start_year, local_visible)
                self.check_expr(stmt.end_year, local_visible)
            elif isinstance(stmt, Distribute):
                self.check_expr(stmt.amount, local_visible)
                for target in stmt.targets:
                    self.check_write_address(target)
            elif isinstance(stmt, Limit):
                self.check_write_address(stmt.address)
                self.check_expr(stmt.lo, local_visible)
                self.check_expr(stmt.hi, local_visible)
            elif isinstance(stmt, If):
                self.check_expr(stmt.cond, local_visible)
                self.check_block(stmt.then_block, local_visible)
                if stmt.else_block is not None:
                    self.check_block(stmt.else_block, local_visible)
            else:
                raise TypeError(f"unhandled statement node {type(stmt).__name__}")


def check(
    program: Program,
    vocabulary: Vocabulary,
    inputs: set[str] | None = None,
) -> list[Violation]:
    """Return all static violations in the program (empty list = clean).

    `inputs` is the set of `in.*` parameter names the runtime will bind; pass
    None to accept any input reference (no lever context available).
    """
    checker = _Checker(vocabulary, inputs)
    checker.check_block(program.statements, set())
    return checker.violations
