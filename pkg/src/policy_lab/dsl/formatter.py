"""Canonical pretty-printer for lever scripts.

Deterministic output: 2-space indent, one statement per line, single spaces
around binary operators, minimal parentheses. Reparsing the output yields a
structurally equal AST, and formatting is byte-idempotent.
"""

from __future__ import annotations

from .nodes import (
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

# Binding strength per operator family; mirrors the parser's ladder.
_TERNARY = 1
_PREC = {
    "or": 2,
    "and": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4, "==": 4, "!=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6,
    "^": 7,
}
_UNARY = 8
_PRIMARY = 9


def _expr_prec(expr: Expr) -> int:
    if isinstance(expr, Ternary):
        return _TERNARY
    if isinstance(expr, Binary):
        return _PREC[expr.op]
    if isinstance(expr, Unary):
        return _UNARY
    return _PRIMARY


def format_expr(expr: Expr, min_prec: int = 0) -> str:
    text = _render(expr)
    if _expr_prec(expr) < min_prec:
        return f"({text})"
    return text


def _render(expr: Expr) -> str:
    if isinstance(expr, Number):
        return expr.text
    if isinstance(expr, LocalRef):
        return expr.name
    if isinstance(expr, AddressRef):
        return expr.address.dotted()
    if isinstance(expr, Binary):
        prec = _PREC[expr.op]
        if expr.op == "^":
            # right-associative: parenthesize an exponent-shaped lhs
            lhs = format_expr(expr.lhs, prec + 1)
            rhs = format_expr(expr.rhs, prec)
        else:
            lhs = format_expr(expr.lhs, prec)
            rhs = format_expr(expr.rhs, prec + 1)
        return f"{lhs} {expr.op} {rhs}"
    if isinstance(expr, Unary):
        operand = format_expr(expr.operand, _UNARY)
        if expr.op == "not":
            return f"not {operand}"
        return f"-{operand}"
    if isinstance(expr, Ternary):
        cond = format_expr(expr.cond, _TERNARY + 1)
        then = format_expr(expr.then, _TERNARY)
        otherwise = format_expr(expr.otherwise, _TERNARY)
        return f"{cond} ? {then} : {otherwise}"
    if isinstance(expr, Call):
        args = ", ".join(format_expr(a) for a in expr.args)
        return f"{expr.func}({args})"
    if isinstance(expr, Lifecycle):
        targets = ", ".join(t.dotted() for t in expr.targets)
        return f"lifecycle([{targets}])"
    raise TypeError(f"unhandled expression node {type(expr).__name__}")


def _format_stmt(stmt: Stmt, indent: int, out: list[str]):
    pad = "  " * indent
    if isinstance(stmt, VarDecl):
        out.append(f"{pad}var {stmt.name} = {format_expr(stmt.expr)};")
    elif isinstance(stmt, Assign):
        out.append(f"{pad}{stmt.address.dotted()} = {format_expr(stmt.expr)};")
    elif isinstance(stmt, Change):
        out.append(
            f"{pad}change {stmt.address.dotted()} by {format_expr(stmt.amount)} "
            f"over {format_expr(stmt.start_year)} to {format_expr(stmt.end_year)};"
        )
    elif isinstance(stmt, Distribute):
        targets = ", ".join(t.dotted() for t in stmt.targets)
        out.append(
            f"{pad}distribute {format_expr(stmt.amount)} across [{targets}] proportionally;"
        )
    elif isinstance(stmt, Limit):
        out.append(
            f"{pad}limit {stmt.address.dotted()} to "
            f"[{format_expr(stmt.lo)}, {format_expr(stmt.hi)}];"
        )
    elif isinstance(stmt, If):
        out.append(f"{pad}if {format_expr(stmt.cond)} {{")
        for inner in stmt.then_block:
            _format_stmt(inner, indent + 1, out)
        if stmt.else_block is None:
            out.append(f"{pad}}}")
        else:
            out.append(f"{pad}}} else {{")
            for inner in stmt.else_block:
                _format_stmt(inner, indent + 1, out)
            out.append(f"{pad}}}")
    else:
        raise TypeError(f"unhandled statement node {type(stmt).__name__}")


def format_program(program: Program) -> str:
    """Render the canonical text form; empty program formats to ""."""
    if not program.statements:
        return ""
    out: list[str] = []
    for stmt in program.statements:
        _format_stmt(stmt, 0, out)
    return "\n".join(out) + "\n"
