"""Lever-script language frontend: lexer, parser, static checker, formatter."""

from .checker import Violation, check
from .formatter import format_expr, format_program
from .lexer import BUILTINS, KEYWORDS, LexError, SourceSpan, Token, TokenKind, tokenize
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
from .parser import ParseError, parse_program, parse_tokens

__all__ = [
    "Address", "AddressRef", "Assign", "Binary", "BUILTINS", "Call", "Change",
    "Distribute", "Expr", "If", "KEYWORDS", "LexError", "Lifecycle", "Limit",
    "LocalRef", "Number", "ParseError", "Program", "SourceSpan", "Stmt",
    "Ternary", "Token", "TokenKind", "Unary", "VarDecl", "Violation",
    "check", "format_expr", "format_program", "parse_program", "parse_tokens",
    "tokenize",
]
