"""Tokenizer for the intervention lever language (`.pol` files)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class TokenKind(Enum):
    NUMBER = "NUMBER"
    PERCENT_NUMBER = "PERCENT_NUMBER"
    IDENT = "IDENT"
    KEYWORD = "KEYWORD"
    SYMBOL = "SYMBOL"
    EOF = "EOF"


KEYWORDS = frozenset(
    {
        "var", "change", "by", "over", "to", "distribute", "across",
        "proportionally", "limit", "if", "else", "in", "out",
        "and", "or", "not",
        "abs", "min", "max", "floor", "ceil", "round", "lifecycle",
    }
)

BUILTINS = {"abs": 1, "min": 2, "max": 2, "floor": 1, "ceil": 1, "round": 1}

# Two-character symbols must be tried before their one-character prefixes.
_SYMBOLS2 = ("<=", ">=", "==", "!=")
_SYMBOLS1 = "=+-*/^<>?:;,.()[]{}"


@dataclass(frozen=True)
class SourceSpan:
    """Half-open [start, end) offset range, with 1-based line/column of start."""

    start: int
    end: int
    line: int
    column: int

    def merge(self, other: "SourceSpan") -> "SourceSpan":
        if other.start < self.start:
            first = other
        else:
            first = self
        return SourceSpan(
            start=min(self.start, other.start),
            end=max(self.end, other.end),
            line=first.line,
            column=first.column,
        )


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan = field(compare=False)
    value: float | None = None  # numeric tokens only; percents already / 100


class LexError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span.line}:{span.column}: {message}")
        self.message = message
        self.span = span


def _is_digit(ch: str) -> bool:
    return "0" <= ch <= "9"


def _is_ident_start(ch: str) -> bool:
    return "a" <= ch <= "z" or "A" <= ch <= "Z" or ch == "_"


def _is_ident_part(ch: str) -> bool:
    return _is_ident_start(ch) or _is_digit(ch)


def tokenize(source: str) -> list[Token]:
    """Scan source into tokens; skips whitespace and `#` comments.

    Raises LexError on any character outside the language alphabet. The
    returned list always ends with a single EOF token.
    """
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(source)

    def span_at(start: int, end: int, start_line: int, start_col: int) -> SourceSpan:
        return SourceSpan(start=start, end=end, line=start_line, column=start_col)

    while pos < n:
        ch = source[pos]
        if ch == "\n":
            pos += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if ch == "#":
            while pos < n and source[pos] != "\n":
                pos += 1
                col += 1
            continue

        start, start_line, start_col = pos, line, col

        if _is_digit(ch):
            while pos < n and _is_digit(source[pos]):
                pos += 1
            if pos < n and source[pos] == "." and pos + 1 < n and _is_digit(source[pos + 1]):
                pos += 1
                while pos < n and _is_digit(source[pos]):
                    pos += 1
            if pos < n and source[pos] == "%":
                pos += 1
                text = source[start:pos]
                kind = TokenKind.PERCENT_NUMBER
                value = float(text[:-1]) / 100.0
            else:
                text = source[start:pos]
                kind = TokenKind.NUMBER
                value = float(text)
            span = span_at(start, pos, start_line, start_col)
            if not math.isfinite(value):
                raise LexError("number literal too large", span)
            tokens.append(Token(kind=kind, text=text, span=span, value=value))
            col += pos - start
            continue

        if _is_ident_start(ch):
            while pos < n and _is_ident_part(source[pos]):
                pos += 1
            text = source[start:pos]
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENT
            tokens.append(
                Token(kind=kind, text=text, span=span_at(start, pos, start_line, start_col))
            )
            col += pos - start
            continue

        two = source[pos : pos + 2]
        if two in _SYMBOLS2:
            tokens.append(
                Token(
                    kind=TokenKind.SYMBOL,
                    text=two,
                    span=span_at(pos, pos + 2, start_line, start_col),
                )
            )
            pos += 2
            col += 2
            continue
        if ch in _SYMBOLS1:
            tokens.append(
                Token(
                    kind=TokenKind.SYMBOL,
                    text=ch,
                    span=span_at(pos, pos + 1, start_line, start_col),
                )
            )
            pos += 1
            col += 1
            continue

        raise LexError(
            f"unexpected character {ch!r}",
            span_at(pos, pos + 1, start_line, start_col),
        )

    tokens.append(
        Token(kind=TokenKind.EOF, text="", span=span_at(n, n, line, col))
    )
    return tokens
