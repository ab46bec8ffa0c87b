"""Recursive-descent parser for lever scripts.

Grammar (statements end with `;`, blocks use `{}`, comments use `#`):

    program    = { statement } ;
    statement  = varDecl | assign | change | distribute | limit | ifStmt ;
    varDecl    = "var" IDENT "=" expr ";" ;
    assign     = address "=" expr ";" ;
    change     = "change" address "by" expr "over" expr "to" expr ";" ;
    distribute = "distribute" expr "across" "[" address { "," address } "]"
                 [ "proportionally" ] ";" ;
    limit      = "limit" address "to" "[" expr "," expr "]" ";" ;
    ifStmt     = "if" expr "{" { statement } "}" [ "else" "{" { statement } "}" ] ;
    address    = ("in" | "out") "." IDENT { "." IDENT } ;

Expression precedence, loosest first: ternary `?:`, `or`, `and`, comparisons,
`+ -`, `* /`, `^` (right-assoc), unary `- not`, primary. Binary operators are
left-associative except `^`. First error wins; there is no recovery.
"""

from __future__ import annotations

import dataclasses

from .lexer import BUILTINS, SourceSpan, Token, TokenKind, tokenize
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

_COMPARISON_OPS = ("<=", ">=", "==", "!=", "<", ">")


class ParseError(Exception):
    def __init__(self, span: SourceSpan, expected: str, found: str):
        super().__init__(f"{span.line}:{span.column}: expected {expected}, found {found}")
        self.span = span
        self.expected = expected
        self.found = found


class _Parser:
    def __init__(self, tokens: list[Token], source_name: str):
        self.tokens = tokens
        self.pos = 0
        self.source_name = source_name

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind is not TokenKind.EOF:
            self.pos += 1
        return token

    def at_symbol(self, text: str) -> bool:
        t = self.peek()
        return t.kind is TokenKind.SYMBOL and t.text == text

    def at_keyword(self, text: str) -> bool:
        t = self.peek()
        return t.kind is TokenKind.KEYWORD and t.text == text

    def _describe(self, token: Token) -> str:
        if token.kind is TokenKind.EOF:
            return "end of input"
        return repr(token.text)

    def fail(self, expected: str) -> ParseError:
        token = self.peek()
        return ParseError(token.span, expected, self._describe(token))

    def expect_symbol(self, text: str) -> Token:
        if not self.at_symbol(text):
            raise self.fail(f"'{text}'")
        return self.advance()

    def expect_keyword(self, text: str) -> Token:
        if not self.at_keyword(text):
            raise self.fail(f"'{text}'")
        return self.advance()

    def expect_ident(self) -> Token:
        t = self.peek()
        if t.kind is not TokenKind.IDENT:
            raise self.fail("identifier")
        return self.advance()

    # -- statements --------------------------------------------------------

    def program(self) -> Program:
        statements = []
        while self.peek().kind is not TokenKind.EOF:
            statements.append(self.statement())
        return Program(statements=tuple(statements), source_name=self.source_name)

    def statement(self) -> Stmt:
        t = self.peek()
        if t.kind is TokenKind.KEYWORD:
            if t.text == "var":
                return self.var_decl()
            if t.text == "change":
                return self.change()
            if t.text == "distribute":
                return self.distribute()
            if t.text == "limit":
                return self.limit()
            if t.text == "if":
                return self.if_stmt()
            if t.text in ("in", "out"):
                return self.assign()
        raise self.fail("statement ('var', 'change', 'distribute', 'limit', 'if' or an address)")

    def var_decl(self) -> VarDecl:
        start = self.expect_keyword("var")
        name = self.expect_ident()
        self.expect_symbol("=")
        expr = self.expression()
        end = self.expect_symbol(";")
        return VarDecl(name=name.text, expr=expr, span=start.span.merge(end.span))

    def assign(self) -> Assign:
        address = self.address()
        self.expect_symbol("=")
        expr = self.expression()
        end = self.expect_symbol(";")
        return Assign(address=address, expr=expr, span=address.span.merge(end.span))

    def change(self) -> Change:
        start = self.expect_keyword("change")
        address = self.address()
        self.expect_keyword("by")
        amount = self.expression()
        self.expect_keyword("over")
        start_year = self.expression()
        self.expect_keyword("to")
        end_year = self.expression()
        end = self.expect_symbol(";")
        return Change(
            address=address,
            amount=amount,
            start_year=start_year,
            end_year=end_year,
            span=start.span.merge(end.span),
        )

    def distribute(self) -> Distribute:
        start = self.expect_keyword("distribute")
        amount = self.expression()
        self.expect_keyword("across")
        targets = self.address_list()
        if self.at_keyword("proportionally"):
            self.advance()
        end = self.expect_symbol(";")
        return Distribute(
            amount=amount, targets=targets, span=start.span.merge(end.span)
        )

    def limit(self) -> Limit:
        start = self.expect_keyword("limit")
        address = self.address()
        self.expect_keyword("to")
        self.expect_symbol("[")
        lo = self.expression()
        self.expect_symbol(",")
        hi = self.expression()
        self.expect_symbol("]")
        end = self.expect_symbol(";")
        return Limit(address=address, lo=lo, hi=hi, span=start.span.merge(end.span))

    def if_stmt(self) -> If:
        start = self.expect_keyword("if")
        cond = self.expression()
        then_block, then_end = self.block()
        else_block = None
        end_span = then_end
        if self.at_keyword("else"):
            self.advance()
            else_block, end_span = self.block()
        return If(
            cond=cond,
            then_block=then_block,
            else_block=else_block,
            span=start.span.merge(end_span),
        )

    def block(self) -> tuple[tuple[Stmt, ...], SourceSpan]:
        self.expect_symbol("{")
        statements = []
        while not self.at_symbol("}"):
            if self.peek().kind is TokenKind.EOF:
                raise self.fail("'}'")
            statements.append(self.statement())
        close = self.expect_symbol("}")
        return tuple(statements), close.span

    def address(self) -> Address:
        if not (self.at_keyword("in") or self.at_keyword("out")):
            raise self.fail("address ('in' or 'out')")
        namespace = self.advance()
        segments = []
        self.expect_symbol(".")
        segments.append(self.expect_ident())
        while self.at_symbol("."):
            self.advance()
            segments.append(self.expect_ident())
        span = namespace.span.merge(segments[-1].span)
        if namespace.text == "in" and len(segments) != 1:
            raise ParseError(span, "one segment after 'in.'", f"{len(segments)} segments")
        if namespace.text == "out" and len(segments) != 2:
            raise ParseError(
                span, "'out.<region>.<attribute>'", f"{len(segments)} segments"
            )
        return Address(
            namespace=namespace.text,
            segments=tuple(s.text for s in segments),
            span=span,
        )

    def address_list(self) -> tuple[Address, ...]:
        self.expect_symbol("[")
        targets = [self.address()]
        while self.at_symbol(","):
            self.advance()
            targets.append(self.address())
        self.expect_symbol("]")
        seen = set()
        for target in targets:
            key = (target.namespace, target.segments)
            if key in seen:
                raise ParseError(
                    target.span, "distinct addresses", f"duplicate {target.dotted()!r}"
                )
            seen.add(key)
        return tuple(targets)

    # -- expressions ---------------------------------------------------------

    def expression(self) -> Expr:
        return self.ternary()

    def ternary(self) -> Expr:
        cond = self.or_expr()
        if self.at_symbol("?"):
            self.advance()
            then = self.ternary()
            self.expect_symbol(":")
            otherwise = self.ternary()
            return Ternary(
                cond=cond,
                then=then,
                otherwise=otherwise,
                span=cond.span.merge(otherwise.span),
            )
        return cond

    def or_expr(self) -> Expr:
        node = self.and_expr()
        while self.at_keyword("or"):
            self.advance()
            rhs = self.and_expr()
            node = Binary(op="or", lhs=node, rhs=rhs, span=node.span.merge(rhs.span))
        return node

    def and_expr(self) -> Expr:
        node = self.comparison()
        while self.at_keyword("and"):
            self.advance()
            rhs = self.comparison()
            node = Binary(op="and", lhs=node, rhs=rhs, span=node.span.merge(rhs.span))
        return node

    def comparison(self) -> Expr:
        node = self.additive()
        while self.peek().kind is TokenKind.SYMBOL and self.peek().text in _COMPARISON_OPS:
            op = self.advance().text
            rhs = self.additive()
            node = Binary(op=op, lhs=node, rhs=rhs, span=node.span.merge(rhs.span))
        return node

    def additive(self) -> Expr:
        node = self.multiplicative()
        while self.at_symbol("+") or self.at_symbol("-"):
            op = self.advance().text
            rhs = self.multiplicative()
            node = Binary(op=op, lhs=node, rhs=rhs, span=node.span.merge(rhs.span))
        return node

    def multiplicative(self) -> Expr:
        node = self.power()
        while self.at_symbol("*") or self.at_symbol("/"):
            op = self.advance().text
            rhs = self.power()
            node = Binary(op=op, lhs=node, rhs=rhs, span=node.span.merge(rhs.span))
        return node

    def power(self) -> Expr:
        base = self.unary()
        if self.at_symbol("^"):
            self.advance()
            exponent = self.power()  # right-associative
            return Binary(op="^", lhs=base, rhs=exponent, span=base.span.merge(exponent.span))
        return base

    def unary(self) -> Expr:
        if self.at_symbol("-") or self.at_keyword("not"):
            op = self.advance()
            operand = self.unary()
            return Unary(op=op.text, operand=operand, span=op.span.merge(operand.span))
        return self.primary()

    def primary(self) -> Expr:
        t = self.peek()
        if t.kind in (TokenKind.NUMBER, TokenKind.PERCENT_NUMBER):
            self.advance()
            assert t.value is not None
            return Number(value=t.value, text=t.text, span=t.span)
        if t.kind is TokenKind.IDENT:
            self.advance()
            return LocalRef(name=t.text, span=t.span)
        if self.at_symbol("("):
            open_paren = self.advance()
            inner = self.expression()
            close = self.expect_symbol(")")
            # widen the span so it covers the parens it came from
            return dataclasses.replace(inner, span=open_paren.span.merge(close.span))
        if t.kind is TokenKind.KEYWORD:
            if t.text in ("in", "out"):
                address = self.address()
                return AddressRef(address=address, span=address.span)
            if t.text in BUILTINS:
                return self.call()
            if t.text == "lifecycle":
                return self.lifecycle()
        raise self.fail("expression")

    def call(self) -> Call:
        name = self.advance()
        arity = BUILTINS[name.text]
        self.expect_symbol("(")
        args = [self.expression()]
        while self.at_symbol(","):
            self.advance()
            args.append(self.expression())
        close = self.expect_symbol(")")
        if len(args) != arity:
            raise ParseError(
                name.span.merge(close.span),
                f"{arity} argument(s) to {name.text}",
                f"{len(args)}",
            )
        return Call(func=name.text, args=tuple(args), span=name.span.merge(close.span))

    def lifecycle(self) -> Lifecycle:
        name = self.expect_keyword("lifecycle")
        self.expect_symbol("(")
        targets = self.address_list()
        close = self.expect_symbol(")")
        return Lifecycle(targets=targets, span=name.span.merge(close.span))


def parse_tokens(tokens: list[Token], source_name: str = "<script>") -> Program:
    parser = _Parser(tokens, source_name)
    program = parser.program()
    return program


def parse_program(source: str, source_name: str = "<script>") -> Program:
    """Tokenize and parse; raises LexError or ParseError on the first problem."""
    return parse_tokens(tokenize(source), source_name)
