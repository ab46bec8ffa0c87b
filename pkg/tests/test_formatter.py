"""Formatter: canonical text, round-trip stability, byte idempotence."""

from __future__ import annotations

import random

from policy_lab.dsl import format_program, parse_program
from policy_lab.dsl.formatter import format_expr
from policy_lab.dsl.lexer import SourceSpan
from policy_lab.dsl.nodes import (
    Address,
    AddressRef,
    Binary,
    Call,
    Lifecycle,
    LocalRef,
    Number,
    Ternary,
    Unary,
)

SPAN = SourceSpan(0, 0, 1, 1)


def canon(source: str) -> str:
    return format_program(parse_program(source))


def test_whitespace_canonicalization_preserves_ast():
    messy = "out.china.eolRecyclingMT=1+2   *3;"
    tidy = "out.china.eolRecyclingMT = 1 + 2 * 3;\n"
    assert canon(messy) == tidy
    assert parse_program(messy) == parse_program(tidy)


def test_needed_parens_kept_unneeded_dropped():
    assert canon("out.a.b = (1 + 2) * 3;") == "out.a.b = (1 + 2) * 3;\n"
    assert canon("out.a.b = 1 + (2 * 3);") == "out.a.b = 1 + 2 * 3;\n"


def test_right_assoc_power_parens():
    assert canon("out.a.b = (2 ^ 3) ^ 2;") == "out.a.b = (2 ^ 3) ^ 2;\n"
    assert canon("out.a.b = 2 ^ (3 ^ 2);") == "out.a.b = 2 ^ 3 ^ 2;\n"


def test_left_assoc_subtraction_parens():
    assert canon("out.a.b = 1 - (2 - 3);") == "out.a.b = 1 - (2 - 3);\n"
    assert canon("out.a.b = (1 - 2) - 3;") == "out.a.b = 1 - 2 - 3;\n"


def test_percent_literals_survive():
    assert canon("var share=30%;") == "var share = 30%;\n"


def test_number_lexemes_verbatim():
    assert canon("var x = 2.50;") == "var x = 2.50;\n"


def test_distribute_gains_keyword():
    source = "distribute 1 across [out.a.b, out.c.d];"
    assert canon(source) == "distribute 1 across [out.a.b, out.c.d] proportionally;\n"


def test_nested_if_indentation():
    source = "if 1 { if 2 { out.a.b = 1; } } else { out.a.b = 2; }"
    expected = (
        "if 1 {\n"
        "  if 2 {\n"
        "    out.a.b = 1;\n"
        "  }\n"
        "} else {\n"
        "  out.a.b = 2;\n"
        "}\n"
    )
    assert canon(source) == expected
    assert parse_program(canon(source)) == parse_program(source)


def test_ternary_formats_flat():
    assert canon("var x = 1 ? 2 : 3 ? 4 : 5;") == "var x = 1 ? 2 : 3 ? 4 : 5;\n"
    nested_cond = canon("var x = (1 ? 2 : 3) ? 4 : 5;")
    assert nested_cond == "var x = (1 ? 2 : 3) ? 4 : 5;\n"


def test_empty_program_formats_empty():
    assert canon("") == ""
    assert canon("# only a comment\n") == ""


def test_unary_stacking_reparses():
    for source in ("var x = --5;", "var x = not not 1;", "var x = -(1 + 2);"):
        once = canon(source)
        assert parse_program(once) == parse_program(source)
        assert canon(once) == once


def test_corpus_round_trip_and_idempotence(corpus_sources):
    for name, source in corpus_sources.items():
        first = parse_program(source, source_name=name)
        formatted = format_program(first)
        second = parse_program(formatted, source_name=name)
        assert second == first, f"{name}: parse(format(parse(s))) != parse(s)"
        assert format_program(second) == formatted, f"{name}: format not idempotent"


class _RandomExprTrees:
    """Arbitrary expression trees whose literals re-lex to themselves."""

    OPS = ["or", "and", "<", "<=", ">", ">=", "==", "!=", "+", "-", "*", "/", "^"]

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def number(self):
        if self.rng.random() < 0.15:
            pct = self.rng.randrange(0, 200)
            return Number(value=pct / 100.0, text=f"{pct}%", span=SPAN)
        value = round(self.rng.uniform(0, 50), 3)
        return Number(value=value, text=repr(value), span=SPAN)

    def leaf(self):
        roll = self.rng.random()
        if roll < 0.6:
            return self.number()
        if roll < 0.8:
            return LocalRef(name=self.rng.choice(["x", "y", "total"]), span=SPAN)
        return AddressRef(
            address=Address(
                namespace="out", segments=("china", "eolRecyclingMT"), span=SPAN
            ),
            span=SPAN,
        )

    def tree(self, depth: int):
        if depth <= 0 or self.rng.random() < 0.3:
            return self.leaf()
        roll = self.rng.random()
        if roll < 0.55:
            return Binary(
                op=self.rng.choice(self.OPS),
                lhs=self.tree(depth - 1),
                rhs=self.tree(depth - 1),
                span=SPAN,
            )
        if roll < 0.7:
            return Unary(
                op=self.rng.choice(["-", "not"]), operand=self.tree(depth - 1), span=SPAN
            )
        if roll < 0.85:
            return Ternary(
                cond=self.tree(depth - 1),
                then=self.tree(depth - 1),
                otherwise=self.tree(depth - 1),
                span=SPAN,
            )
        if roll < 0.95:
            func = self.rng.choice(["abs", "min", "max", "floor", "ceil", "round"])
            arity = 2 if func in ("min", "max") else 1
            return Call(
                func=func,
                args=tuple(self.tree(depth - 1) for _ in range(arity)),
                span=SPAN,
            )
        return Lifecycle(
            targets=(
                Address(
                    namespace="out",
                    segments=("china", "consumptionPackagingMT"),
                    span=SPAN,
                ),
            ),
            span=SPAN,
        )


def test_random_trees_survive_print_then_parse():
    """Minimal-paren printing preserves arbitrary tree shapes exactly."""
    generator = _RandomExprTrees(seed=987654)
    for _ in range(600):
        tree = generator.tree(depth=5)
        printed = format_expr(tree)
        program = parse_program(f"var probe = {printed};")
        reparsed = program.statements[0].expr
        assert reparsed == tree, f"shape changed through: {printed}"
