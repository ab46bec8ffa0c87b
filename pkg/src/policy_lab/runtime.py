"""Interpreter for checked lever scripts against one simulated year's state.

Everything is a float. Comparisons and logical operators yield 1.0 / 0.0;
any nonzero value is truthy. `and`/`or` evaluate both operands (no short
circuit), so evaluation order never changes which errors surface. Frame
values are masses and can never go negative: writes below zero clamp to 0.0
and are recorded in the run diagnostics instead of aborting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dsl.lexer import SourceSpan
from .dsl.nodes import (
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
from .projection import GLOBAL_REGION, Vocabulary


class ExecError(Exception):
    """A runtime error at a specific source span; aborts the program run."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span.line}:{span.column}: {message}")
        self.message = message
        self.span = span
        self.statement_index: int | None = None


class DivisionByZero(ExecError):
    def __init__(self, span: SourceSpan):
        super().__init__("division by zero", span)


class NonFiniteResult(ExecError):
    def __init__(self, span: SourceSpan):
        super().__init__("result is not finite", span)


class DomainError(ExecError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message, span)


class InvalidInterval(ExecError):
    def __init__(self, start: float, end: float, span: SourceSpan):
        super().__init__(f"interval start {start} is after end {end}", span)


class LimitBoundsInverted(ExecError):
    def __init__(self, lo: float, hi: float, span: SourceSpan):
        super().__init__(f"limit lower bound {lo} exceeds upper bound {hi}", span)


class UnknownRuntimeAddress(ExecError):
    """Unbound input or undeclared local; unreachable for checked programs."""

    def __init__(self, name: str, span: SourceSpan):
        super().__init__(f"unknown address {name!r}", span)


@dataclass
class ClampEvent:
    address: str
    span: SourceSpan
    pre_value: float
    post_value: float


@dataclass
class ExecDiagnostics:
    """Append-only observability record for one program (or year) run."""

    clamps_applied: list[ClampEvent] = field(default_factory=list)
    divisions_guarded: int = 0

    def extend(self, other: "ExecDiagnostics"):
        self.clamps_applied.extend(other.clamps_applied)
        self.divisions_guarded += other.divisions_guarded


class YearFrame:
    """Mutable (region, attribute) -> MT view of a single year.

    Reads of the synthetic 'global' region return the sum over stored regions
    in declared order; writes to it are rejected upstream by the checker.
    """

    def __init__(self, vocabulary: Vocabulary, cells: dict[tuple[str, str], float]):
        self.vocabulary = vocabulary
        self.cells = cells

    @classmethod
    def from_values(
        cls,
        vocabulary: Vocabulary,
        values: dict[tuple[str, int, str], float],
        year: int,
    ) -> "YearFrame":
        cells = {
            (region, attr): values[(region, year, attr)]
            for region in vocabulary.region_ids
            for attr in vocabulary.attribute_ids
        }
        return cls(vocabulary, cells)

    def copy(self) -> "YearFrame":
        return YearFrame(self.vocabulary, dict(self.cells))

    def get(self, region: str, attribute: str) -> float:
        if region == GLOBAL_REGION:
            return self.global_total(attribute)
        return self.cells[(region, attribute)]

    def set(self, region: str, attribute: str, value: float):
        if (region, attribute) not in self.cells:
            raise KeyError((region, attribute))
        self.cells[(region, attribute)] = value

    def global_total(self, attribute: str) -> float:
        total = 0.0
        for region in self.vocabulary.region_ids:
            total += self.cells[(region, attribute)]
        return total


@dataclass
class RuntimeState:
    """Addressable store for one program run on one simulated year."""

    inputs: dict[str, float]
    frame: YearFrame
    current_year: int
    lifetimes: dict[str, float]
    locals: dict[str, float] = field(default_factory=dict)
    diagnostics: ExecDiagnostics = field(default_factory=ExecDiagnostics)

    def fork(self) -> "RuntimeState":
        """Fresh locals and diagnostics over a copied frame; inputs shared."""
        return RuntimeState(
            inputs=self.inputs,
            frame=self.frame.copy(),
            current_year=self.current_year,
            lifetimes=self.lifetimes,
        )


def _finite(value: float, span: SourceSpan) -> float:
    if not math.isfinite(value):
        raise NonFiniteResult(span)
    return value


def _power(base: float, exponent: float, span: SourceSpan) -> float:
    if base == 0.0 and exponent < 0.0:
        raise DomainError("zero raised to a negative power", span)
    if base < 0.0 and exponent != math.floor(exponent):
        raise DomainError("negative base with fractional exponent", span)
    try:
        return math.pow(base, exponent)
    except OverflowError:
        raise NonFiniteResult(span) from None
    except ValueError:
        raise DomainError("power outside the real domain", span) from None


def _round_half_away(x: float) -> float:
    if x >= 0.0:
        return math.floor(x + 0.5)
    return math.ceil(x - 0.5)


def _read_address(address: Address, state: RuntimeState) -> float:
    if address.namespace == "in":
        try:
            return state.inputs[address.param]
        except KeyError:
            raise UnknownRuntimeAddress(address.dotted(), address.span) from None
    try:
        return state.frame.get(address.region, address.attribute)
    except KeyError:
        raise UnknownRuntimeAddress(address.dotted(), address.span) from None


def evaluate(expr: Expr, state: RuntimeState) -> float:
    """Evaluate a checked expression to a finite float."""
    if isinstance(expr, Number):
        return expr.value
    if isinstance(expr, LocalRef):
        try:
            return state.locals[expr.name]
        except KeyError:
            raise UnknownRuntimeAddress(expr.name, expr.span) from None
    if isinstance(expr, AddressRef):
        return _read_address(expr.address, state)
    if isinstance(expr, Unary):
        operand = evaluate(expr.operand, state)
        if expr.op == "not":
            return 1.0 if operand == 0.0 else 0.0
        return -operand
    if isinstance(expr, Binary):
        lhs = evaluate(expr.lhs, state)
        rhs = evaluate(expr.rhs, state)
        op = expr.op
        if op == "+":
            return _finite(lhs + rhs, expr.span)
        if op == "-":
            return _finite(lhs - rhs, expr.span)
        if op == "*":
            return _finite(lhs * rhs, expr.span)
        if op == "/":
            if rhs == 0.0:
                raise DivisionByZero(expr.span)
            return _finite(lhs / rhs, expr.span)
        if op == "^":
            return _finite(_power(lhs, rhs, expr.span), expr.span)
        if op == "<":
            return 1.0 if lhs < rhs else 0.0
        if op == "<=":
            return 1.0 if lhs <= rhs else 0.0
        if op == ">":
            return 1.0 if lhs > rhs else 0.0
        if op == ">=":
            return 1.0 if lhs >= rhs else 0.0
        if op == "==":
            return 1.0 if lhs == rhs else 0.0
        if op == "!=":
            return 1.0 if lhs != rhs else 0.0
        if op == "and":
            return 1.0 if (lhs != 0.0 and rhs != 0.0) else 0.0
        if op == "or":
            return 1.0 if (lhs != 0.0 or rhs != 0.0) else 0.0
        raise TypeError(f"unhandled operator {op!r}")
    if isinstance(expr, Ternary):
        cond = evaluate(expr.cond, state)
        if cond != 0.0:
            return evaluate(expr.then, state)
        return evaluate(expr.otherwise, state)
    if isinstance(expr, Call):
        args = [evaluate(a, state) for a in expr.args]
        if expr.func == "abs":
            return abs(args[0])
        if expr.func == "min":
            return min(args)
        if expr.func == "max":
            return max(args)
        if expr.func == "floor":
            return float(math.floor(args[0]))
        if expr.func == "ceil":
            return float(math.ceil(args[0]))
        if expr.func == "round":
            return _round_half_away(args[0])
        raise TypeError(f"unhandled builtin {expr.func!r}")
    if isinstance(expr, Lifecycle):
        return lifecycle_expectation(expr.targets, state)
    raise TypeError(f"unhandled expression node {type(expr).__name__}")


def lifecycle_expectation(targets: tuple[Address, ...], state: RuntimeState) -> float:
    """Mass-weighted mean lifetime (years) of the target consumption sectors.

    Weights are the current frame values; if all targets carry zero mass the
    result falls back to the unweighted mean of the configured lifetimes.
    """
    values = [_read_address(t, state) for t in targets]
    lifetimes = [state.lifetimes[t.attribute] for t in targets]
    mass = sum(values)
    if mass == 0.0:
        state.diagnostics.divisions_guarded += 1
        return sum(lifetimes) / len(lifetimes)
    weighted = 0.0
    for value, lifetime in zip(values, lifetimes):
        weighted += value * lifetime
    return weighted / mass


def proportional_deltas(amount: float, values: list[float]) -> tuple[list[float], bool]:
    """Split `amount` proportionally to `values`; equal split when all zero.

    Returns (deltas, guarded) where guarded flags the zero-mass fallback.
    Sum of deltas equals `amount` within 1e-9 * max(1, |amount|).
    """
    total = sum(values)
    if total == 0.0:
        n = len(values)
        return [amount / n] * n, True
    return [amount * v / total for v in values], False


def _write_frame(
    state: RuntimeState, address: Address, value: float, span: SourceSpan
):
    """Write one frame cell, clamping negatives to zero with a diagnostic."""
    if value < 0.0:
        state.diagnostics.clamps_applied.append(
            ClampEvent(
                address=address.dotted(), span=span, pre_value=value, post_value=0.0
            )
        )
        value = 0.0
    state.frame.set(address.region, address.attribute, value + 0.0)


def distribute_proportionally(
    amount: float,
    targets: tuple[Address, ...],
    state: RuntimeState,
    span: SourceSpan,
):
    """Add shares of `amount` to each target, proportional to pre-statement values.

    All target values are read before any write, so permuting the target list
    permutes the deltas identically.
    """
    values = [_read_address(t, state) for t in targets]
    deltas, guarded = proportional_deltas(amount, values)
    if guarded:
        state.diagnostics.divisions_guarded += 1
    for target, value, delta in zip(targets, values, deltas):
        _write_frame(state, target, value + delta, span)


_NO_SPAN = SourceSpan(start=0, end=0, line=1, column=1)


def phase_in_delta(
    amount: float,
    start_year: float,
    end_year: float,
    current_year: int,
    span: SourceSpan = _NO_SPAN,
) -> float:
    """Linear ramp of `amount` over [start_year, end_year].

    Zero before the start, the full amount at/after the end; a zero-length
    interval is a step at the start year.
    """
    if start_year > end_year:
        raise InvalidInterval(start_year, end_year, span)
    if current_year <= start_year:
        if start_year == end_year and current_year >= start_year:
            return amount
        return 0.0
    if current_year >= end_year:
        return amount
    fraction = (current_year - start_year) / (end_year - start_year)
    return amount * fraction


def execute(stmt: Stmt, state: RuntimeState):
    """Execute one statement, mutating the state in place."""
    if isinstance(stmt, VarDecl):
        state.locals[stmt.name] = evaluate(stmt.expr, state)
        return
    if isinstance(stmt, Assign):
        value = evaluate(stmt.expr, state)
        _write_frame(state, stmt.address, value, stmt.span)
        return
    if isinstance(stmt, Change):
        amount = evaluate(stmt.amount, state)
        start_year = evaluate(stmt.start_year, state)
        end_year = evaluate(stmt.end_year, state)
        delta = phase_in_delta(
            amount, start_year, end_year, state.current_year, stmt.span
        )
        current = _read_address(stmt.address, state)
        _write_frame(state, stmt.address, current + delta, stmt.span)
        return
    if isinstance(stmt, Distribute):
        amount = evaluate(stmt.amount, state)
        distribute_proportionally(amount, stmt.targets, state, stmt.span)
        return
    if isinstance(stmt, Limit):
        lo = evaluate(stmt.lo, state)
        hi = evaluate(stmt.hi, state)
        if lo > hi:
            raise LimitBoundsInverted(lo, hi, stmt.span)
        current = _read_address(stmt.address, state)
        bounded = min(max(current, lo), hi)
        if bounded != current:
            state.diagnostics.clamps_applied.append(
                ClampEvent(
                    address=stmt.address.dotted(),
                    span=stmt.span,
                    pre_value=current,
                    post_value=bounded,
                )
            )
        _write_frame(state, stmt.address, bounded, stmt.span)
        return
    if isinstance(stmt, If):
        cond = evaluate(stmt.cond, state)
        block = stmt.then_block if cond != 0.0 else stmt.else_block
        if block is not None:
            for inner in block:
                execute(inner, state)
        return
    raise TypeError(f"unhandled statement node {type(stmt).__name__}")


def run_program(program: Program, state: RuntimeState) -> RuntimeState:
    """Run a checked program on a forked copy of `state` and return the copy.

    Deterministic: identical inputs produce bit-identical frames. On the
    first runtime error the copy is discarded and ExecError propagates with
    the failing statement index attached; the caller's state is untouched.
    """
    work = state.fork()
    for index, stmt in enumerate(program.statements):
        try:
            execute(stmt, work)
        except ExecError as exc:
            if exc.statement_index is None:
                exc.statement_index = index
            raise
    return work
