"""Year-by-year scenario propagation over a baseline projection.

Each simulated year: seed a frame from the baseline, bind every lever's
inputs, run the lever scripts in declaration order against the shared frame,
recompute waste generation from (possibly edited) consumption through the
lifetime convolution, then rescale the end-of-life fates so they sum to that
waste. Years are strictly sequential because the convolution reads committed
consumption from earlier years; distinct runs over the same immutable
baseline may proceed concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ._version import __version__
from .dsl.lexer import SourceSpan
from .projection import (
    EOL_FATES,
    ProjectionSeries,
    ShapeMismatch,
    diff_series,
)
from .runtime import ExecDiagnostics, ExecError, RuntimeState, YearFrame, run_program
from .scenario import Scenario, check_scenario


class EngineError(Exception):
    pass


class YearRangeError(EngineError):
    pass


class ScenarioCheckError(EngineError):
    """A lever script failed static checks; carries {lever_id: [Violation]}."""

    def __init__(self, problems):
        lines = []
        for lever_id, violations in problems.items():
            for violation in violations:
                lines.append(f"{lever_id}: {violation}")
        super().__init__("; ".join(lines))
        self.problems = problems


class ScriptRuntimeError(EngineError):
    def __init__(self, lever_id: str, span: SourceSpan, year: int, message: str):
        super().__init__(
            f"lever {lever_id!r} failed in year {year} at "
            f"{span.line}:{span.column}: {message}"
        )
        self.lever_id = lever_id
        self.span = span
        self.year = year


@dataclass(frozen=True)
class EngineConfig:
    eol_normalization: bool = True
    conservation_epsilon: float = 1e-6  # relative tolerance of the post-check
    backfill: str = "steady-state"  # pre-range consumption = first-year value

    def __post_init__(self):
        if self.conservation_epsilon <= 0:
            raise EngineError("conservation_epsilon must be > 0")
        if self.backfill != "steady-state":
            raise EngineError(f"unknown backfill mode {self.backfill!r}")


@dataclass
class NormalizationEvent:
    region: str
    scale: float
    mismanaged_default: bool = False


@dataclass
class YearDiagnostics:
    year: int
    script: ExecDiagnostics = field(default_factory=ExecDiagnostics)
    normalization: list[NormalizationEvent] = field(default_factory=list)


@dataclass(frozen=True)
class ScenarioResult:
    series: ProjectionSeries
    run_first_year: int
    run_last_year: int
    diagnostics: list[YearDiagnostics] = field(compare=False)
    engine_version: str = __version__

    @property
    def run_years(self) -> range:
        return range(self.run_first_year, self.run_last_year + 1)


def _lifetime_weights(mean: float) -> list[tuple[int, float]]:
    """Two-point delay split matching the mean exactly; integer mean = one point."""
    lo = math.floor(mean)
    hi = math.ceil(mean)
    if lo == hi:
        return [(int(mean), 1.0)]
    return [(lo, hi - mean), (hi, mean - lo)]


def convolved_waste(
    consumption_at: Callable[[str, int], float],
    sectors: tuple[str, ...],
    lifetimes: dict[str, float],
    year: int,
) -> float:
    """Waste generated in `year` from past consumption across all sectors."""
    waste = 0.0
    for sector in sectors:
        for delay, weight in _lifetime_weights(lifetimes[sector]):
            waste += consumption_at(sector, year - delay) * weight
    return waste


def waste_from_consumption(
    series: ProjectionSeries,
    region: str,
    year: int,
    lifetimes: dict[str, float] | None = None,
) -> float:
    """Waste generated in (region, year), with steady-state backfill.

    Consumption for years before the series range is taken from the first
    stored year. Lifetimes default to the series vocabulary's config.
    """
    vocabulary = series.vocabulary
    if lifetimes is None:
        lifetimes = vocabulary.lifetimes
    first = series.first_year

    def consumption_at(sector: str, y: int) -> float:
        if y < first:
            y = first
        return series.values[(region, y, sector)]

    return convolved_waste(
        consumption_at, vocabulary.consumption_sectors(), lifetimes, year
    )


def normalize_eol(
    frame: YearFrame,
    region: str,
    total_waste: float,
    epsilon: float = 1e-6,
) -> NormalizationEvent:
    """Rescale the region's EOL fates (in place) so they sum to total_waste.

    All-zero fates with positive waste assign everything to mismanaged (the
    conservative default) and flag the event. `epsilon` only parameterizes
    the conservation self-check below; scaling itself is unconditional.
    """
    fate_sum = 0.0
    for fate in EOL_FATES:
        fate_sum += frame.get(region, fate)
    if fate_sum == 0.0:
        if total_waste > 0.0:
            frame.set(region, "eolMismanagedMT", total_waste)
            return NormalizationEvent(region=region, scale=1.0, mismanaged_default=True)
        return NormalizationEvent(region=region, scale=1.0)
    scale = total_waste / fate_sum
    if scale != 1.0:
        for fate in EOL_FATES:
            frame.set(region, fate, frame.get(region, fate) * scale)
    new_sum = 0.0
    for fate in EOL_FATES:
        new_sum += frame.get(region, fate)
    if abs(new_sum - total_waste) > epsilon * max(1.0, abs(total_waste)):
        raise EngineError(
            f"normalization failed for {region}: fates {new_sum} vs waste {total_waste}"
        )
    return NormalizationEvent(region=region, scale=scale)


def run_scenario(
    baseline: ProjectionSeries,
    scenario: Scenario,
    config: EngineConfig = EngineConfig(),
) -> ScenarioResult:
    """Apply the scenario's levers to the baseline over the scenario years.

    Deterministic: identical inputs yield bit-identical results. Raises
    ScenarioCheckError / ScriptRuntimeError without partial output.
    """
    vocabulary = baseline.vocabulary
    if (
        scenario.first_year < baseline.first_year
        or scenario.last_year > baseline.last_year
    ):
        raise YearRangeError(
            f"scenario years {scenario.first_year}..{scenario.last_year} outside "
            f"baseline {baseline.first_year}..{baseline.last_year}"
        )
    problems = check_scenario(scenario, vocabulary)
    if problems:
        raise ScenarioCheckError(problems)

    sectors = vocabulary.consumption_sectors()
    lifetimes = vocabulary.lifetimes
    working = dict(baseline.values)
    diagnostics: list[YearDiagnostics] = []

    for year in scenario.years:
        frame = YearFrame.from_values(vocabulary, baseline.values, year)
        year_diag = YearDiagnostics(year=year)

        for lever in scenario.levers:
            state = RuntimeState(
                inputs=scenario.bindings_for(lever),
                frame=frame,
                current_year=year,
                lifetimes=lifetimes,
            )
            try:
                state = run_program(lever.program, state)
            except ExecError as exc:
                raise ScriptRuntimeError(
                    lever.id, exc.span, year, exc.message
                ) from exc
            frame = state.frame
            year_diag.script.extend(state.diagnostics)

        for region in vocabulary.region_ids:

            def consumption_at(sector: str, y: int, _region=region) -> float:
                if y < baseline.first_year:
                    y = baseline.first_year
                if y == year:
                    return frame.get(_region, sector)
                return working[(_region, y, sector)]

            waste = convolved_waste(consumption_at, sectors, lifetimes, year)
            if config.eol_normalization:
                event = normalize_eol(
                    frame, region, waste, config.conservation_epsilon
                )
                if event.scale != 1.0 or event.mismanaged_default:
                    year_diag.normalization.append(event)

        for region in vocabulary.region_ids:
            for attr in vocabulary.attribute_ids:
                working[(region, year, attr)] = frame.get(region, attr)
        diagnostics.append(year_diag)

    series = ProjectionSeries(
        vocabulary=vocabulary,
        first_year=baseline.first_year,
        last_year=baseline.last_year,
        values=working,
    )
    return ScenarioResult(
        series=series,
        run_first_year=scenario.first_year,
        run_last_year=scenario.last_year,
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class HeadlineMetrics:
    """Session-scale aggregates for comparing whole scenarios."""

    cumulative_global_mismanaged: float
    end_year_fates: dict[str, dict[str, float]]  # region -> fate -> MT


def headline_metrics(result: ScenarioResult) -> HeadlineMetrics:
    series = result.series
    cumulative = 0.0
    for year in result.run_years:
        cumulative += series.aggregate_global(year, "eolMismanagedMT")
    end_year = result.run_last_year
    fates = {
        region: {fate: series.values[(region, end_year, fate)] for fate in EOL_FATES}
        for region in series.vocabulary.region_ids
    }
    return HeadlineMetrics(
        cumulative_global_mismanaged=cumulative, end_year_fates=fates
    )


@dataclass(frozen=True)
class ScenarioComparison:
    deltas: dict[tuple[str, int, str], float]
    headline_a: HeadlineMetrics
    headline_b: HeadlineMetrics
    cumulative_global_mismanaged_delta: float


def compare_scenarios(a: ScenarioResult, b: ScenarioResult) -> ScenarioComparison:
    """Cell deltas (b - a) plus headline aggregates for both runs."""
    if (a.run_first_year, a.run_last_year) != (b.run_first_year, b.run_last_year):
        raise ShapeMismatch("scenario results cover different run years")
    deltas = diff_series(a.series, b.series)
    ha = headline_metrics(a)
    hb = headline_metrics(b)
    return ScenarioComparison(
        deltas=deltas,
        headline_a=ha,
        headline_b=hb,
        cumulative_global_mismanaged_delta=(
            hb.cumulative_global_mismanaged - ha.cumulative_global_mismanaged
        ),
    )
