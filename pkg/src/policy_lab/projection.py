"""Baseline projection series: vocabulary config, CSV ingestion, addressing, diffs.

The baseline is a yearly mass-flow projection per region, delivered as a tidy
CSV (`year,region,variable,value`, values in million metric tonnes per year).
A scenario-independent vocabulary config declares which regions and variables
exist; nothing here is hard-coded to a particular model export.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

REGION_ID_RE = re.compile(r"[a-z][a-z0-9]*\Z")
ATTRIBUTE_ID_RE = re.compile(r"[a-z][a-zA-Z0-9]*\Z")

ATTRIBUTE_KINDS = ("consumption-sector", "eol-fate", "production", "trade")

# Fixed end-of-life fate set, in canonical (declared) order. The engine's
# normalization step assumes all four exist.
EOL_FATES = (
    "eolRecyclingMT",
    "eolIncinerationMT",
    "eolLandfillMT",
    "eolMismanagedMT",
)

# Synthetic aggregate region: readable everywhere, never stored.
GLOBAL_REGION = "global"

CSV_HEADER = "year,region,variable,value"


class ProjectionError(Exception):
    """Base for all baseline data errors."""


class MalformedRow(ProjectionError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateCell(ProjectionError):
    def __init__(self, line: int, region: str, year: int, attribute: str):
        super().__init__(
            f"line {line}: duplicate cell ({region}, {year}, {attribute})"
        )
        self.line = line
        self.triple = (region, year, attribute)


class MissingCell(ProjectionError):
    def __init__(self, region: str, year: int, attribute: str):
        super().__init__(f"missing cell ({region}, {year}, {attribute})")
        self.triple = (region, year, attribute)


class NonContiguousYears(ProjectionError):
    pass


class NegativeValue(ProjectionError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class UnknownAttribute(ProjectionError):
    def __init__(self, name: str, line: int | None = None):
        msg = f"variable {name!r} not declared in vocabulary"
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.name = name
        self.line = line


class UnknownRegion(ProjectionError):
    def __init__(self, name: str, line: int | None = None):
        msg = f"region {name!r} not declared in vocabulary"
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.name = name
        self.line = line


class OutOfRange(ProjectionError):
    pass


class ShapeMismatch(ProjectionError):
    pass


class VocabularyError(ProjectionError):
    """Bad vocabulary config document."""


@dataclass(frozen=True)
class Region:
    id: str
    display_name: str


@dataclass(frozen=True)
class Attribute:
    id: str
    kind: str
    unit: str = "MT/year"
    group: str | None = None  # optional UI navigation label, opaque here


@dataclass(frozen=True)
class Vocabulary:
    """Declared regions, attributes and mean product lifetimes.

    `lifetimes` maps every consumption-sector attribute id to its mean
    lifetime in years (strictly positive, fractions allowed). This is the
    parameter set the lifecycle convolution and the `lifecycle` DSL keyword
    consume.
    """

    regions: tuple[Region, ...]
    attributes: tuple[Attribute, ...]
    lifetimes: dict[str, float]

    def __post_init__(self):
        if not self.regions:
            raise VocabularyError("vocabulary declares no regions")
        if not self.attributes:
            raise VocabularyError("vocabulary declares no attributes")
        seen: set[str] = set()
        for region in self.regions:
            if not REGION_ID_RE.match(region.id):
                raise VocabularyError(f"bad region id {region.id!r}")
            if region.id == GLOBAL_REGION:
                raise VocabularyError(
                    "'global' is the computed aggregate and cannot be declared"
                )
            if region.id in seen:
                raise VocabularyError(f"duplicate region id {region.id!r}")
            seen.add(region.id)
        seen = set()
        fates_declared = set()
        for attr in self.attributes:
            if not ATTRIBUTE_ID_RE.match(attr.id):
                raise VocabularyError(f"bad attribute id {attr.id!r}")
            if attr.kind not in ATTRIBUTE_KINDS:
                raise VocabularyError(
                    f"attribute {attr.id!r} has unknown kind {attr.kind!r}"
                )
            if attr.id in seen:
                raise VocabularyError(f"duplicate attribute id {attr.id!r}")
            seen.add(attr.id)
            if attr.kind == "eol-fate":
                if attr.id not in EOL_FATES:
                    raise VocabularyError(
                        f"eol-fate attribute {attr.id!r} outside the fixed fate set"
                    )
                fates_declared.add(attr.id)
        if fates_declared != set(EOL_FATES):
            raise VocabularyError(
                "vocabulary must declare all four EOL fates "
                f"(missing: {sorted(set(EOL_FATES) - fates_declared)})"
            )
        for attr in self.attributes:
            if attr.kind == "consumption-sector" and attr.id not in self.lifetimes:
                raise VocabularyError(
                    f"consumption sector {attr.id!r} has no mean lifetime"
                )
        for name, mean in self.lifetimes.items():
            if name not in seen:
                raise VocabularyError(f"lifetime for undeclared attribute {name!r}")
            if not (isinstance(mean, (int, float)) and math.isfinite(mean) and mean > 0):
                raise VocabularyError(f"lifetime for {name!r} must be > 0")

    @property
    def region_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.regions)

    @property
    def attribute_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.attributes)

    def attribute(self, attr_id: str) -> Attribute:
        for a in self.attributes:
            if a.id == attr_id:
                return a
        raise UnknownAttribute(attr_id)

    def consumption_sectors(self) -> tuple[str, ...]:
        return tuple(
            a.id for a in self.attributes if a.kind == "consumption-sector"
        )

    def has_region(self, region_id: str) -> bool:
        return any(r.id == region_id for r in self.regions)

    def has_attribute(self, attr_id: str) -> bool:
        return any(a.id == attr_id for a in self.attributes)


def load_vocabulary(text: str) -> Vocabulary:
    """Parse the vocabulary config JSON document (see docs/vocabulary.md)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise VocabularyError(f"vocabulary is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise VocabularyError("vocabulary document must be a JSON object")
    try:
        regions = tuple(
            Region(id=r["id"], display_name=r.get("display_name", r["id"]))
            for r in doc["regions"]
        )
        attributes = tuple(
            Attribute(
                id=a["id"],
                kind=a["kind"],
                unit=a.get("unit", "MT/year"),
                group=a.get("group"),
            )
            for a in doc["attributes"]
        )
        lifetimes = {str(k): float(v) for k, v in doc.get("lifetimes", {}).items()}
    except (KeyError, TypeError) as exc:
        raise VocabularyError(f"vocabulary document malformed: {exc}") from exc
    return Vocabulary(regions=regions, attributes=attributes, lifetimes=lifetimes)


def _normalize_zero(value: float) -> float:
    # -0.0 folds to +0.0 so serialization stays canonical.
    return value + 0.0


@dataclass(frozen=True)
class ProjectionSeries:
    """A total (region, year, attribute) -> MT/year map over a contiguous year range.

    Immutable after construction; `set_value` returns a modified copy, so a
    series may be shared read-only across concurrent scenario runs.
    """

    vocabulary: Vocabulary
    first_year: int
    last_year: int
    values: dict[tuple[str, int, str], float] = field(repr=False)

    def __post_init__(self):
        if self.first_year > self.last_year:
            raise NonContiguousYears(
                f"empty year range {self.first_year}..{self.last_year}"
            )
        expected = (
            len(self.vocabulary.regions)
            * (self.last_year - self.first_year + 1)
            * len(self.vocabulary.attributes)
        )
        if len(self.values) != expected:
            self._find_totality_hole()
        for key, value in self.values.items():
            if not math.isfinite(value):
                raise ProjectionError(f"non-finite value at {key}")
            if value < 0:
                raise NegativeValue(f"negative value {value} at {key}")

    def _find_totality_hole(self):
        for region in self.vocabulary.region_ids:
            for year in self.years:
                for attr in self.vocabulary.attribute_ids:
                    if (region, year, attr) not in self.values:
                        raise MissingCell(region, year, attr)
        raise ProjectionError("cell count does not match vocabulary shape")

    @property
    def years(self) -> range:
        return range(self.first_year, self.last_year + 1)

    def _check_triple(self, region: str, year: int, attribute: str):
        if not self.vocabulary.has_region(region):
            raise OutOfRange(f"region {region!r} not in series")
        if year < self.first_year or year > self.last_year:
            raise OutOfRange(
                f"year {year} outside {self.first_year}..{self.last_year}"
            )
        if not self.vocabulary.has_attribute(attribute):
            raise OutOfRange(f"attribute {attribute!r} not in series")

    def get_value(self, region: str, year: int, attribute: str) -> float:
        self._check_triple(region, year, attribute)
        return self.values[(region, year, attribute)]

    def set_value(
        self, region: str, year: int, attribute: str, value: float
    ) -> "ProjectionSeries":
        """Return a copy with one cell replaced. Rejects negatives."""
        self._check_triple(region, year, attribute)
        if not math.isfinite(value):
            raise ProjectionError(f"non-finite value {value}")
        if value < 0:
            raise NegativeValue(f"negative value {value}")
        new_values = dict(self.values)
        new_values[(region, year, attribute)] = _normalize_zero(value)
        return ProjectionSeries(
            vocabulary=self.vocabulary,
            first_year=self.first_year,
            last_year=self.last_year,
            values=new_values,
        )

    def aggregate_global(self, year: int, attribute: str) -> float:
        """Sum over all stored regions, in declared region order."""
        if year < self.first_year or year > self.last_year:
            raise OutOfRange(
                f"year {year} outside {self.first_year}..{self.last_year}"
            )
        if not self.vocabulary.has_attribute(attribute):
            raise OutOfRange(f"attribute {attribute!r} not in series")
        total = 0.0
        for region in self.vocabulary.region_ids:
            total += self.values[(region, year, attribute)]
        return total


def load_baseline(csv_text: str, vocabulary: Vocabulary) -> ProjectionSeries:
    """Parse and validate a tidy baseline CSV against the vocabulary.

    Row order is irrelevant; every declared (region, year, attribute) cell
    must appear exactly once, years must be contiguous, values non-negative.
    """
    lines = csv_text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != CSV_HEADER:
        raise MalformedRow(1, f"header must be exactly {CSV_HEADER!r}")

    cells: dict[tuple[str, int, str], float] = {}
    years_seen: set[int] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 4:
            raise MalformedRow(lineno, f"expected 4 fields, got {len(parts)}")
        year_text, region, attribute, value_text = parts
        try:
            year = int(year_text)
        except ValueError:
            raise MalformedRow(lineno, f"bad year {year_text!r}") from None
        try:
            value = float(value_text)
        except ValueError:
            raise MalformedRow(lineno, f"bad value {value_text!r}") from None
        if not math.isfinite(value):
            raise MalformedRow(lineno, f"non-finite value {value_text!r}")
        if value < 0:
            raise NegativeValue(f"negative value {value_text}", line=lineno)
        if not vocabulary.has_region(region):
            raise UnknownRegion(region, line=lineno)
        if not vocabulary.has_attribute(attribute):
            raise UnknownAttribute(attribute, line=lineno)
        key = (region, year, attribute)
        if key in cells:
            raise DuplicateCell(lineno, region, year, attribute)
        cells[key] = _normalize_zero(value)
        years_seen.add(year)

    if not years_seen:
        raise ProjectionError("baseline has no data rows")
    first, last = min(years_seen), max(years_seen)
    if years_seen != set(range(first, last + 1)):
        gaps = sorted(set(range(first, last + 1)) - years_seen)
        raise NonContiguousYears(f"year range {first}..{last} has gaps at {gaps}")

    for region in vocabulary.region_ids:
        for year in range(first, last + 1):
            for attr in vocabulary.attribute_ids:
                if (region, year, attr) not in cells:
                    raise MissingCell(region, year, attr)

    return ProjectionSeries(
        vocabulary=vocabulary, first_year=first, last_year=last, values=cells
    )


def serialize(series: ProjectionSeries) -> str:
    """Render the canonical CSV: region, then year, then attribute, declared order.

    Values use shortest round-trip float formatting, so
    load_baseline(serialize(s)) == s cell-for-cell and two serializations of
    the same series are byte-identical.
    """
    out = [CSV_HEADER]
    for region in series.vocabulary.region_ids:
        for year in series.years:
            for attr in series.vocabulary.attribute_ids:
                value = series.values[(region, year, attr)]
                out.append(f"{year},{region},{attr},{value!r}")
    return "\n".join(out) + "\n"


def diff_series(
    a: ProjectionSeries, b: ProjectionSeries
) -> dict[tuple[str, int, str], float]:
    """Cell-wise delta table, b - a. Deltas may be negative."""
    if (
        a.vocabulary.region_ids != b.vocabulary.region_ids
        or a.vocabulary.attribute_ids != b.vocabulary.attribute_ids
        or a.first_year != b.first_year
        or a.last_year != b.last_year
    ):
        raise ShapeMismatch("series do not share regions/attributes/years")
    return {key: b.values[key] - a.values[key] for key in a.values}
