"""Scenario documents: ordered policy levers with tunable inputs and scripts.

A scenario file is JSON:

    {
      "levers": [
        {
          "id": "cap_mismanaged",
          "display_name": "Cap mismanaged waste",
          "description": "...",
          "inputs": {"capMT": {"default": 30, "min": 0, "max": 120}},
          "inline_script": "limit out.china.eolMismanagedMT to [0, in.capMT];"
          // or "script_path": "levers/cap_mismanaged.pol" (relative to the file)
        }
      ],
      "values": {"cap_mismanaged": {"capMT": 25}},
      "years": [2025, 2050]
    }

Lever order is execution order. Values omitted from "values" fall back to the
lever input's default.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .dsl import Program, Violation, check, parse_program
from .projection import Vocabulary

MAX_SCRIPT_BYTES = 64 * 1024


class ScenarioError(Exception):
    """Malformed or invalid scenario document."""


@dataclass(frozen=True)
class LeverInput:
    default: float
    min: float
    max: float

    def __post_init__(self):
        for name, v in (("default", self.default), ("min", self.min), ("max", self.max)):
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ScenarioError(f"lever input {name} must be a finite number")
        if self.min > self.max:
            raise ScenarioError(f"input range inverted: min {self.min} > max {self.max}")
        if not (self.min <= self.default <= self.max):
            raise ScenarioError(
                f"default {self.default} outside [{self.min}, {self.max}]"
            )


@dataclass(frozen=True)
class Lever:
    id: str
    display_name: str
    inputs: dict[str, LeverInput]
    script_source: str
    description: str = ""
    program: Program = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.script_source.encode("utf-8")) > MAX_SCRIPT_BYTES:
            raise ScenarioError(
                f"lever {self.id!r} script exceeds {MAX_SCRIPT_BYTES} bytes"
            )
        object.__setattr__(
            self, "program", parse_program(self.script_source, source_name=self.id)
        )


@dataclass(frozen=True)
class Scenario:
    levers: tuple[Lever, ...]
    values: dict[tuple[str, str], float]
    first_year: int
    last_year: int

    def __post_init__(self):
        if self.first_year > self.last_year:
            raise ScenarioError(
                f"year range inverted: {self.first_year} > {self.last_year}"
            )
        ids = [lever.id for lever in self.levers]
        if len(set(ids)) != len(ids):
            raise ScenarioError("duplicate lever ids")
        by_id = {lever.id: lever for lever in self.levers}
        for (lever_id, param), value in self.values.items():
            lever = by_id.get(lever_id)
            if lever is None:
                raise ScenarioError(f"value for unknown lever {lever_id!r}")
            spec = lever.inputs.get(param)
            if spec is None:
                raise ScenarioError(
                    f"value for unknown input {param!r} of lever {lever_id!r}"
                )
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ScenarioError(f"value for {lever_id}.{param} must be finite")
            if not (spec.min <= value <= spec.max):
                raise ScenarioError(
                    f"value {value} for {lever_id}.{param} outside "
                    f"[{spec.min}, {spec.max}]"
                )

    @property
    def years(self) -> range:
        return range(self.first_year, self.last_year + 1)

    def bindings_for(self, lever: Lever) -> dict[str, float]:
        """Input values for one lever, with defaults filled in."""
        return {
            param: float(self.values.get((lever.id, param), spec.default))
            for param, spec in lever.inputs.items()
        }


def empty_scenario(first_year: int, last_year: int) -> Scenario:
    return Scenario(levers=(), values={}, first_year=first_year, last_year=last_year)


def _lever_from_dict(doc: dict, base_dir: Path | None) -> Lever:
    if not isinstance(doc, dict):
        raise ScenarioError("lever entry must be an object")
    try:
        lever_id = doc["id"]
    except KeyError:
        raise ScenarioError("lever entry missing 'id'") from None
    if "inline_script" in doc:
        source = doc["inline_script"]
    elif "script_path" in doc:
        if base_dir is None:
            raise ScenarioError(
                f"lever {lever_id!r} uses script_path but no base directory is known"
            )
        path = base_dir / doc["script_path"]
        try:
            source = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ScenarioError(f"cannot read script for lever {lever_id!r}: {exc}") from exc
    else:
        raise ScenarioError(f"lever {lever_id!r} has neither inline_script nor script_path")
    inputs_doc = doc.get("inputs", {})
    if not isinstance(inputs_doc, dict):
        raise ScenarioError(f"lever {lever_id!r} inputs must be an object")
    inputs = {}
    for param, spec in inputs_doc.items():
        try:
            inputs[param] = LeverInput(
                default=float(spec["default"]),
                min=float(spec["min"]),
                max=float(spec["max"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(
                f"lever {lever_id!r} input {param!r} malformed: {exc}"
            ) from exc
    return Lever(
        id=str(lever_id),
        display_name=str(doc.get("display_name", lever_id)),
        inputs=inputs,
        script_source=str(source),
        description=str(doc.get("description", "")),
    )


def scenario_from_dict(doc: dict, base_dir: Path | None = None) -> Scenario:
    """Build a Scenario from a parsed JSON document.

    Raises ScenarioError for schema problems and ParseError/LexError for
    unparseable lever scripts.
    """
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    years = doc.get("years")
    if (
        not isinstance(years, (list, tuple))
        or len(years) != 2
        or not all(isinstance(y, int) for y in years)
    ):
        raise ScenarioError("'years' must be [start, end] integers")
    levers = tuple(_lever_from_dict(d, base_dir) for d in doc.get("levers", []))
    values_doc = doc.get("values", {})
    if not isinstance(values_doc, dict):
        raise ScenarioError("'values' must be an object of {lever: {param: number}}")
    values: dict[tuple[str, str], float] = {}
    for lever_id, params in values_doc.items():
        if not isinstance(params, dict):
            raise ScenarioError(f"values for lever {lever_id!r} must be an object")
        for param, value in params.items():
            values[(str(lever_id), str(param))] = value
    return Scenario(
        levers=levers, values=values, first_year=years[0], last_year=years[1]
    )


def load_scenario(path: str | Path) -> Scenario:
    """Load a scenario JSON file; script_path entries resolve next to it."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: not valid JSON: {exc}") from exc
    return scenario_from_dict(doc, base_dir=path.parent)


def check_scenario(
    scenario: Scenario, vocabulary: Vocabulary
) -> dict[str, list[Violation]]:
    """Statically check every lever script against the vocabulary.

    Returns {lever_id: violations} for levers with problems (empty dict =
    clean). Each script is checked with its own declared input names.
    """
    problems: dict[str, list[Violation]] = {}
    for lever in scenario.levers:
        violations = check(lever.program, vocabulary, inputs=set(lever.inputs))
        if violations:
            problems[lever.id] = violations
    return problems
