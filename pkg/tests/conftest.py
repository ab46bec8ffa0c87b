"""Shared fixtures: a small self-consistent toy baseline and the shipped data."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from policy_lab.engine import convolved_waste
from policy_lab.projection import (
    Attribute,
    ProjectionSeries,
    Region,
    Vocabulary,
    load_baseline,
    load_vocabulary,
)

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "data"
CORPUS = REPO / "corpus"

TOY_FIRST_YEAR = 2016
TOY_LAST_YEAR = 2025

# dyadic fate shares in declared fate order; partial sums are exact in IEEE754
FATE_SHARES = [
    ("eolRecyclingMT", 0.125),
    ("eolIncinerationMT", 0.125),
    ("eolLandfillMT", 0.25),
    ("eolMismanagedMT", 0.5),
]


def make_toy_vocabulary() -> Vocabulary:
    return Vocabulary(
        regions=(Region("alpha", "Alpha"), Region("beta", "Beta")),
        attributes=(
            Attribute("consumptionPackagingMT", "consumption-sector"),
            Attribute("consumptionTextilesMT", "consumption-sector"),
            Attribute("consumptionConstructionMT", "consumption-sector"),
            Attribute("eolRecyclingMT", "eol-fate"),
            Attribute("eolIncinerationMT", "eol-fate"),
            Attribute("eolLandfillMT", "eol-fate"),
            Attribute("eolMismanagedMT", "eol-fate"),
            Attribute("importWasteMT", "trade"),
        ),
        lifetimes={
            "consumptionPackagingMT": 1.0,
            "consumptionTextilesMT": 2.5,
            "consumptionConstructionMT": 3.0,
        },
    )


def toy_consumption(region: str, sector: str, year: int) -> float:
    """Deterministic, gently varying consumption paths for the toy baseline."""
    base = {"alpha": 100.0, "beta": 40.0}[region]
    share = {
        "consumptionPackagingMT": 0.5,
        "consumptionTextilesMT": 0.3,
        "consumptionConstructionMT": 0.2,
    }[sector]
    growth = {"alpha": 2.0, "beta": -0.5}[region]
    return base * share + growth * share * (year - TOY_FIRST_YEAR)


def make_toy_baseline(
    vocabulary: Vocabulary,
    first_year: int = TOY_FIRST_YEAR,
    last_year: int = TOY_LAST_YEAR,
) -> ProjectionSeries:
    """Self-consistent toy series: fates are dyadic shares of convolved waste."""
    sectors = vocabulary.consumption_sectors()
    years = range(first_year, last_year + 1)
    values: dict[tuple[str, int, str], float] = {}
    for region in vocabulary.region_ids:
        for year in years:
            for sector in sectors:
                values[(region, year, sector)] = toy_consumption(region, sector, year)
    for region in vocabulary.region_ids:

        def consumption_at(sector: str, y: int, _region=region) -> float:
            return toy_consumption(_region, sector, max(y, first_year))

        for year in years:
            waste = convolved_waste(
                consumption_at, sectors, vocabulary.lifetimes, year
            )
            for fate, share in FATE_SHARES:
                values[(region, year, fate)] = waste * share
            values[(region, year, "importWasteMT")] = waste * 0.02
    return ProjectionSeries(
        vocabulary=vocabulary,
        first_year=first_year,
        last_year=last_year,
        values=values,
    )


@pytest.fixture(scope="session")
def toy_vocabulary() -> Vocabulary:
    return make_toy_vocabulary()


@pytest.fixture(scope="session")
def toy_baseline(toy_vocabulary) -> ProjectionSeries:
    return make_toy_baseline(toy_vocabulary)


@pytest.fixture(scope="session")
def toy_baseline_40(toy_vocabulary) -> ProjectionSeries:
    return make_toy_baseline(toy_vocabulary, TOY_FIRST_YEAR, TOY_FIRST_YEAR + 39)


@pytest.fixture(scope="session")
def desk_vocabulary() -> Vocabulary:
    return load_vocabulary((DATA / "vocabulary.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def desk_baseline(desk_vocabulary) -> ProjectionSeries:
    return load_baseline(
        (DATA / "baseline.csv").read_text(encoding="utf-8"), desk_vocabulary
    )


def vocabulary_to_json(vocabulary: Vocabulary) -> str:
    return json.dumps(
        {
            "regions": [
                {"id": r.id, "display_name": r.display_name}
                for r in vocabulary.regions
            ],
            "attributes": [
                {"id": a.id, "kind": a.kind, "unit": a.unit, "group": a.group}
                for a in vocabulary.attributes
            ],
            "lifetimes": vocabulary.lifetimes,
        },
        indent=2,
    )


@pytest.fixture()
def toy_workspace(tmp_path, toy_vocabulary, toy_baseline):
    """On-disk copy of the toy data for CLI runs: baseline, vocabulary, scenarios."""
    from policy_lab.projection import serialize

    (tmp_path / "vocabulary.json").write_text(vocabulary_to_json(toy_vocabulary))
    (tmp_path / "baseline.csv").write_text(serialize(toy_baseline))
    (tmp_path / "empty.json").write_text(
        json.dumps(
            {"levers": [], "values": {}, "years": [TOY_FIRST_YEAR, TOY_LAST_YEAR]}
        )
    )
    return tmp_path


@pytest.fixture(scope="session")
def corpus_sources() -> dict[str, str]:
    sources = {
        path.name: path.read_text(encoding="utf-8")
        for path in sorted(CORPUS.glob("*.pol"))
    }
    assert len(sources) >= 20, "conformance corpus must hold at least 20 scripts"
    return sources
