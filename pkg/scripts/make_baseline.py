"""Regenerate data/baseline.csv: a deterministic 5-region, 2011-2050 baseline.

Consumption paths are simple linear growth curves per (region, sector).
End-of-life fates are dyadic shares (0.125 / 0.125 / 0.25 / 0.5) of the
waste produced by the package's own lifetime convolution, which makes the
file self-consistent: fates sum to convolved waste bit-for-bit, so an empty
scenario reproduces the baseline exactly. Production and trade columns are
plausible filler derived from totals.
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from policy_lab.engine import convolved_waste  # noqa: E402
from policy_lab.projection import (  # noqa: E402
    ProjectionSeries,
    load_vocabulary,
    serialize,
)

FIRST_YEAR = 2011
LAST_YEAR = 2050

# total plastics consumption in the first year, MT
REGION_BASE = {
    "china": 90.0,
    "eu30": 55.0,
    "nafta": 50.0,
    "seasia": 35.0,
    "row": 110.0,
}

# linear growth per year, as a fraction of the first-year value
REGION_GROWTH = {
    "china": 0.030,
    "eu30": 0.008,
    "nafta": 0.010,
    "seasia": 0.035,
    "row": 0.025,
}

SECTOR_SHARE = {
    "consumptionPackagingMT": 0.32,
    "consumptionAgricultureMT": 0.035,
    "consumptionHealthcareMT": 0.025,
    "consumptionConstructionMT": 0.17,
    "consumptionTransportMT": 0.07,
    "consumptionIndustrialMT": 0.06,
    "consumptionTextilesMT": 0.11,
    "consumptionElectronicsMT": 0.06,
    "consumptionHouseholdMT": 0.09,
    "consumptionOtherMT": 0.07,
}

# dyadic fate shares, in declared fate order; left-to-right summation of
# (s*w) partial sums is exact in IEEE754 for any waste w
FATE_SHARE = [
    ("eolRecyclingMT", 0.125),
    ("eolIncinerationMT", 0.125),
    ("eolLandfillMT", 0.25),
    ("eolMismanagedMT", 0.5),
]


def consumption(region: str, sector: str, year: int) -> float:
    base = REGION_BASE[region] * SECTOR_SHARE[sector]
    return base * (1.0 + REGION_GROWTH[region] * (year - FIRST_YEAR))


def main():
    vocabulary = load_vocabulary((REPO / "data" / "vocabulary.json").read_text())
    sectors = vocabulary.consumption_sectors()
    years = range(FIRST_YEAR, LAST_YEAR + 1)
    values: dict[tuple[str, int, str], float] = {}

    for region in vocabulary.region_ids:
        for year in years:
            for sector in sectors:
                values[(region, year, sector)] = consumption(region, sector, year)

    for region in vocabulary.region_ids:

        def consumption_at(sector: str, y: int, _region=region) -> float:
            return consumption(_region, sector, max(y, FIRST_YEAR))

        for year in years:
            waste = convolved_waste(
                consumption_at, sectors, vocabulary.lifetimes, year
            )
            for fate, share in FATE_SHARE:
                values[(region, year, fate)] = waste * share

            total = sum(consumption(region, s, year) for s in sectors)
            values[(region, year, "productionVirginMT")] = total * 0.85
            values[(region, year, "productionRecycledMT")] = total * 0.15
            values[(region, year, "importGoodsMT")] = total * 0.10
            values[(region, year, "exportGoodsMT")] = total * 0.08
            values[(region, year, "importWasteMT")] = waste * 0.02
            values[(region, year, "exportWasteMT")] = waste * 0.03

    series = ProjectionSeries(
        vocabulary=vocabulary,
        first_year=FIRST_YEAR,
        last_year=LAST_YEAR,
        values=values,
    )
    out = REPO / "data" / "baseline.csv"
    out.write_text(serialize(series), encoding="utf-8")
    print(f"wrote {out} ({len(values)} cells)")


if __name__ == "__main__":
    main()
