"""Writes lfs_aggregates.csv: illustrative labor-survey cell totals.

The totals are invented for testing the shock pipeline. Sector factors
follow the qualitative pattern of the 2020 lockdown (hospitality, personal
services and trade hit hardest; public sector and ICT growing) and are not
survey estimates. Rerun with: python3 data/make_lfs.py
"""

import csv
import pathlib

import numpy as np

RANGES = [
    ("A", 1, 3), ("B", 5, 9), ("C", 10, 33), ("D", 35, 35), ("E", 36, 39),
    ("F", 41, 43), ("G", 45, 47), ("H", 49, 53), ("I", 55, 56), ("J", 58, 63),
    ("K", 64, 66), ("L", 68, 68), ("M", 69, 75), ("N", 77, 82), ("O", 84, 84),
    ("P", 85, 85), ("Q", 86, 88), ("R", 90, 93), ("S", 94, 96), ("T", 97, 98),
    ("U", 99, 99),
]

# Employment weights per division; everything else weighs 1.
DIVISION_WEIGHT = {
    0: 0.5, 1: 8, 10: 3, 13: 2, 14: 5, 15: 2, 25: 2, 29: 2, 41: 3, 43: 3,
    45: 2, 46: 5, 47: 9, 49: 4, 55: 1.5, 56: 4, 62: 2, 64: 2, 84: 7, 85: 6,
    86: 4, 96: 2, 97: 0.2, 98: 0.2, 99: 0.2,
}

# Monthly gross wage level relative to 36,000 MKD.
SECTION_LEVEL = {
    "A": 0.70, "B": 1.10, "C": 0.85, "D": 1.40, "E": 0.95, "F": 0.90, "G": 0.85,
    "H": 0.95, "I": 0.70, "J": 1.60, "K": 1.50, "L": 1.00, "M": 1.30, "N": 0.80,
    "O": 1.20, "P": 1.10, "Q": 1.10, "R": 0.80, "S": 0.75, "T": 0.60, "U": 1.20,
}

# Annualized wage-bill factor per section for the shocked period.
WAGE_FACTOR = {
    "A": 0.80, "B": 1.02, "C": 0.95, "D": 1.08, "E": 1.04, "F": 0.80, "G": 0.65,
    "H": 0.75, "I": 0.30, "J": 1.10, "K": 1.08, "L": 0.90, "M": 1.04, "N": 0.55,
    "O": 1.08, "P": 1.07, "Q": 1.10, "R": 0.40, "S": 0.35, "T": 0.60, "U": 1.00,
}
# Textiles, apparel and leather lost export orders.
DIVISION_FACTOR = {13: 0.55, 14: 0.50, 15: 0.55}
YOUTH_PENALTY = 0.15

SELFEMP_FACTOR = {
    "A": 0.65, "B": 0.95, "C": 0.65, "D": 1.00, "E": 0.90, "F": 0.65, "G": 0.55,
    "H": 0.60, "I": 0.25, "J": 0.95, "K": 0.95, "L": 0.80, "M": 0.80, "N": 0.65,
    "O": 1.00, "P": 0.70, "Q": 0.90, "R": 0.35, "S": 0.35, "T": 0.60, "U": 1.00,
}
SELFEMP_COUNT = {
    "A": 33000, "B": 300, "C": 9000, "D": 150, "E": 400, "F": 8000, "G": 29000,
    "H": 12000, "I": 12000, "J": 2500, "K": 600, "L": 700, "M": 5000, "N": 1500,
    "O": 0, "P": 900, "Q": 1800, "R": 1200, "S": 8000, "T": 200, "U": 0,
}

# Same split in every sector, as in the synthetic generator.
FEMALE_SHARE = 0.45
BAND_SHARE = {"youth_15_24": 0.10, "adult_25_49": 0.60, "elderly_50_64": 0.30}
TOTAL_EMPLOYEES = 720_000
BASE_WAGE = 36_000


def divisions():
    yield 0, None
    for section, first, last in RANGES:
        for d in range(first, last + 1):
            yield d, section


def main():
    rng = np.random.default_rng(2020)
    divs = list(divisions())
    weights = np.array([DIVISION_WEIGHT.get(d, 1.0) for d, _ in divs])
    weights /= weights.sum()
    rows = []
    for (d, section), w in zip(divs, weights):
        level = SECTION_LEVEL.get(section, 1.0)
        factor = DIVISION_FACTOR.get(d, WAGE_FACTOR.get(section, 0.95))
        female = FEMALE_SHARE
        for sex, sex_share in (("male", 1 - female), ("female", female)):
            for band, band_share in BAND_SHARE.items():
                count = int(round(TOTAL_EMPLOYEES * w * sex_share * band_share))
                if d in (97, 98, 99) and band == "youth_15_24":
                    count = 0
                wage = BASE_WAGE * level * (0.75 if band == "youth_15_24" else 1.0)
                base_income = int(round(count * wage * 12))
                f = factor - (YOUTH_PENALTY if band == "youth_15_24" else 0.0)
                f *= 1.0 + rng.normal(0.0, 0.02)
                shocked_count = int(round(count * min(1.0, f + 0.05)))
                shocked_income = int(round(base_income * f * 0.75))
                rows.append(("wage", d, sex, band, base_income, count, shocked_income, shocked_count))
    for section, _, _ in RANGES:
        count = SELFEMP_COUNT[section]
        base_income = int(round(count * 20_000 * SECTION_LEVEL[section] * 12))
        f = SELFEMP_FACTOR[section] * (1.0 + rng.normal(0.0, 0.02))
        rows.append(("selfemp", section, "", "", base_income, count,
                     int(round(base_income * f * 0.75)), int(round(count * min(1.0, f + 0.05)))))

    out = pathlib.Path(__file__).with_name("lfs_aggregates.csv")
    with out.open("w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["period", "quarters", "cell_type", "nace", "sex", "age_band", "income", "count"])
        for period, quarters, income_col, count_col in (("2019", 4, 4, 5), ("2020", 3, 6, 7)):
            for r in rows:
                wr.writerow([period, quarters, r[0], r[1], r[2], r[3], r[income_col], r[count_col]])


if __name__ == "__main__":
    main()
