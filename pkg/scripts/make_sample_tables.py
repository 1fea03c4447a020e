"""Write the deterministic sample tables used by the tests and the acceptance run.

    python3 scripts/make_sample_tables.py [OUT_DIR]
"""

import csv
import random
import sys
from pathlib import Path

COUNTRIES = ["France", "Germany", "Italy", "Spain", "Portugal", "Poland", "Sweden", "Norway",
             "Japan", "Brazil", "Canada", "Mexico", "Kenya", "India", "Chile", "Egypt"]
CLUBS = ["Arsenal", "Benfica", "Celtic", "Dortmund", "Everton", "Feyenoord", "Galatasaray", "Hajduk",
         "Inter", "Juventus", "Lazio", "Monaco"]
PARTIES = ["Labour", "Conservative", "Liberal", "Green", "Other"]
SOURCES = ["Coal", "Gas", "Nuclear", "Hydro", "Wind", "Solar"]
MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August", "September",
          "October", "November", "December"]
INDICATORS = [
    ("GDP per capita", 8000, 60000, 0.03, 0),
    ("Life expectancy", 62, 83, 0.002, 1),
    ("CO2 emissions (t per capita)", 1, 15, 0.02, 2),
    ("Population (millions)", 5, 200, 0.01, 1),
    ("Unemployment rate", 3, 20, 0.05, 1),
    ("Literacy rate", 70, 99, 0.003, 1),
    ("Health spending per capita", 200, 6000, 0.04, 0),
    ("Electricity access", 40, 100, 0.01, 1),
]


def _write(out: Path, name: str, header, rows) -> None:
    with open(out / f"{name}.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _walk(rng, start, drift, n, noise=0.02):
    out, v = [], start
    for _ in range(n):
        out.append(v)
        v *= 1 + drift + rng.uniform(-noise, noise)
    return out


def country_panels(rng, out):
    for k, (name, lo, hi, drift, dec) in enumerate(INDICATORS):
        years = list(range(1995 + k, 2021))
        countries = rng.sample(COUNTRIES, 6)
        rows = []
        for c in countries:
            series = _walk(rng, rng.uniform(lo, hi * 0.8), drift, len(years), noise=drift + 0.005)
            rows += [[c, y, f"{min(v, hi) if 'rate' in name or 'access' in name or 'expectancy' in name else v:.{dec}f}"]
                     for y, v in zip(years, series)]
        _write(out, f"owid_{k:02d}_{name.split(' (')[0].lower().replace(' ', '_')}", ["Country", "Year", name], rows)


def wide_country_pairs(rng, out):
    for k in range(6):
        years = list(range(2000 + k, 2016 + k))
        a, b = rng.sample(INDICATORS, 2)
        rows = []
        sa = _walk(rng, rng.uniform(a[1], a[2] * 0.6), a[3], len(years))
        sb = _walk(rng, rng.uniform(b[1], b[2] * 0.6), b[3], len(years))
        for y, va, vb in zip(years, sa, sb):
            rows.append([y, f"{va:.{a[4]}f}", f"{vb:.{b[4]}f}"])
        _write(out, f"country_profile_{k:02d}", ["Year", a[0], b[0]], rows)


def club_seasons(rng, out):
    for k in range(8):
        clubs = rng.sample(CLUBS, 7)
        seasons = list(range(2012, 2022))
        rows = []
        for c in clubs:
            for s in seasons:
                played = 38
                wins = rng.randint(8, 28)
                draws = rng.randint(0, played - wins)
                rows.append([c, s, wins, draws, played - wins - draws, f"{100 * wins / played:.1f}%"])
        _write(out, f"league_{k:02d}", ["Club", "Season", "Wins", "Draws", "Losses", "Win ratio"], rows)


def election_shares(rng, out):
    for k in range(6):
        years = list(range(1990 + k, 2023, 4))
        rows = []
        for y in years:
            raw = [rng.uniform(5, 40) for _ in PARTIES]
            total = sum(raw)
            shares = [round(100 * r / total, 1) for r in raw]
            shares[-1] = round(100 - sum(shares[:-1]), 1)
            rows += [[y, p, f"{s:.1f}"] for p, s in zip(PARTIES, shares)]
        _write(out, f"election_{k:02d}", ["Year", "Party", "Vote share (%)"], rows)


def energy_mix(rng, out):
    for k in range(6):
        countries = rng.sample(COUNTRIES, 3)
        rows = []
        for c in countries:
            for y in (2010, 2015, 2020):
                raw = [rng.uniform(1, 30) for _ in SOURCES]
                shares = [r / sum(raw) for r in raw]
                rows += [[c, y, s, f"{v:.4f}"] for s, v in zip(SOURCES, shares)]
        # fractions rounded to four places sum to 1 within rounding
        _write(out, f"energy_mix_{k:02d}", ["Country", "Year", "Source", "Share of electricity"], rows)


def survey_percentages(rng, out):
    topics = ["Internet users", "Smartphone ownership", "Trust in government", "Urban population",
              "Forest area", "Women in parliament", "Vaccination coverage", "Renewable share"]
    for k, topic in enumerate(topics):
        countries = rng.sample(COUNTRIES, rng.randint(4, 8))
        rows = [[c, f"{rng.uniform(15, 95):.1f}%"] for c in countries]
        _write(out, f"survey_{k:02d}", ["Country", topic], rows)


def monthly(rng, out):
    for k in range(6):
        start = 2018 + k % 3
        n = rng.randint(12, 24)
        rows = []
        visitors = _walk(rng, rng.uniform(2000, 9000), 0.01, n, 0.08)
        sales = _walk(rng, rng.uniform(100, 900), 0.005, n, 0.06)
        for i in range(n):
            y, m = start + (i // 12), i % 12 + 1
            rows.append([f"{y}-{m:02d}", f"{visitors[i]:.0f}", f"{sales[i]:.1f}"])
        _write(out, f"monthly_{k:02d}", ["Month", "Visitors", "Revenue"], rows)


def climate(rng, out):
    cities = ["Lisbon", "Oslo", "Nairobi", "Lima", "Osaka", "Perth", "Quito", "Seville"]
    for k in range(6):
        city = cities[k]
        base = rng.uniform(5, 22)
        rows = []
        for i, m in enumerate(MONTHS):
            temp = base + 8 * ((6 - abs(i - 6)) / 6) + rng.uniform(-1, 1)
            rain = rng.uniform(5, 180)
            rows.append([m, f"{temp:.1f}", f"{rain:.0f}"])
        _write(out, f"climate_{city.lower()}", ["Month", "Mean temperature", "Rainfall (mm)"], rows)


def irregular_years(rng, out):
    for k in range(5):
        years = sorted(rng.sample(range(1900, 2021, 5), 7))
        pop = _walk(rng, rng.uniform(1, 50), 0.12, len(years), 0.05)
        rows = [[y, f"{p:.2f}"] for y, p in zip(years, pop)]
        _write(out, f"census_{k:02d}", ["Census year", "Population (millions)"], rows)


def weekly(rng, out):
    import datetime as dt
    for k in range(5):
        start = dt.date(2020 + k % 3, 1, 6) + dt.timedelta(days=7 * k)
        n = rng.randint(8, 16)
        cases = _walk(rng, rng.uniform(50, 5000), 0.0, n, 0.25)
        rows = [[(start + dt.timedelta(days=7 * i)).isoformat(), f"{c:.0f}"] for i, c in enumerate(cases)]
        _write(out, f"weekly_{k:02d}", ["Week starting", "Reported cases"], rows)


def players(rng, out):
    first = ["Ana", "Ben", "Carl", "Dina", "Eli", "Fay", "Gus", "Hana", "Ivo", "Jo", "Kai", "Lea"]
    for k in range(5):
        names = rng.sample(first, 8)
        rows = [[n + " " + chr(65 + i), rng.choice(CLUBS), rng.randint(1, 30), rng.randint(10, 40)]
                for i, n in enumerate(names)]
        _write(out, f"scorers_{k:02d}", ["Player", "Club", "Goals", "Appearances"], rows)


def yearly_totals(rng, out):
    metrics = [("Passengers (thousands)", 500, 0.04), ("Exports (USD millions)", 1200, 0.05),
               ("Tourist arrivals", 80000, 0.03), ("Patent filings", 900, 0.06),
               ("Wheat yield (t/ha)", 3.1, 0.01), ("Rail network (km)", 4200, 0.004)]
    for k, (name, start, drift) in enumerate(metrics):
        years = list(range(1999 + k, 2019 + k))
        series = _walk(rng, start * rng.uniform(0.8, 1.2), drift, len(years), drift)
        dec = 2 if start < 10 else 0
        rows = [[y, f"{v:,.{dec}f}" if dec == 0 else f"{v:.{dec}f}"] for y, v in zip(years, series)]
        _write(out, f"series_{k:02d}", ["Year", name], rows)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0] if argv else Path(__file__).resolve().parents[1] / "tests" / "data" / "tables")
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240501)
    for make in (country_panels, wide_country_pairs, club_seasons, election_shares, energy_mix,
                 survey_percentages, monthly, climate, irregular_years, weekly, players, yearly_totals):
        make(rng, out)
    print(f"{len(list(out.glob('*.csv')))} tables in {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
