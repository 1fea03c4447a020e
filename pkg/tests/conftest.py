import os
import time
from pathlib import Path

import pytest

from misleadviz.pipeline import GenerationConfig, generate_dataset
from misleadviz.tables import DataTable, enumerate_prepared_tables

TABLES = Path(__file__).parent / "data" / "tables"
CORPUS_COUNT = int(os.environ.get("MISLEADVIZ_CORPUS_COUNT", "2000"))


@pytest.fixture(scope="session")
def tables_dir():
    return TABLES


@pytest.fixture(scope="session")
def corpus(tmp_path_factory):
    """The acceptance-scale corpus, generated once per session."""
    out = tmp_path_factory.mktemp("corpus")
    cfg = GenerationConfig(str(TABLES), str(out), seed=7, count=CORPUS_COUNT, misleading_frac=0.78,
                           jobs=os.cpu_count())
    t0 = time.perf_counter()
    result = generate_dataset(cfg)
    result.seconds = time.perf_counter() - t0
    result.out = out
    return result


def prepared_of(name, headers, rows, i=0):
    return enumerate_prepared_tables(DataTable.from_rows(name, headers, rows))[i]


@pytest.fixture
def yearly():
    rows = [[str(2000 + i), f"{40 + 1.3 * i:.1f}", f"{100 + 7 * i}"] for i in range(12)]
    return DataTable.from_rows("yearly", ["Year", "GDP", "Population"], rows)


@pytest.fixture
def clubs():
    return prepared_of("clubs", ["Club", "Goals"], [["Ajax", "40"], ["PSV", "47"], ["AZ", "12"], ["Twente", "30"]])


@pytest.fixture
def shares():
    return prepared_of("shares", ["Party", "Share"], [["A", "25"], ["B", "30"], ["C", "45"]])
