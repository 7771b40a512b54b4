import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

TABLE1 = [0, 1, 2, 3, 4, 4, 4, 7, 10]


@pytest.fixture
def table1():
    return list(TABLE1)


@pytest.fixture
def write_csv(tmp_path):
    def _write(rows, name="records.csv", header="id,year,categories,citations,unit"):
        path = tmp_path / name
        path.write_text(header + "\n" + "".join(r + "\n" for r in rows), encoding="utf-8")
        return path

    return _write
