"""Monte Carlo success rates and the CSV table."""

import csv
from pathlib import Path

import pytest

from lrckit.core.field import field_new
from lrckit.errors import InvalidParametersError
from lrckit.services.construction import GroupPlan
from lrckit.services.experiment import CSV_HEADER, MonteCarloRow, monte_carlo, write_csv

PLAN = GroupPlan((4, 4), 3, 2)


def test_one_row_per_field() -> None:
    rows = monte_carlo(8, 4, 3, 2, PLAN, [field_new(2), field_new(13)], trials=10, seed=1)
    assert [row.q for row in rows] == [2, 13]
    for row in rows:
        assert row.trials == 10
        assert 0 <= row.successes <= 10
        assert row.rate == row.successes / 10
        assert row.bound == 4
        assert row.d_opt == 4
        assert 0.0 <= row.mean_distance <= 4.0


def test_same_seed_same_table() -> None:
    fields = [field_new(5)]
    assert monte_carlo(8, 4, 3, 2, PLAN, fields, 8, 3) == monte_carlo(8, 4, 3, 2, PLAN, fields, 8, 3)


def test_worker_count_does_not_change_results() -> None:
    fields = [field_new(7)]
    serial = monte_carlo(8, 4, 3, 2, PLAN, fields, 6, 9, workers=1)
    pooled = monte_carlo(8, 4, 3, 2, PLAN, fields, 6, 9, workers=2)
    assert serial == pooled


def test_arguments_validated() -> None:
    with pytest.raises(InvalidParametersError):
        monte_carlo(8, 4, 3, 2, PLAN, [field_new(5)], 0, 1)
    with pytest.raises(InvalidParametersError):
        monte_carlo(9, 4, 3, 2, PLAN, [field_new(5)], 5, 1)
    with pytest.raises(InvalidParametersError):
        monte_carlo(8, 7, 3, 2, PLAN, [field_new(5)], 5, 1)


def test_standard_error() -> None:
    row = MonteCarloRow(q=5, trials=100, successes=50, rate=0.5, mean_distance=3.0, bound=4, d_opt=4)
    assert row.standard_error == pytest.approx(0.05)


def test_csv_table(tmp_path: Path) -> None:
    rows = monte_carlo(8, 4, 3, 2, PLAN, [field_new(13)], trials=4, seed=0)
    path = tmp_path / "rates.csv"
    write_csv(path, rows)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        assert tuple(reader.fieldnames or ()) == CSV_HEADER
        records = list(reader)
    assert len(records) == 1
    assert records[0]["q"] == "13"
    assert float(records[0]["rate"]) == pytest.approx(rows[0].rate)
