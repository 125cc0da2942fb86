import json

import pytest

from dualspace import report


def record(task, trainer, window, compare, dim, dataset, value):
    return {
        "task": task,
        "trainer": trainer,
        "window": window,
        "dim": dim,
        "compare": compare,
        "dataset": dataset,
        "value": value,
    }


class TestAggregate:
    def test_mean_of_two(self):
        assert report.aggregate_task([0.4, 0.6]) == 0.5

    def test_single_is_identity(self):
        assert report.aggregate_task([0.37]) == 0.37

    def test_five_datasets_hand_sum(self):
        scores = [0.1, 0.2, 0.3, 0.4, 0.55]
        assert abs(report.aggregate_task(scores) - sum(scores) / 5) < 1e-15

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            report.aggregate_task([])


class TestConsolidate:
    def test_max_and_avg(self):
        cell = report.consolidate({100: 0.50, 200: 0.52, 300: 0.51})
        assert cell.max_score == 0.52
        assert abs(cell.avg_score - 0.51) < 1e-12
        assert cell.n_dims == 3
        assert cell.dims == (100, 200, 300)

    def test_single_dim(self):
        cell = report.consolidate({100: 0.4})
        assert cell.max_score == cell.avg_score == 0.4

    def test_permutation_invariant(self):
        a = report.consolidate({100: 0.1, 200: 0.9, 300: 0.5})
        b = report.consolidate({300: 0.5, 100: 0.1, 200: 0.9})
        assert a == b

    def test_invariant_avg_not_above_max(self):
        with pytest.raises(ValueError):
            report.ConsolidatedCell(max_score=0.4, avg_score=0.5, n_dims=2)

    def test_needs_at_least_one(self):
        with pytest.raises(ValueError):
            report.consolidate({})


def full_grid_records():
    records = []
    value = 0.1
    for task in ("similarity", "association", "analogy"):
        for trainer in ("sgns-cbow", "sgns-sg"):
            for window in (5, 50):
                for compare in ("WW", "WC", "CW", "CC"):
                    for dim in (100, 200, 300):
                        for dataset in ("d1", "d2"):
                            records.append(
                                record(task, trainer, window, compare, dim, dataset, value)
                            )
                            value = (value + 0.13) % 0.9
    return records


class TestGridAndRender:
    def test_build_grid_averages_datasets_then_consolidates(self):
        records = [
            record("similarity", "sgns-sg", 5, "WW", 100, "d1", 0.2),
            record("similarity", "sgns-sg", 5, "WW", 100, "d2", 0.4),
            record("similarity", "sgns-sg", 5, "WW", 200, "d1", 0.5),
            record("similarity", "sgns-sg", 5, "WW", 200, "d2", 0.5),
        ]
        grid = report.build_grid(records)
        cell = grid[("similarity", "sgns-sg", 5, "WW")]
        assert cell.dim_scores == (0.30000000000000004, 0.5)
        assert cell.max_score == 0.5
        assert cell.n_dims == 2

    def test_cell_format(self):
        grid = report.build_grid(
            [
                record("similarity", "sgns-cbow", 5, "WW", d, "d1", v)
                for d, v in ((100, 0.520), (200, 0.504), (300, 0.488))
            ]
        )
        text = report.render(grid, "markdown")
        assert "0.520 (0.504)" in text

    def test_one_cell_grid_single_row(self):
        grid = report.build_grid([record("analogy", "glove", 5, "SS", 100, "d1", 0.4)])
        lines = report.render(grid, "markdown").splitlines()
        assert len(lines) == 3  # header, separator, one data row
        assert "**0.400 (0.400)**" in lines[2]

    def test_twelve_row_grid_shape(self):
        grid = report.build_grid(full_grid_records())
        lines = report.render(grid, "markdown").splitlines()
        data_rows = lines[2:]
        assert len(data_rows) == 12  # 3 tasks x 2 trainers x 2 windows
        header_cols = [c.strip() for c in lines[0].strip("|").split("|")]
        assert header_cols == ["Task", "Trainer", "Window", "WW", "WC", "CW", "CC"]

    def test_missing_cells_render_as_dash(self):
        grid = report.build_grid(
            [
                record("similarity", "sgns-sg", 5, "WW", 100, "d1", 0.4),
                record("similarity", "sgns-sg", 50, "WC", 100, "d1", 0.3),
            ]
        )
        text = report.render(grid, "markdown")
        assert report.MISSING_CELL in text

    def test_bold_marks_task_block_best_and_underline_near(self):
        grid = report.build_grid(
            [
                record("similarity", "sgns-sg", 5, "WW", 100, "d1", 0.52),
                record("similarity", "sgns-sg", 5, "WC", 100, "d1", 0.51),
                record("similarity", "sgns-sg", 5, "CW", 100, "d1", 0.30),
            ]
        )
        text = report.render(grid, "markdown")
        assert "**0.520 (0.520)**" in text
        assert "<u>0.510 (0.510)</u>" in text
        assert "| 0.300 (0.300) |" in text

    def test_render_deterministic(self):
        records = full_grid_records()
        a = report.render(report.build_grid(records), "markdown")
        b = report.render(report.build_grid(list(reversed(records))), "markdown")
        assert a == b

    def test_unknown_format(self):
        grid = report.build_grid([record("analogy", "glove", 5, "SS", 100, "d1", 0.4)])
        with pytest.raises(ValueError, match="format"):
            report.render(grid, "html")

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            report.render_markdown({})


class TestCsvRoundTrip:
    def test_parse_back_equals_grid(self):
        grid = report.build_grid(full_grid_records())
        text = report.render(grid, "csv")
        assert report.parse_report_csv(text) == grid

    def test_lineage_columns_present(self):
        grid = report.build_grid(
            [
                record("similarity", "glove", 5, "SS", 100, "d1", 0.44),
                record("similarity", "glove", 5, "SS", 200, "d1", 0.4),
            ]
        )
        text = report.render(grid, "csv")
        row = text.splitlines()[1]
        assert "100;200" in row
        assert "0.44" in row

    def test_header_required(self):
        with pytest.raises(ValueError, match="header"):
            report.parse_report_csv("task,oops\n")


class TestReadResults:
    def test_reads_json_lines(self, tmp_path):
        path = tmp_path / "results.jsonl"
        recs = [record("analogy", "glove", 5, "SS", 100, "d1", 0.4)]
        path.write_text("\n".join(json.dumps(r) for r in recs) + "\n")
        assert report.read_results(path) == recs

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "results.jsonl"
        path.write_text('{"task": "analogy"}\nnot json\n')
        with pytest.raises(ValueError, match=":2:"):
            report.read_results(path)
