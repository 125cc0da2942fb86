"""Consolidated score tables: per-task dataset means, then max/average over the
embedding-dimension axis, rendered as markdown and CSV.

Rows are (task, trainer, window), columns are compare methods; each cell shows
`max (avg)` over the dimensions trained for that cell. Missing cells render as
an em dash so absent runs never skew averages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .embedding import METHOD_ORDER, CompareMethod
from .evaluation import TASKS

TRAINER_ORDER = ("sgns-cbow", "sgns-sg", "glove")

# markdown markup thresholds: bold marks the task-block best max score,
# underline marks cells within this distance of it
UNDERLINE_MARGIN = 0.02

MISSING_CELL = "\u2014"  # em dash renders missing grid cells


@dataclass(frozen=True)
class ModelKey:
    trainer: str
    compare: str
    window: int
    dim: int


@dataclass(frozen=True)
class ConsolidatedCell:
    max_score: float
    avg_score: float
    n_dims: int
    dims: tuple[int, ...] = ()
    dim_scores: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.n_dims < 1:
            raise ValueError("a consolidated cell needs at least one dimension score")
        if self.avg_score > self.max_score + 1e-12:
            raise ValueError("avg_score cannot exceed max_score")


GridKey = tuple[str, str, int, str]  # (task, trainer, window, compare)
Grid = dict[GridKey, ConsolidatedCell]


def read_results(path) -> list[dict]:
    """Read the append-only results file: one JSON TaskScore record per line."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: malformed JSON line") from exc
    return records


def aggregate_task(scores: Sequence[float]) -> float:
    """Unweighted mean across the datasets of one task."""
    scores = list(scores)
    if not scores:
        raise ValueError("need at least one dataset score")
    return sum(scores) / len(scores)


def consolidate(cells: Mapping[int, float]) -> ConsolidatedCell:
    """Max and mean over the embedding-dimension axis; permutation invariant."""
    if not cells:
        raise ValueError("need at least one dimension score")
    dims = tuple(sorted(cells))
    scores = tuple(float(cells[d]) for d in dims)
    return ConsolidatedCell(
        max_score=max(scores),
        avg_score=sum(scores) / len(scores),
        n_dims=len(dims),
        dims=dims,
        dim_scores=scores,
    )


def build_grid(records: Iterable[dict]) -> Grid:
    """Aggregate raw result records into the consolidated (task, trainer,
    window, compare) grid: dataset mean first, then max/avg over dim."""
    by_cell: dict[tuple[str, str, int, str, int], dict[str, float]] = {}
    for rec in records:
        key = (
            rec["task"],
            rec["trainer"],
            int(rec["window"]),
            CompareMethod.parse(rec["compare"]).value,
            int(rec["dim"]),
        )
        by_cell.setdefault(key, {})[rec["dataset"]] = float(rec["value"])
    per_dim: dict[GridKey, dict[int, float]] = {}
    for (task, trainer, window, compare, dim), datasets in by_cell.items():
        per_dim.setdefault((task, trainer, window, compare), {})[dim] = aggregate_task(
            list(datasets.values())
        )
    return {key: consolidate(dims) for key, dims in per_dim.items()}


def _sorted_axes(grid: Grid):
    tasks = [t for t in TASKS if any(k[0] == t for k in grid)]
    trainers = [t for t in TRAINER_ORDER if any(k[1] == t for k in grid)]
    trainers += sorted({k[1] for k in grid} - set(TRAINER_ORDER))
    windows = sorted({k[2] for k in grid})
    compares = [m.value for m in METHOD_ORDER if any(k[3] == m.value for k in grid)]
    return tasks, trainers, windows, compares


def _format_cell(cell: ConsolidatedCell | None, bold: bool, underline: bool) -> str:
    if cell is None:
        return MISSING_CELL
    text = f"{cell.max_score:.3f} ({cell.avg_score:.3f})"
    if bold:
        return f"**{text}**"
    if underline:
        return f"<u>{text}</u>"
    return text


def render_markdown(grid: Grid) -> str:
    """Markdown table; within each task block the best max score is bold and
    cells within 0.02 of it are underlined."""
    if not grid:
        raise ValueError("empty grid")
    tasks, trainers, windows, compares = _sorted_axes(grid)
    lines = [
        "| Task | Trainer | Window | " + " | ".join(compares) + " |",
        "| --- | --- | --- | " + " | ".join("---" for _ in compares) + " |",
    ]
    for task in tasks:
        block = {k: v for k, v in grid.items() if k[0] == task}
        best = max(v.max_score for v in block.values())
        for trainer in trainers:
            for window in windows:
                row_cells = [
                    grid.get((task, trainer, window, compare)) for compare in compares
                ]
                if all(c is None for c in row_cells):
                    continue
                rendered = []
                for cell in row_cells:
                    is_best = cell is not None and cell.max_score == best
                    near = (
                        cell is not None
                        and not is_best
                        and best - cell.max_score <= UNDERLINE_MARGIN
                    )
                    rendered.append(_format_cell(cell, is_best, near))
                lines.append(
                    f"| {task} | {trainer} | {window} | " + " | ".join(rendered) + " |"
                )
    return "\n".join(lines) + "\n"


CSV_HEADER = "task,trainer,window,compare,max_score,avg_score,n_dims,dims,dim_scores"


def render_csv(grid: Grid) -> str:
    """CSV with full-precision scores and per-dimension lineage columns."""
    if not grid:
        raise ValueError("empty grid")
    tasks, trainers, windows, compares = _sorted_axes(grid)
    lines = [CSV_HEADER]
    for task in tasks:
        for trainer in trainers:
            for window in windows:
                for compare in compares:
                    cell = grid.get((task, trainer, window, compare))
                    if cell is None:
                        continue
                    lines.append(
                        ",".join(
                            [
                                task,
                                trainer,
                                str(window),
                                compare,
                                repr(cell.max_score),
                                repr(cell.avg_score),
                                str(cell.n_dims),
                                ";".join(str(d) for d in cell.dims),
                                ";".join(repr(s) for s in cell.dim_scores),
                            ]
                        )
                    )
    return "\n".join(lines) + "\n"


def render(grid: Grid, format: str = "markdown") -> str:
    if format == "markdown":
        return render_markdown(grid)
    if format == "csv":
        return render_csv(grid)
    raise ValueError(f"unknown format {format!r}; expected markdown or csv")


def parse_report_csv(text: str) -> Grid:
    """Rebuild the grid from `render_csv` output; exact round trip."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or unexpected CSV header")
    grid: Grid = {}
    for line in lines[1:]:
        task, trainer, window, compare, mx, avg, n_dims, dims, dim_scores = line.split(",")
        grid[(task, trainer, int(window), compare)] = ConsolidatedCell(
            max_score=float(mx),
            avg_score=float(avg),
            n_dims=int(n_dims),
            dims=tuple(int(d) for d in dims.split(";") if d),
            dim_scores=tuple(float(s) for s in dim_scores.split(";") if s),
        )
    return grid
