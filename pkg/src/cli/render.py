"""
Output renderers. Human output is plain text or rich tables without color;
machine output is one JSON object per run. Both go to stdout.
"""
import json
from fractions import Fraction
from typing import Any

import typer
from rich.console import Console
from rich.table import Table

from ..core.models import CountResult, SearchReport, decimal_text
from ..core.table import PercentMatch, TableReport, TableStatus

_STATUS_MARK = {
    TableStatus.PASS: "ok",
    TableStatus.PASS_BY_TENSOR: "ok (product)",
    TableStatus.FAIL: "FAIL",
    TableStatus.SKIPPED: "skipped",
}


def _console() -> Console:
    return Console(width=120, color_system=None, highlight=False, soft_wrap=False)


def emit_json(payload: Any) -> None:
    typer.echo(json.dumps(payload, indent=2, sort_keys=True))


def fraction_payload(value: Fraction, places: int = 10) -> dict:
    return {
        "numerator": value.numerator,
        "denominator": value.denominator,
        "fraction": str(value),
        "decimal": decimal_text(value, places),
    }


def count_line_text(result: CountResult, timing: bool) -> str:
    ratio = result.ratio
    text = f"n={result.n} count={result.count} ratio={ratio} ({decimal_text(ratio, 10)})"
    if timing:
        text += f" elapsed_ms={result.elapsed_ms:.3f}"
    return text


def search_payload(report: SearchReport) -> dict:
    return {
        "r": report.r,
        "pattern": list(report.pattern.offsets),
        "bound": report.bound,
        "passing": list(report.passing),
        "best": report.best,
        "examined": report.examined,
        "diagnostics": [d.model_dump(mode="json") for d in report.diagnostics],
    }


def print_search(report: SearchReport, percents: dict[int, str]) -> None:
    typer.echo(f"r={report.r} {report.pattern.label()} bound={report.bound} examined={report.examined}")
    if not report.passing:
        typer.echo("no passing modulus")
        return
    table = Table(show_header=True)
    table.add_column("m", justify="right")
    table.add_column("% of random", justify="right")
    table.add_column("longest run", justify="right")
    runs = {d.modulus: d.longest_run for d in report.diagnostics}
    for m in report.passing:
        table.add_row(str(m), percents[m], str(runs[m]))
    _console().print(table)
    typer.echo(f"best: {report.best}")


def table_payload(report: TableReport) -> dict:
    return {
        "limit": report.limit,
        "rows": [
            {
                "k": row.entry.k,
                "r": row.entry.r,
                "m": row.entry.m,
                "factors": None if row.entry.factors is None else [f.model_dump() for f in row.entry.factors],
                "status": row.status.value,
                "printed_percent": row.entry.printed,
                "percent": row.percent,
                "percent_match": row.percent_match.value,
                "brute_confirmed": row.brute_confirmed,
            }
            for row in report.rows
        ],
    }


def print_table(report: TableReport) -> None:
    """Rows k, columns r; each cell shows m over its percentage of the random count."""
    rs = sorted({row.entry.r for row in report.rows})
    ks = sorted({row.entry.k for row in report.rows})
    cells = {(row.entry.k, row.entry.r): row for row in report.rows}

    table = Table(show_header=True, show_lines=True)
    table.add_column("k", justify="right")
    for r in rs:
        table.add_column(f"r={r}", justify="center")
    for k in ks:
        line = [str(k)]
        for r in rs:
            row = cells.get((k, r))
            if row is None:
                line.append("")
                continue
            entry = row.entry
            label = str(entry.m) if entry.factors is None else "x".join(str(f.m) for f in entry.factors)
            line.append(f"{label}\n{entry.printed}%\n{_STATUS_MARK[row.status]}")
        table.add_row(*line)
    _console().print(table)

    for row in report.rows:
        if row.percent_match == PercentMatch.MISMATCH:
            e = row.entry
            typer.echo(f"percentage mismatch: k={e.k} r={e.r} m={e.m} printed {e.printed}, computed {row.percent}")
    failures = report.failures
    typer.echo(f"failures: {len(failures)}")
