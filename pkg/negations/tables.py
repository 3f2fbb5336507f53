from __future__ import annotations

from collections.abc import Sequence

from rich.table import Table

from negations.analysis import ClassificationReport
from negations.properties import PropertyResult


def property_table(results: Sequence[PropertyResult]) -> Table:
    table = Table(title="Properties")
    table.add_column("Category")
    table.add_column("Property")
    table.add_column("Cases", justify="right")
    table.add_column("Max error", justify="right")
    table.add_column("Result")

    for result in sorted(results, key=lambda result: (result.category, result.name)):
        if result.passed:
            status = "[bold][green]pass[/green][/bold]"
        else:
            status = f"[bold][red]FAIL[/red][/bold] {result.detail or ''}"
        table.add_row(
            result.category,
            result.name,
            str(result.cases),
            f"{result.max_error:.2e}",
            status,
        )
    return table


def report_table(report: ClassificationReport) -> Table:
    table = Table(title=f"{report.spec} at n={report.n}: {report.verdict.value}")
    for column in ("p", "N(p)", "N(N(p))"):
        table.add_column(column, justify="right")
    table.add_column("flags")

    for witness in report.witnesses:
        flags = [
            name
            for name, flag in witness.to_dict()["flags"].items()
            if flag
        ]
        table.add_row(
            f"{witness.p:.6f}",
            f"{witness.n_p:.6f}",
            f"{witness.nn_p:.6f}",
            ", ".join(flags) or "-",
        )
    return table
