"""Terminal renderer for Ext results and verification reports."""

from __future__ import annotations

import io
from typing import Any, Iterable, List, Mapping, Sequence

try:  # pragma: no cover - optional dependency
    from rich.console import Console
    from rich.panel import Panel
    from rich.table import Table
except ImportError:  # pragma: no cover - optional dependency
    Console = None  # type: ignore
    Panel = None  # type: ignore
    Table = None  # type: ignore

from .json_out import build_json_record


def _rich_available(use_rich: bool) -> bool:
    return bool(use_rich and Console and Table and Panel)


def _header(record: Mapping[str, Any]) -> str:
    quantum = record.get("quantum")
    where = f"l={quantum['l']}, p={quantum['p']}" if quantum else f"p={record['p']}"
    return f"sl2ext · {record['family']} · {where} · λ={record['lambda']} μ={record['mu']}"


def _footer(record: Mapping[str, Any]) -> str:
    return f"cutoff={record['cutoff']} bound={record.get('bound')} block={record.get('block')} key={record.get('key')}"


def render_result(result: Mapping[str, Any], *, use_rich: bool = True) -> str:
    record = build_json_record(result)
    if _rich_available(use_rich):
        buffer = io.StringIO()
        console = Console(record=True, file=buffer, force_terminal=True)
        console.print(Panel.fit(f"[bold]{_header(record)}[/bold]", border_style="magenta"))
        table = Table(show_header=True, header_style="bold cyan", box=None)
        table.add_column("q", justify="right")
        table.add_column("dim Ext^q", justify="right")
        for q, dim in enumerate(record["dims"]):
            table.add_row(str(q), str(dim))
        if not table.rows:
            table.add_row("all", "0")
        console.print(table)
        console.print(f"[dim]{_footer(record)}[/dim]")
        return console.export_text(styles=True)

    lines = [_header(record), "-" * len(_header(record))]
    if record["dims"]:
        lines.extend(f"Ext^{q}: {dim}" for q, dim in enumerate(record["dims"]))
    else:
        lines.append("Ext^q = 0 in every degree")
    lines.append(_footer(record))
    return "\n".join(lines)


def render_table(results: Sequence[Mapping[str, Any]], *, title: str = "", use_rich: bool = True) -> str:
    records = [build_json_record(result) for result in results]
    if _rich_available(use_rich):
        buffer = io.StringIO()
        console = Console(record=True, file=buffer, force_terminal=True)
        if title:
            console.print(Panel.fit(f"[bold]sl2ext[/bold] · {title}", border_style="magenta"))
        table = Table(show_header=True, header_style="bold cyan", box=None)
        for column in ("λ", "μ", "dims", "cutoff"):
            table.add_column(column, justify="right")
        for record in records:
            table.add_row(str(record["lambda"]), str(record["mu"]), _dims_text(record["dims"]), str(record["cutoff"]))
        console.print(table)
        return console.export_text(styles=True)

    lines: List[str] = []
    if title:
        lines.extend([f"sl2ext · {title}", ""])
    for record in records:
        lines.append(f"λ={record['lambda']} μ={record['mu']}: {_dims_text(record['dims'])} (cutoff {record['cutoff']})")
    return "\n".join(lines)


def render_report(name: str, lines: Iterable[str], passed: bool, *, use_rich: bool = True) -> str:
    status = "PASS" if passed else "FAIL"
    body = list(lines)
    if _rich_available(use_rich):
        buffer = io.StringIO()
        console = Console(record=True, file=buffer, force_terminal=True)
        colour = "green" if passed else "red"
        console.print(Panel.fit(f"[bold]sl2ext verify[/bold] · {name} · [{colour}]{status}[/{colour}]"))
        for line in body:
            console.print(line, markup=False)
        return console.export_text(styles=True)
    return "\n".join([f"sl2ext verify · {name} · {status}", *body])


def _dims_text(dims: Sequence[int]) -> str:
    return "(" + ", ".join(str(dim) for dim in dims) + ")" if dims else "0"
