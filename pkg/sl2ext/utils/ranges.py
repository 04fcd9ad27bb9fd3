"""Weight ranges for ``sl2ext table``."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Mapping

DEFAULT_MAX_CELLS = 10_000

_SPAN_RE = re.compile(r"^(?P<start>\d+)\s*\.\.\s*(?P<stop>\d+)$")


class RangeResolutionError(ValueError):
    """Raised when a weight range is malformed or the table would be too large."""


@dataclass(slots=True)
class TableRequest:
    lambdas: List[int]
    mus: List[int]

    @property
    def cells(self) -> int:
        return len(self.lambdas) * len(self.mus)


def parse_weight_range(text: str) -> List[int]:
    """``"7"``, ``"0..12"`` or comma-separated pieces of both, e.g. ``"1,4..6"``.

    Spans are inclusive; the result is sorted and free of duplicates.
    """
    if text is None or not str(text).strip():
        raise RangeResolutionError("weight range must not be empty")
    weights: set[int] = set()
    for piece in str(text).split(","):
        piece = piece.strip()
        match = _SPAN_RE.match(piece)
        if match:
            start, stop = int(match.group("start")), int(match.group("stop"))
            if start > stop:
                raise RangeResolutionError(f"range {piece!r} runs backwards")
            weights.update(range(start, stop + 1))
        elif piece.isdigit():
            weights.add(int(piece))
        else:
            raise RangeResolutionError(
                f"cannot read {piece!r}; use a weight like 7 or an inclusive span like 0..12"
            )
    return sorted(weights)


def resolve_table_request(cli_args: Mapping[str, object], config: Mapping[str, object]) -> TableRequest:
    lambdas = parse_weight_range(str(cli_args.get("lambda_range") or ""))
    mus = parse_weight_range(str(cli_args.get("mu_range") or ""))
    request = TableRequest(lambdas=lambdas, mus=mus)
    table_config = config.get("table", {}) if isinstance(config.get("table"), Mapping) else {}
    limit = int(table_config.get("max_cells", DEFAULT_MAX_CELLS))  # type: ignore[union-attr]
    if request.cells > limit:
        raise RangeResolutionError(
            f"table has {request.cells} cells; the limit is {limit} (table.max_cells)"
        )
    return request


def summarize_table_request(request: TableRequest) -> str:
    def span(values: List[int]) -> str:
        if values and values == list(range(values[0], values[-1] + 1)):
            return f"{values[0]}..{values[-1]}" if len(values) > 1 else str(values[0])
        return ",".join(str(value) for value in values)

    return f"λ ∈ {span(request.lambdas)}, μ ∈ {span(request.mus)} ({request.cells} cells)"
