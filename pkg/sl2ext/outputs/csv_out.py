"""Long-format CSV: one ``lambda,mu,q,dim`` row per degree."""

from __future__ import annotations

import csv
import io
from typing import Any, Iterable, Mapping

HEADER = ("lambda", "mu", "q", "dim")


def _weight(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ";".join(str(item) for item in value)
    return str(value)


def build_csv(results: Iterable[Mapping[str, Any]], *, sparse: bool = False) -> str:
    """Rows ordered as given; a zero vector still yields ``q = 0, dim = 0`` unless ``sparse``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(HEADER)
    for result in results:
        dims = list(result["dims"]) or [0]
        for q, dim in enumerate(dims):
            if sparse and not dim:
                continue
            writer.writerow((_weight(result["lambda"]), _weight(result["mu"]), q, dim))
    return buffer.getvalue()
