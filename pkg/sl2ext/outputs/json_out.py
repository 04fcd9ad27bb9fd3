"""Canonical JSON writer for Ext query results."""

from __future__ import annotations

import json
from typing import Any, Dict, Iterable, List, Mapping

SCHEMA_VERSION = 1

_REQUIRED = ("family", "p", "lambda", "mu", "dims", "cutoff")


def build_json_record(result: Mapping[str, Any]) -> Dict[str, Any]:
    """Return one record of the pinned schema; missing required fields are an error."""
    missing = [name for name in _REQUIRED if name not in result]
    if missing:
        raise KeyError(f"query result lacks {', '.join(missing)}")
    record: Dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "family": result["family"],
        "p": result["p"],
        "lambda": result["lambda"],
        "mu": result["mu"],
        "dims": list(result["dims"]),
        "cutoff": result["cutoff"],
        "bound": result.get("bound"),
        "block": result.get("block"),
        "key": result.get("key"),
    }
    if result.get("quantum"):
        record["quantum"] = dict(result["quantum"])
    return record


def dumps_record(result: Mapping[str, Any]) -> str:
    return json.dumps(build_json_record(result), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def dumps_records(results: Iterable[Mapping[str, Any]]) -> str:
    records: List[Dict[str, Any]] = [build_json_record(result) for result in results]
    return json.dumps(records, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
