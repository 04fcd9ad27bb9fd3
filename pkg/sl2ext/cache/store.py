"""Line-delimited JSON cache of Ext vectors keyed by canonical queries."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Mapping, Tuple

from .. import ENGINE_VERSION
from ..engine.modules import QueryKey, Vector

logger = logging.getLogger(__name__)


class CacheFormatError(ValueError):
    """Raised when a cache file cannot be read at all."""


@dataclass(slots=True)
class CacheRecord:
    """One cached untruncated vector; ``support`` is the first degree past its last nonzero entry."""

    key: QueryKey
    dims: Vector
    engine: str = ENGINE_VERSION

    @property
    def support(self) -> int:
        return len(self.dims)

    @property
    def fingerprint(self) -> str:
        return _fingerprint(self.key.to_dict())

    def to_dict(self) -> dict:
        payload = self.key.to_dict()
        payload.update(
            {
                "dims": list(self.dims),
                "support": self.support,
                "engine": self.engine,
                "fingerprint": self.fingerprint,
            }
        )
        return payload

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "CacheRecord":
        key = QueryKey.from_dict(payload)
        dims = payload.get("dims")
        if not isinstance(dims, list) or not all(isinstance(value, int) and value >= 0 for value in dims):
            raise ValueError("dims must be a list of natural numbers")
        record = cls(key=key, dims=tuple(dims), engine=str(payload.get("engine", "")))
        if payload.get("fingerprint") != record.fingerprint:
            raise ValueError("fingerprint does not match the query key")
        return record


@dataclass(slots=True)
class ImportReport:
    imported: int = 0
    duplicates: int = 0
    skipped: int = 0
    corrupt: int = 0
    rejected: List[str] = field(default_factory=list)

    @property
    def warnings(self) -> int:
        return self.corrupt + len(self.rejected)


class CacheStore:
    """Append-only cache file, by default ``.sl2ext/cache.jsonl`` under the project root."""

    def __init__(self, path: Path) -> None:
        self.path = Path(path)

    def load(self) -> Tuple[List[CacheRecord], ImportReport]:
        """Valid records for this engine version; bad lines are counted, not raised."""
        return _read_records(self.path)

    def entries(self, p: int | None = None) -> List[Tuple[QueryKey, Vector]]:
        records, _ = self.load()
        return [(record.key, record.dims) for record in records if p is None or record.key.p == p]

    def append(self, items: Iterable[Tuple[QueryKey, Vector]]) -> int:
        """Write records whose key is not stored yet; returns the number written."""
        records, _ = self.load()
        known = {record.fingerprint for record in records}
        fresh: List[CacheRecord] = []
        for key, dims in items:
            record = CacheRecord(key=key, dims=tuple(dims))
            if record.fingerprint in known:
                continue
            known.add(record.fingerprint)
            fresh.append(record)
        if fresh:
            self._write(fresh, mode="a")
            logger.debug("Appended %d cache records to %s", len(fresh), self.path)
        return len(fresh)

    def export_to(self, destination: Path) -> int:
        records, _ = self.load()
        unique: Dict[str, CacheRecord] = {}
        for record in records:
            unique.setdefault(record.fingerprint, record)
        destination = Path(destination)
        destination.parent.mkdir(parents=True, exist_ok=True)
        lines = [_encode(record) for record in unique.values()]
        destination.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return len(lines)

    def import_from(
        self,
        source: Path,
        *,
        paranoid: bool = False,
        verifier: Callable[[QueryKey], Vector] | None = None,
    ) -> ImportReport:
        """Merge another cache file; ``paranoid`` recomputes every record before accepting it."""
        incoming, report = _read_records(Path(source))
        existing, _ = self.load()
        known = {record.fingerprint for record in existing}
        accepted: List[CacheRecord] = []
        for record in incoming:
            if record.fingerprint in known:
                report.duplicates += 1
                continue
            if paranoid:
                if verifier is None:
                    raise ValueError("paranoid import needs a verifier")
                expected = tuple(verifier(record.key))
                if expected != record.dims:
                    logger.warning(
                        "Rejected cache record %s: stored %s, recomputed %s",
                        record.key,
                        list(record.dims),
                        list(expected),
                    )
                    report.rejected.append(str(record.key))
                    continue
            known.add(record.fingerprint)
            accepted.append(record)
        if accepted:
            self._write(accepted, mode="a")
        report.imported = len(accepted)
        return report

    def _write(self, records: List[CacheRecord], *, mode: str) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open(mode, encoding="utf-8") as handle:
            for record in records:
                handle.write(_encode(record) + "\n")


def _read_records(path: Path) -> Tuple[List[CacheRecord], ImportReport]:
    report = ImportReport()
    if not path.exists():
        return [], report
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CacheFormatError(f"Cannot read cache file {path}: {exc}") from exc
    records: List[CacheRecord] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
            if not isinstance(payload, dict):
                raise ValueError("record is not an object")
            record = CacheRecord.from_dict(payload)
        except (ValueError, KeyError, TypeError) as exc:
            logger.warning("Skipping corrupt cache line %s:%d: %s", path, number, exc)
            report.corrupt += 1
            continue
        if record.engine != ENGINE_VERSION:
            logger.warning("Skipping cache line %s:%d from engine %s", path, number, record.engine)
            report.skipped += 1
            continue
        records.append(record)
    return records, report


def _encode(record: CacheRecord) -> str:
    return json.dumps(record.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _fingerprint(payload: Mapping[str, Any]) -> str:
    normalized = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(normalized.encode("utf-8")).hexdigest()
