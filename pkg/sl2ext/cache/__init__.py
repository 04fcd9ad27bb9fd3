"""Persistent Ext result cache."""

from .store import CacheFormatError, CacheRecord, CacheStore, ImportReport

__all__ = ["CacheFormatError", "CacheRecord", "CacheStore", "ImportReport"]
