"""Renderers for query results, tables and verification reports."""
