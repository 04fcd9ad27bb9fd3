"""Utility helpers for sl2ext."""
