"""Keeps the tests directory importable for shared helpers (oracles, builders)."""
