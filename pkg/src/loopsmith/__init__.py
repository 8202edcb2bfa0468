"""Finite loops given by Cayley tables: structure, automorphic loops Q(A), Bruck associates."""

from .loop import FiniteLoop, parse_table, read_table, write_table

__version__ = "0.1.0"

__all__ = ["FiniteLoop", "parse_table", "read_table", "write_table"]
