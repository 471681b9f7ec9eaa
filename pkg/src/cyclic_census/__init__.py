"""Counting cyclic subgroups of finite groups, with symbolic case-table reproduction."""
__version__ = "0.1.0"
