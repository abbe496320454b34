"""Differential Perm-algebras, left-symmetric (di)algebras and their identities."""

__version__ = "0.1.0"
