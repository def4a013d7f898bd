"""Exact-arithmetic classification of rational double points on del Pezzo
surfaces in arbitrary characteristic."""

__version__ = "0.1.0"
