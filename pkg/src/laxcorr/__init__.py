"""Exact derivation of linear ODEs, time PDEs and index recursions for
determinantal correlators of rational Lax systems."""

__version__ = "0.1.0"
