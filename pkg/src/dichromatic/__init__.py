"""Acyclic coloring of digraphs: bounds, constructive colorers and exact solvers."""
