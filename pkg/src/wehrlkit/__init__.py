"""Husimi densities and Wehrl entropies for Landau-level coherent states."""
