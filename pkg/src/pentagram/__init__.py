"""Exact computations for the maps T_k and the pentagram family."""
