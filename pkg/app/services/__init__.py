"""
Services module for the knot tunnel invariants.

Each module implements one family of invariants over exact integers:
exactnum (fractions, slopes, 2x2 matrices, continued fractions), corridor
(parameter strings and the breadth-first depth oracle), giantsteps (transfer
matrix counting), bounds (bridge number bounds) and torus (short tunnels of
torus knots). verification_service cross-checks them.
"""
