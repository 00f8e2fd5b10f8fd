"""Knot diagrams and the quadratic invariant of a knot."""
