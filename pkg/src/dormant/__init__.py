"""Exact arithmetic with finite-level differential operators in
characteristic p, and counting of dormant rank-2 opers of prescribed radii
on pointed curves via trivalent-graph edge labelings."""

__version__ = "0.1.0"
