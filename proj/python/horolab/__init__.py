"""Horocyclic products of percolation trees.

Thin wrapper around the compiled _horolab module: window-tree sampling,
explicit product windows, exact isoperimetric ratios, and the Monte Carlo
experiments, with exact rationals surfaced as fractions.Fraction.
"""

try:
    from ._horolab import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # running against a plain CMake build tree
    from _horolab import *  # noqa: F401,F403
