"""Two-sided Fourier calculus on finite quantum symmetries.

Thin package wrapper around the native _ncup module built from the C++ core.
"""

from ._ncup import NcupError, Pair, make_pair, run_suite

__all__ = ["NcupError", "Pair", "make_pair", "run_suite"]
