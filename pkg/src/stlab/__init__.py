"""Exact-arithmetic workbench for Steinberg modules of SL_n(F_p).

Builds apartment-class spans over complete-flag coordinates, decomposes
them along the poset of symplectic splittings of F_p^2g, and verifies the
dimension formulas, projection identities and partition/q-series
recurrences that govern the separated / non-separated decomposition.
"""

__version__ = "0.1.0"
