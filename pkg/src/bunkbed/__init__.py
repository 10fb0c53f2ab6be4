"""Exact-arithmetic toolkit for random-cluster, arboreal-gas and spanning-tree
quantities on finite graphs and their bunkbeds.

All computations are exact: rationals never round, polynomial identities are
checked coefficient by coefficient, and real roots are isolated with certified
signs.  Floating point is never used.
"""

__version__ = "0.1.0"
