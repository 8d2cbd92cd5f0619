"""Exact invariants of solenoids over flat manifolds.

Stationary inductive limits of finitely generated abelian groups, transfer
maps of expanding self-covers, and the homology, K-theory and periodic-point
counts they determine.
"""

from .abelian import FgAbGroup, GroupHom, Z
from .intmat import IntMatrix, smith_normal_form
from .limits import LimitGroup, StationarySystem, limits_isomorphic, stationary_limit
from .manifolds import FlatManifold, catalog, lookup

__version__ = "0.1.0"

__all__ = [
    "FgAbGroup", "GroupHom", "Z", "IntMatrix", "smith_normal_form",
    "LimitGroup", "StationarySystem", "limits_isomorphic", "stationary_limit",
    "FlatManifold", "catalog", "lookup",
]
