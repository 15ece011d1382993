"""
Per-case builders; importing this package registers them.
"""
from orbitres.equivariant.cases import e6a2, e6a3, e6a4, f4a1, f4a2, g2a2  # noqa: F401
