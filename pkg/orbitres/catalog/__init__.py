"""
Case catalog: rings, orbit tables, printed Betti tables and ideal recipes
"""
from orbitres.catalog.loader import CASE_IDS, expected_betti, load_case, normalize_case_id
from orbitres.catalog.models import BettiKind, CaseData, OrbitDatum
from orbitres.catalog.rings import case_ring

__all__ = [
    "CASE_IDS",
    "BettiKind",
    "CaseData",
    "OrbitDatum",
    "case_ring",
    "expected_betti",
    "load_case",
    "normalize_case_id",
]
