# Service modules
from orbitres.services.acceptance_service import AcceptanceService, CriterionResult
from orbitres.services.catalog_service import CatalogService, OrbitCertificate, flattening_minors

__all__ = [
    "AcceptanceService",
    "CatalogService",
    "CriterionResult",
    "OrbitCertificate",
    "flattening_minors",
]
