"""
Exception hierarchy for orbitres
"""
from typing import Iterable


class OrbitresError(Exception):
    """Base error for the engine"""


class InputError(OrbitresError, ValueError):
    """Invalid input: mismatched dimensions, unknown ids, out-of-range powers"""


class NotRegisteredError(OrbitresError, LookupError):
    """A differential label that is not in the registry"""

    def __init__(self, case_id: str, label: str, registered: Iterable[str]):
        self.case_id = case_id
        self.label = label
        self.registered = sorted(registered)
        super().__init__(
            f"no differential '{label}' registered for {case_id}; "
            f"registered: {', '.join(self.registered) or 'none'}"
        )


class ExtendedScopeError(OrbitresError, NotImplementedError):
    """Computation above desk scale requested without extended mode"""


class FactorizationError(OrbitresError):
    """A requested factorization has no solution"""


class HomologyError(OrbitresError):
    """Homology of a cone could not be extracted"""


class SpliceError(OrbitresError):
    """Head and tail of an interactive resolution do not compose to zero"""


class SamplingDiagnostic(OrbitresError):
    """Pseudorandom sample points disagree on a generic rank"""


class VerificationMismatch(OrbitresError):
    """Computed data differs from the catalog oracle"""

    def __init__(self, message: str, diff: str = ""):
        self.diff = diff
        super().__init__(message)
