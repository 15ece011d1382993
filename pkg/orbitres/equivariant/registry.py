"""
Registry of explicitly constructed differentials, blocks and invariants.

Each case with hand-built maps has a CaseBuilder subclass; its methods
marked with @construction are the registered labels. Builders receive the
case ring and return PolyMatrix objects: differentials and blocks as they
sit in a resolution, generator sets and invariants as one-row matrices.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Type

from orbitres.algebra.matrices import PolyMatrix
from orbitres.algebra.polyring import Polynomial, PolynomialRing
from orbitres.core.exceptions import InputError, NotRegisteredError
from orbitres.equivariant.embeddings import RingEmbedding, to_poly_matrix, variable_embedding
from orbitres.equivariant.tensors import EquivariantMap, Factor, TensorSpace


class BuildKind(Enum):
    """What a registered construction produces"""
    DIFFERENTIAL = "differential"
    BLOCK = "block"
    GENERATORS = "generators"
    INVARIANT = "invariant"


@dataclass(frozen=True)
class Construction:
    """A registered label and the builder method realizing it"""
    label: str
    kind: BuildKind
    summary: str
    method: str


def construction(label: str, kind: BuildKind = BuildKind.DIFFERENTIAL, summary: str = ""):
    """Mark a CaseBuilder method as the construction registered under `label`"""
    def mark(fn: Callable) -> Callable:
        doc = (fn.__doc__ or "").strip().splitlines()
        fn._construction = Construction(label, kind, summary or (doc[0] if doc else label), fn.__name__)
        return fn
    return mark


_BUILDERS: Dict[str, Type["CaseBuilder"]] = {}
_INSTANCES: Dict[Tuple, "CaseBuilder"] = {}


class CaseBuilder(ABC):
    """Base class for the per-case builders"""

    case_id: str = ""
    constructions: Dict[str, Construction] = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        found: Dict[str, Construction] = {}
        for name in dir(cls):
            c = getattr(getattr(cls, name, None), "_construction", None)
            if c is not None:
                found[c.label] = c
        cls.constructions = found
        if cls.case_id:
            _BUILDERS[cls.case_id] = cls

    def __init__(self, ring: PolynomialRing):
        if not ring.slots and not ring.weights:
            raise InputError(f"ring {ring.name} carries neither tensor layout nor weights")
        self.ring = ring
        self.dims: Dict[str, int] = dict(ring.space_dims)
        self.logger = logging.getLogger(f"builder.{self.case_id}")
        self._built: Dict[str, PolyMatrix] = {}
        self._a1: Optional[RingEmbedding] = None

    @abstractmethod
    def dual_factors(self) -> List[Factor]:
        """Factors of g1* matching the ring's slots, in slot order"""

    # -- shared helpers ---------------------------------------------------------

    @property
    def a1(self) -> RingEmbedding:
        """g1* = A_1, basis tensors to ring variables"""
        if self._a1 is None:
            self._a1 = variable_embedding(self.ring, self.dual_factors(), self.dims)
        return self._a1

    def space(self, factors: Sequence[Factor]) -> TensorSpace:
        return TensorSpace(factors, self.dims)

    def matrix(self, m: EquivariantMap, embeddings: Sequence[Tuple[RingEmbedding, Sequence[int]]],
               rows: Sequence[int] = (), twist: int = 0, label: str = "", source_label: str = "") -> PolyMatrix:
        return to_poly_matrix(m, embeddings, rows, twist, label, source_label)

    def row(self, polys: Sequence[Polynomial], twist: int = 0) -> PolyMatrix:
        """Generators as a one-row matrix into A(-twist)"""
        polys = [p for p in polys if p]
        if not polys:
            raise InputError(f"{self.case_id}: empty generator set")
        return PolyMatrix.from_rows(self.ring, [polys], target_twists=[twist])

    # -- registry interface -----------------------------------------------------

    def labels(self) -> List[str]:
        return sorted(self.constructions)

    def describe(self, label: str) -> Construction:
        try:
            return self.constructions[label]
        except KeyError:
            raise NotRegisteredError(self.case_id, label, self.labels())

    def build(self, label: str) -> PolyMatrix:
        c = self.describe(label)
        if label not in self._built:
            self.logger.info(f"building {label}")
            m = getattr(self, c.method)()
            self.logger.debug(f"{label}: {m.nrows}x{m.ncols}")
            self._built[label] = m
        return self._built[label]


def _load_builders() -> None:
    import orbitres.equivariant.cases  # noqa: F401  registers the builders


def registered_labels(case_id: str) -> List[str]:
    _load_builders()
    cls = _BUILDERS.get(case_id)
    return sorted(cls.constructions) if cls else []


def builder_for(case_id: str, ring: Optional[PolynomialRing] = None, **options) -> CaseBuilder:
    """The builder of a case over `ring`, or over the catalog ring of the case; options go to the constructor"""
    _load_builders()
    cls = _BUILDERS.get(case_id)
    if cls is None:
        raise NotRegisteredError(case_id, "*", [])
    if ring is None:
        from orbitres.catalog.rings import case_ring
        ring = case_ring(case_id)
    key = (case_id, ring.name, ring, tuple(sorted(options.items())))
    if key not in _INSTANCES:
        _INSTANCES[key] = cls(ring, **options)
    return _INSTANCES[key]


def case_differential(case_id: str, label: str, ring: Optional[PolynomialRing] = None,
                      **options) -> PolyMatrix:
    """The registered construction `label` of a case"""
    _load_builders()
    if case_id in _BUILDERS and label not in _BUILDERS[case_id].constructions:
        raise NotRegisteredError(case_id, label, registered_labels(case_id))
    return builder_for(case_id, ring, **options).build(label)


def case_generators(case_id: str, label: str, ring: Optional[PolynomialRing] = None,
                    **options) -> List[Polynomial]:
    """Entries of a one-row construction, in column order"""
    m = case_differential(case_id, label, ring, **options)
    if m.nrows != 1:
        raise InputError(f"{case_id} {label} is a {m.nrows}x{m.ncols} matrix, not a generator row")
    return [m.entry(0, c) for c in range(m.ncols) if m.entry(0, c)]
