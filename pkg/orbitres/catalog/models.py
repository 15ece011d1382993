"""
Catalog data models
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, field_validator

from orbitres.algebra.complexes import BettiTable
from orbitres.algebra.polyring import Point, PolynomialRing


class BettiKind(str, Enum):
    """Which module a stored Betti table resolves"""
    RING = "ring"
    NORMALIZATION = "normalization"
    COKERNEL = "cokernel"


class StepKind(str, Enum):
    """Ideal assembly steps"""
    BUILDER = "builder"        # generators of a registered one-row construction
    HEAD = "head"              # entries of d_1 obtained from a registered d_i by head steps
    NORMALIZE = "normalize"    # A-row of d_1 times the kernel of the remaining rows
    UNION = "union"            # the ideal of another orbit closure
    DATA = "data"              # polynomials stored in the case file
    MINORS = "minors"          # minors of the flattening along two tensor slots
    VARIABLES = "variables"    # the maximal homogeneous ideal


class SlotModel(BaseModel):
    kind: str
    space: str
    power: int = 1


class VariableModel(BaseModel):
    name: str
    weight: List[int]


class RingLayout(BaseModel):
    """Either tensor slots (variables are generated) or an explicit weighted variable list"""
    slots: List[SlotModel] = []
    dims: Dict[str, int] = {}
    separator: str = ""
    variables: Optional[List[VariableModel]] = None


class OrbitEntry(BaseModel):
    id: int
    dimension: int
    representative: Dict[str, str] = {}
    random_support: Optional[List[str]] = None
    label: str = ""
    normal: Optional[bool] = None
    cohen_macaulay: Optional[bool] = None
    gorenstein: Optional[bool] = None
    rational_singularities: Optional[bool] = None


class RecipeStep(BaseModel):
    kind: StepKind
    label: Optional[str] = None
    orbit: Optional[int] = None
    polynomials: Optional[List[str]] = None
    head: Optional[List[int]] = None
    degree: Optional[int] = None
    slots: Optional[List[int]] = None
    size: Optional[int] = None


class ComplexRecipe(BaseModel):
    """
    How to obtain a complex: a registered differential with head/tail bounds,
    the resolution of the orbit ideal, or (cone) the resolution of the cone
    procedure output over the normalization
    """
    label: Optional[str] = None
    head: List[int] = []
    tail: List[Optional[int]] = []
    ideal: bool = False
    cone: bool = False
    degree_limit: Optional[int] = None
    bounds: Optional[List[Optional[int]]] = None
    extended: bool = False


class OrbitRecipe(BaseModel):
    orbit: int
    ideal: List[RecipeStep] = []
    extended: bool = False
    ring: Optional[ComplexRecipe] = None
    normalization: Optional[ComplexRecipe] = None
    drop_twists: List[int] = [0]


class Erratum(BaseModel):
    row: int
    column: int
    printed: str
    corrected: str
    reason: str = ""


class CaseFile(BaseModel):
    """On-disk form of one case"""
    format_version: int = 1
    id: str
    title: str
    ring: RingLayout
    orbits: List[OrbitEntry]
    table: Optional[List[List[str]]] = None
    errata: List[Erratum] = []
    recipes: List[OrbitRecipe] = []
    betti_file: Optional[str] = None
    betti_sha256: Optional[str] = None
    notes: List[str] = []

    @field_validator("table")
    @classmethod
    def validate_cells(cls, v):
        if v is not None:
            for row in v:
                for cell in row:
                    if cell not in {"", "ns", "s"}:
                        raise ValueError(f"unknown table cell '{cell}'")
        return v


@dataclass(frozen=True)
class OrbitDatum:
    """An orbit with the dimension of its closure and a representative"""
    id: int
    dimension: int
    representative: Point
    label: str = ""


@dataclass
class CaseData:
    id: str
    title: str
    ring: PolynomialRing
    orbits: List[OrbitDatum]
    flags: Dict[int, OrbitEntry]
    expected_betti: Dict[Tuple[int, BettiKind], BettiTable]
    recipes: Dict[int, OrbitRecipe]
    table: Optional[List[List[str]]] = None
    errata: List[Erratum] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def ambient_dimension(self) -> int:
        return self.ring.ngens

    def orbit(self, k: int) -> OrbitDatum:
        for o in self.orbits:
            if o.id == k:
                return o
        raise KeyError(k)

    def codim(self, k: int) -> int:
        return self.ambient_dimension - self.orbit(k).dimension

    @property
    def dense(self) -> OrbitDatum:
        return max(self.orbits, key=lambda o: o.dimension)

    def printed_table(self, corrected: bool = True) -> Optional[List[List[str]]]:
        """The stored containment table, with recorded errata applied unless corrected is False"""
        if self.table is None:
            return None
        out = [list(row) for row in self.table]
        if corrected:
            for e in self.errata:
                out[e.row][e.column] = e.corrected
        return out
