"""
Catalog service: executes the recipes of a case (orbit ideals, resolutions,
normalizations, cokernels and the cone procedure) and certifies the results
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from orbitres.algebra import graded
from orbitres.algebra.complexes import (
    BettiTable,
    FreeComplex,
    cokernel_presentation,
    cone_procedure,
    resolve,
    resolve_ideal,
    resolve_interactive,
)
from orbitres.algebra.groebner import minimal_ideal_generators
from orbitres.algebra.matrices import PolyMatrix
from orbitres.algebra.polyring import Polynomial, PolynomialRing
from orbitres.catalog import BettiKind, CaseData, expected_betti, load_case
from orbitres.catalog.models import ComplexRecipe, OrbitRecipe, RecipeStep, StepKind
from orbitres.catalog.rings import slot_basis
from orbitres.core.config import settings
from orbitres.core.exceptions import (
    ExtendedScopeError,
    HomologyError,
    InputError,
    VerificationMismatch,
)
from orbitres.equivariant.invariants import audit_printed_discriminant, minors_ideal
from orbitres.equivariant.registry import case_differential, case_generators, registered_labels
from orbitres.services.verify import (
    CMResult,
    ContainmentTable,
    DegenerationOrder,
    ExactnessCertificate,
    cm_check,
    containment_singularity_table,
    degeneration_order,
    exactness_certificate,
    r0_check,
    s1_check,
)


def flattening_minors(ring: PolynomialRing, slots: Sequence[int], size: int) -> List[Polynomial]:
    """
    size x size minors of the generic matrix with rows indexed by the basis of
    slots[0] and columns by the product of the bases of the remaining slots
    """
    if not ring.slots or sorted(slots) != list(range(len(ring.slots))):
        raise InputError(f"a flattening of {ring.name} must list each of its {len(ring.slots)} slots once")
    bases = [slot_basis(s, ring.space_dims[s.space]) for s in ring.slots]
    first, rest = slots[0], list(slots[1:])
    rows = []
    for a in bases[first]:
        row = []
        for b in product(*(bases[s] for s in rest)):
            contents: List[Tuple[int, ...]] = [()] * len(ring.slots)
            contents[first] = a
            for s, piece in zip(rest, b):
                contents[s] = piece
            idx = ring.variable_for_slots(tuple(contents))
            row.append(ring.gens[idx] if idx is not None else ring.zero)
        rows.append(row)
    return minors_ideal(rows, size)


@dataclass
class OrbitCertificate:
    """Certificate of the coordinate-ring resolution of one orbit closure"""
    case_id: str
    orbit: int
    betti: BettiTable
    exactness: ExactnessCertificate
    cm: CMResult
    s1: bool
    r0: Optional[bool]
    flag_mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.exactness.exact and not self.flag_mismatches

    def summary(self) -> str:
        def word(v) -> str:
            return "n/a" if v is None else str(v).lower()

        lines = [
            f"{self.case_id} orbit {self.orbit}: totals {' '.join(map(str, self.betti.totals()))}",
            f"exact: {word(self.exactness.exact)}, CM: {word(self.cm.is_cm)}, "
            f"Gorenstein: {word(self.cm.is_cm and self.cm.gorenstein)}, "
            f"S1: {word(self.s1)}, R0: {word(self.r0)}",
        ]
        if self.cm.is_cm:
            lines.append(f"simultaneous drop at orbit {self.cm.witness_orbit}, dual exact: {word(self.cm.dual_exact)}")
        lines.extend(f"flag mismatch: {m}" for m in self.flag_mismatches)
        return "\n".join(lines) + "\n"


class CatalogService:
    """Recipes of one case, executed over the case ring"""

    def __init__(self, case_id: str, catalog: Optional[str] = None, seed: Optional[int] = None,
                 extended: Optional[bool] = None, section: str = "standard"):
        self.logger = logging.getLogger("services.catalog")
        self.case: CaseData = load_case(case_id, catalog, seed)
        self.extended = settings.EXTENDED if extended is None else extended
        self.section = section
        self._ideals: Dict[int, List[Polynomial]] = {}
        self._complexes: Dict[Tuple[int, BettiKind, Optional[int]], FreeComplex] = {}

    # -- registry access -------------------------------------------------------------

    @property
    def ring(self) -> PolynomialRing:
        return self.case.ring

    def _options(self) -> Dict[str, str]:
        return {"section": self.section} if self.case.id == "F4a1" else {}

    def differential(self, label: str) -> PolyMatrix:
        return case_differential(self.case.id, label, self.ring, **self._options())

    def generators(self, label: str) -> List[Polynomial]:
        return case_generators(self.case.id, label, self.ring, **self._options())

    def labels(self) -> List[str]:
        return registered_labels(self.case.id)

    def export_matrix(self, label: str) -> str:
        """Sparse triplets 'row column polynomial', preceded by a shape/twist header"""
        d = self.differential(label)
        lines = [
            f"# {self.case.id} {label}: {d.nrows}x{d.ncols}",
            f"# target twists {' '.join(map(str, d.target.twists))}",
            f"# source twists {' '.join(map(str, d.source.twists))}",
        ]
        for (r, c), p in sorted(d.entries.items()):
            lines.append(f"{r} {c} {p.as_expr()}")
        return "\n".join(lines) + "\n"

    def recipe(self, k: int) -> Optional[OrbitRecipe]:
        self.case.orbit(k)
        return self.case.recipes.get(k)

    def _require_scope(self, extended: bool, what: str) -> None:
        if extended and not self.extended:
            raise ExtendedScopeError(f"{self.case.id} {what} is above desk scale; run in extended mode")

    # -- ideals --------------------------------------------------------------------------

    def orbit_ideal(self, k: int) -> List[Polynomial]:
        """Minimal generators of the ideal of the closure of O_k; the dense closure has the zero ideal"""
        if k in self._ideals:
            return self._ideals[k]
        if k == self.case.dense.id:
            return []
        recipe = self.recipe(k)
        if recipe is None or not recipe.ideal:
            raise InputError(f"{self.case.id} has no ideal recipe for orbit {k}")
        self._require_scope(recipe.extended, f"ideal of orbit {k}")

        raw: List[Polynomial] = []
        for step in recipe.ideal:
            raw.extend(self._step(step, k))
        gens = minimal_ideal_generators(raw)
        self.logger.info(f"{self.case.id} orbit {k}: {len(raw)} polynomials, {len(gens)} minimal generators")
        self._ideals[k] = gens
        return gens

    def _step(self, step: RecipeStep, k: int) -> List[Polynomial]:
        kind = step.kind
        if kind == StepKind.VARIABLES:
            return list(self.ring.gens)
        if kind == StepKind.BUILDER:
            return self.generators(step.label)
        if kind == StepKind.DATA:
            return [self.ring.parse(text) for text in step.polynomials or []]
        if kind == StepKind.UNION:
            if step.orbit == k:
                raise InputError(f"{self.case.id} orbit {k}: recipe unites the orbit with itself")
            return self.orbit_ideal(step.orbit)
        if kind == StepKind.MINORS:
            return flattening_minors(self.ring, step.slots or [], step.size or 2)
        if kind == StepKind.HEAD:
            C = resolve_interactive(self.differential(step.label), [], step.head or [])
            d1 = C.d(1)
            if d1.nrows != 1:
                raise InputError(f"{self.case.id} {step.label}: head ends in {d1.nrows} rows, not an ideal")
            return [p for p in d1.row(0).values() if p]
        if kind == StepKind.NORMALIZE:
            C = self._registered(step.label, step.head or [], [])
            return self.normalization_ideal(C.d(1), step.degree, self.recipe(k).drop_twists)
        raise InputError(f"unknown recipe step {kind}")

    def normalization_ideal(self, d1: PolyMatrix, degree: int, drop_twists: Sequence[int] = (0,)) -> List[Polynomial]:
        """
        The A-row of the normalization presentation applied to the kernel of
        its remaining rows, up to `degree`
        """
        a_rows = [r for r, t in enumerate(d1.target.twists) if t in drop_twists]
        if len(a_rows) != 1:
            raise InputError(f"normalization presentation has {len(a_rows)} rows of twist {list(drop_twists)}")
        a = a_rows[0]
        rest = d1.drop(rows=[a])
        K = graded.syzygies(rest, degree)
        row = d1.row(a)
        out = []
        for j in range(K.ncols):
            p = self.ring.zero
            for c, q in K.column(j).items():
                if c in row:
                    p += row[c] * q
            if p:
                out.append(p)
        self.logger.info(f"{self.case.id}: {K.ncols} kernel generators up to degree {degree}, {len(out)} ideal elements")
        return out

    # -- complexes -------------------------------------------------------------------

    def _registered(self, label: str, head: Sequence[int], tail: Sequence[Optional[int]]) -> FreeComplex:
        d = self.differential(label)
        if not head and not tail:
            return FreeComplex([d])
        return resolve_interactive(d, list(tail), list(head))

    def expected(self, k: int, which: BettiKind = BettiKind.RING) -> Optional[BettiTable]:
        return expected_betti(self.case, k, which)

    def expected_bounds(self, k: int, which: BettiKind) -> Optional[List[Optional[int]]]:
        """Largest twist of each column from 2 on of the stored table, as syzygy degree bounds"""
        table = self.expected(k, which)
        if table is None:
            return None
        tops: Dict[int, int] = {}
        for (i, j) in table.entries:
            tops[i] = max(tops.get(i, j), j)
        return [tops.get(i) for i in range(2, table.length + 1)]

    def complex(self, k: int, which: BettiKind = BettiKind.RING,
                length_limit: Optional[int] = None) -> FreeComplex:
        which = BettiKind(which)
        key = (k, which, length_limit)
        if key not in self._complexes:
            self._complexes[key] = self._build_complex(k, which, length_limit)
        return self._complexes[key]

    def _build_complex(self, k: int, which: BettiKind, length_limit: Optional[int]) -> FreeComplex:
        recipe = self.recipe(k)
        if which == BettiKind.COKERNEL:
            P, _ = self.cokernel_presentation(k)
            return resolve(P, self.expected_bounds(k, which), length_limit)
        if which == BettiKind.NORMALIZATION:
            if recipe is None or recipe.normalization is None:
                raise InputError(f"{self.case.id} orbit {k} has no normalization recipe")
            return self._from_recipe(recipe.normalization, k, which, length_limit)
        if recipe is not None and recipe.ring is not None:
            return self._from_recipe(recipe.ring, k, which, length_limit)
        return resolve_ideal(self.orbit_ideal(k), self.expected_bounds(k, which), length_limit)

    def _from_recipe(self, cr: ComplexRecipe, k: int, which: BettiKind,
                     length_limit: Optional[int]) -> FreeComplex:
        self._require_scope(cr.extended, f"{which.value} resolution of orbit {k}")
        bounds = cr.bounds if cr.bounds is not None else self.expected_bounds(k, which)
        if cr.label:
            return self._registered(cr.label, cr.head, cr.tail)
        if cr.cone:
            return resolve(self.cone(k, cr.degree_limit), bounds, length_limit)
        if cr.ideal:
            return resolve_ideal(self.orbit_ideal(k), bounds, length_limit)
        raise InputError(f"{self.case.id} orbit {k}: empty {which.value} recipe")

    def betti(self, k: int, which: BettiKind = BettiKind.RING, length_limit: Optional[int] = None) -> BettiTable:
        return BettiTable.from_complex(self.complex(k, which, length_limit))

    def check_betti(self, k: int, which: BettiKind = BettiKind.RING,
                    length_limit: Optional[int] = None) -> BettiTable:
        """Computed table, raising VerificationMismatch with a unified diff when it differs from the stored one"""
        expected = self.expected(k, which)
        if expected is None:
            raise InputError(f"no stored {BettiKind(which).value} table for {self.case.id} orbit {k}")
        computed = self.betti(k, which, length_limit)
        if computed != expected:
            raise VerificationMismatch(
                f"{self.case.id} orbit {k}: computed {BettiKind(which).value} table differs",
                computed.diff(expected),
            )
        return computed

    # -- non-normal orbits -------------------------------------------------------------

    def cokernel_presentation(self, k: int) -> Tuple[PolyMatrix, List[int]]:
        """
        The normalization presentation without its rows of the recorded twists
        (the A summand) and without the columns that vanish afterwards
        """
        recipe = self.recipe(k)
        d1 = self.complex(k, BettiKind.NORMALIZATION).d(1)
        drop_rows = [r for r, t in enumerate(d1.target.twists) if t in recipe.drop_twists]
        remaining = d1.drop(rows=drop_rows)
        used = {c for (_, c) in remaining.entries}
        drop_cols = [c for c in range(d1.ncols) if c not in used]
        P, kept = cokernel_presentation(d1, drop_rows, drop_cols)
        self.logger.info(f"{self.case.id} orbit {k}: cokernel presented by {P.nrows}x{P.ncols}, "
                         f"{len(drop_rows)} rows and {len(drop_cols)} columns dropped")
        return P, kept

    def cokernel_generator_degrees(self, k: int) -> List[int]:
        P, _ = self.cokernel_presentation(k)
        return sorted(P.target.twists)

    def cone(self, k: int, degree_limit: Optional[int] = None) -> PolyMatrix:
        """Presentation of the coordinate ring of the closure of O_k from the cone procedure"""
        N = self.complex(k, BettiKind.NORMALIZATION)
        P, kept = self.cokernel_presentation(k)
        bounds = self.expected_bounds(k, BettiKind.COKERNEL)
        return cone_procedure(N, P, truncated=True, kept_rows=kept,
                              bounds=bounds[:1] if bounds else None, degree_limit=degree_limit)

    def cone_ideal(self, k: int, degree_limit: Optional[int] = None) -> List[Polynomial]:
        H = self.cone(k, degree_limit)
        if H.nrows != 1:
            raise HomologyError(f"{self.case.id} orbit {k}: cone homology has {H.nrows} generators, not one")
        return [p for p in H.row(0).values() if p]

    # -- certificates and tables -----------------------------------------------------

    def certificate(self, C: FreeComplex) -> ExactnessCertificate:
        return exactness_certificate(C, self.case.orbits, self.case.ambient_dimension)

    def certify(self, k: int) -> OrbitCertificate:
        C = self.complex(k, BettiKind.RING)
        codim = self.case.codim(k)
        cert = self.certificate(C)
        cm = cm_check(cert, self.case.orbits)
        s1 = s1_check(C, codim, self.case.orbits, self.case.ambient_dimension)
        try:
            gens = self.orbit_ideal(k)
        except ExtendedScopeError:
            gens = [p for p in C.d(1).row(0).values() if p] if C.length else []
        r0 = r0_check(gens, self.case.orbit(k).representative, codim)

        flags = self.case.flags[k]
        mismatches = []
        if flags.cohen_macaulay is not None and cert.exact and flags.cohen_macaulay != cm.is_cm:
            mismatches.append(f"catalog CM {flags.cohen_macaulay}, certificate {cm.is_cm}")
        if flags.gorenstein is not None and cm.is_cm and flags.gorenstein != cm.gorenstein:
            mismatches.append(f"catalog Gorenstein {flags.gorenstein}, certificate {cm.gorenstein}")
        for m in mismatches:
            self.logger.warning(f"{self.case.id} orbit {k}: {m}")
        return OrbitCertificate(self.case.id, k, BettiTable.from_complex(C), cert, cm, s1, r0, mismatches)

    def available_ideals(self) -> Dict[int, Optional[List[Polynomial]]]:
        out: Dict[int, Optional[List[Polynomial]]] = {}
        for o in self.case.orbits:
            try:
                out[o.id] = self.orbit_ideal(o.id)
            except ExtendedScopeError as exc:
                self.logger.info(str(exc))
                out[o.id] = None
        return out

    def table(self) -> ContainmentTable:
        return containment_singularity_table(self.case, self.available_ideals())

    def check_table(self) -> ContainmentTable:
        """Computed table against the stored one with errata applied; mismatches raise"""
        table = self.table()
        expected = self.case.printed_table()
        if expected is None:
            return table
        if table.compare(expected):
            raise VerificationMismatch(f"{self.case.id}: containment table differs", table.diff(expected))
        return table

    def order(self, computed: bool = False) -> DegenerationOrder:
        return degeneration_order(self.case, self.table().grid() if computed else None)

    @staticmethod
    def discriminant_audit():
        return audit_printed_discriminant()
