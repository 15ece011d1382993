"""
Certification by exact rank evaluation at orbit representatives: the
equivariant exactness criterion, Cohen-Macaulay and Gorenstein detection,
the S1 and R0 reducedness tests, containment/singularity tables and the
degeneration order read off them
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from orbitres.algebra.complexes import FreeComplex, dualize
from orbitres.algebra.groebner import rank_at_point
from orbitres.algebra.polyring import Polynomial, evaluate, jacobian
from orbitres.catalog.models import CaseData, OrbitDatum
from orbitres.core.exceptions import InputError, VerificationMismatch


logger = logging.getLogger("services.verify")

EMPTY, SMOOTH, SINGULAR = "", "ns", "s"


@dataclass
class DifferentialRanks:
    """Ranks of one differential d_k at every representative"""
    k: int
    generic_rank: int
    ranks: Dict[int, int]
    drop_orbits: List[int]
    min_drop_codim: Optional[int]


@dataclass
class ExactnessCertificate:
    per_differential: List[DifferentialRanks]
    condition1: List[bool]
    condition2: List[bool]
    codims: Dict[int, int]
    complex: FreeComplex = field(repr=False)
    dual_exact: Optional[bool] = None
    simultaneous_drop_orbit: Optional[int] = None

    @property
    def exact(self) -> bool:
        return all(self.condition1) and all(self.condition2)

    def summary(self) -> str:
        lines = [f"exact: {str(self.exact).lower()}"]
        for dr, c1, c2 in zip(self.per_differential, self.condition1, self.condition2):
            codim = "-" if dr.min_drop_codim is None else str(dr.min_drop_codim)
            lines.append(
                f"  d{dr.k}: generic rank {dr.generic_rank}, drops on {dr.drop_orbits or '[]'}, "
                f"min codim {codim}, condition 1 {'ok' if c1 else 'FAILS'}, condition 2 {'ok' if c2 else 'FAILS'}"
            )
        return "\n".join(lines)


@dataclass
class CMResult:
    is_cm: bool
    witness_orbit: Optional[int]
    gorenstein: bool = False
    dual_exact: Optional[bool] = None


def _dense(orbits: Sequence[OrbitDatum], ambient_dim: int) -> OrbitDatum:
    top = max(orbits, key=lambda o: o.dimension, default=None)
    if top is None or top.dimension != ambient_dim:
        raise InputError(f"no dense orbit of dimension {ambient_dim} among the representatives")
    return top


def exactness_certificate(C: FreeComplex, orbits: Sequence[OrbitDatum],
                          ambient_dim: int) -> ExactnessCertificate:
    """
    Rank accounting at the dense representative (condition 1) and, for each
    d_k, the smallest codimension of an orbit closure where the rank drops
    (condition 2: at least k)
    """
    dense = _dense(orbits, ambient_dim)
    codims = {o.id: ambient_dim - o.dimension for o in orbits}
    n = C.length

    per: List[DifferentialRanks] = []
    for k in range(1, n + 1):
        d = C.d(k)
        ranks = {o.id: rank_at_point(d, o.representative) for o in orbits}
        generic = ranks[dense.id]
        over = [j for j, r in ranks.items() if r > generic]
        if over:
            raise VerificationMismatch(f"d{k} has larger rank at orbits {over} than at the dense orbit")
        drops = sorted(j for j, r in ranks.items() if r < generic)
        min_codim = min((codims[j] for j in drops), default=None)
        per.append(DifferentialRanks(k, generic, ranks, drops, min_codim))
        logger.debug(f"d{k}: generic rank {generic}, drops at {drops}")

    condition1 = []
    for k in range(1, n + 1):
        following = per[k].generic_rank if k < n else 0
        condition1.append(C.module(k).rank == per[k - 1].generic_rank + following)
    condition2 = [dr.min_drop_codim is None or dr.min_drop_codim >= dr.k for dr in per]

    cert = ExactnessCertificate(per, condition1, condition2, codims, C)
    logger.info(f"exactness certificate for {C!r}: {'exact' if cert.exact else 'not exact'}")
    return cert


def cm_check(cert: ExactnessCertificate, orbits: Sequence[OrbitDatum]) -> CMResult:
    """
    Cohen-Macaulay when one orbit carries a rank drop of every differential and
    has the smallest codimension among all drop orbits; the dual complex is
    then certified as well. Gorenstein additionally needs a last module of rank 1.
    """
    if not cert.exact or not cert.per_differential:
        return CMResult(False, None)
    common = set(cert.per_differential[0].drop_orbits)
    for dr in cert.per_differential[1:]:
        common &= set(dr.drop_orbits)
    all_drops = {j for dr in cert.per_differential for j in dr.drop_orbits}
    lowest = min((cert.codims[j] for j in all_drops), default=None)
    witnesses = sorted(j for j in common if cert.codims[j] == lowest)
    if not witnesses:
        return CMResult(False, None)
    witness = witnesses[0]
    cert.simultaneous_drop_orbit = witness

    ambient = max(o.dimension for o in orbits)
    dual = exactness_certificate(dualize(cert.complex), orbits, ambient)
    cert.dual_exact = dual.exact
    if not dual.exact:
        logger.warning("simultaneous rank drop found but the dual complex is not certified exact")
    gorenstein = cert.complex.module(cert.complex.length).rank == 1
    return CMResult(True, witness, gorenstein, dual.exact)


def s1_check(C: FreeComplex, codim: int, orbits: Sequence[OrbitDatum],
             ambient_dim: Optional[int] = None) -> bool:
    """
    For every k > codim the rank-drop locus of d_k must have codimension
    strictly larger than k; a tie fails
    """
    ambient = max(o.dimension for o in orbits) if ambient_dim is None else ambient_dim
    if C.length <= codim:
        return True
    cert = exactness_certificate(C, orbits, ambient)
    ok = True
    for dr in cert.per_differential:
        if dr.k <= codim or dr.min_drop_codim is None:
            continue
        if dr.min_drop_codim == dr.k:
            logger.warning(f"S1 test: d{dr.k} drops rank in codimension exactly {dr.k}; undecided, reported as failing")
            ok = False
        elif dr.min_drop_codim < dr.k:
            ok = False
    return ok


def r0_check(gens: Sequence[Polynomial], rep, codim: int) -> bool:
    """Jacobian rank at the orbit's own representative equals the codimension"""
    gens = [g for g in gens if g]
    if not gens:
        return codim == 0
    return rank_at_point(jacobian(gens), rep) == codim


# -- containment and singularity ---------------------------------------------------

@dataclass
class ContainmentTable:
    case_id: str
    orbit_ids: List[int]
    cells: List[List[Optional[str]]]
    unavailable: List[int] = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return bool(self.unavailable)

    def render(self) -> str:
        """Rows O_i, columns closures of O_j; '?' marks cells of unavailable columns"""
        head = ["", *[f"Ō{j}" for j in self.orbit_ids]]
        body = []
        for i, row in zip(self.orbit_ids, self.cells):
            body.append([f"O{i}", *["?" if c is None else c for c in row]])
        width = max(len(c) for r in [head, *body] for c in r)
        lines = [" ".join(c.ljust(width) for c in r).rstrip() for r in [head, *body]]
        return "\n".join(lines) + "\n"

    def grid(self) -> List[List[str]]:
        return [["?" if c is None else c for c in row] for row in self.cells]

    def compare(self, expected: Sequence[Sequence[str]]) -> List[Tuple[int, int, str, str]]:
        """Cells (i, j, expected, computed) that differ; unavailable cells are skipped"""
        out = []
        for a, row in enumerate(self.cells):
            for b, cell in enumerate(row):
                if cell is not None and cell != expected[a][b]:
                    out.append((self.orbit_ids[a], self.orbit_ids[b], expected[a][b], cell))
        return out

    def diff(self, expected: Sequence[Sequence[str]]) -> str:
        lines = [f"--- expected {self.case_id}", f"+++ computed {self.case_id}"]
        for i, j, want, got in self.compare(expected):
            lines.append(f"@@ O{i} / closure of O{j} @@")
            lines.append(f"-{want or '(empty)'}")
            lines.append(f"+{got or '(empty)'}")
        return "\n".join(lines) + "\n" if len(lines) > 2 else ""


def table_cell(gens: Sequence[Polynomial], rep, codim: int) -> str:
    if any(evaluate(g, rep) for g in gens):
        return EMPTY
    return SMOOTH if rank_at_point(jacobian(gens), rep) == codim else SINGULAR


def containment_singularity_table(case: CaseData,
                                  ideals: Mapping[int, Optional[Sequence[Polynomial]]]) -> ContainmentTable:
    """
    ideals[j] generates the ideal of the closure of O_j, None when it is not
    available; the dense closure has the zero ideal and an all-'ns' column
    """
    ids = [o.id for o in case.orbits]
    dense = case.dense.id
    cells: List[List[Optional[str]]] = [[None] * len(ids) for _ in ids]
    unavailable = []
    for b, j in enumerate(ids):
        if j == dense:
            for a in range(len(ids)):
                cells[a][b] = SMOOTH
            continue
        gens = ideals.get(j)
        if gens is None:
            unavailable.append(j)
            logger.warning(f"{case.id}: no ideal for the closure of O{j}; column left open")
            continue
        gens = [g for g in gens if g]
        codim = case.codim(j)
        for a, i in enumerate(ids):
            cells[a][b] = table_cell(gens, case.orbit(i).representative, codim)
        logger.debug(f"{case.id}: column {j} done")
    return ContainmentTable(case.id, ids, cells, unavailable)


# -- degeneration order ------------------------------------------------------------

@dataclass
class DegenerationOrder:
    relations: List[Tuple[int, int]]
    covers: List[Tuple[int, int]]

    def hasse(self) -> str:
        return "".join(f"O{i} < O{j}\n" for i, j in self.covers)


def degeneration_order(case: CaseData, table: Optional[Sequence[Sequence[str]]] = None) -> DegenerationOrder:
    """
    (i, j) whenever O_i lies in the closure of O_j, from the printed (corrected)
    table unless one is given; checked to be a partial order compatible with
    dimension
    """
    grid = table if table is not None else case.printed_table()
    if grid is None:
        raise InputError(f"{case.id} has no containment table")
    ids = [o.id for o in case.orbits]
    below = {(ids[a], ids[b]) for a, row in enumerate(grid) for b, c in enumerate(row)
             if c not in (EMPTY, None, "?")}
    dims = {o.id: o.dimension for o in case.orbits}

    for i in ids:
        if (i, i) not in below:
            raise VerificationMismatch(f"{case.id}: O{i} is not in its own closure")
    for i, j in below:
        if i != j and ((j, i) in below or dims[i] >= dims[j]):
            raise VerificationMismatch(f"{case.id}: O{i} < O{j} contradicts the dimensions {dims[i]}, {dims[j]}")
    for i, j in below:
        for k in ids:
            if (j, k) in below and (i, k) not in below:
                raise VerificationMismatch(f"{case.id}: O{i} < O{j} < O{k} but O{i} is not below O{k}")

    strict = sorted((i, j) for i, j in below if i != j)
    covers = [(i, j) for i, j in strict
              if not any((i, k) in below and (k, j) in below for k in ids if k not in (i, j))]
    return DegenerationOrder(strict, covers)
