"""
Groebner bases of submodules of graded free modules, syzygies, minimal
presentations and exact rank evaluation
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grevlex

from orbitres.algebra import graded, linalg
from orbitres.algebra.matrices import Column, GradedFreeModule, PolyMatrix, column_degree
from orbitres.algebra.polyring import (
    Monomial,
    Point,
    Polynomial,
    PolynomialRing,
    VariableSpec,
    is_homogeneous,
    ring_of,
    total_degree,
)
from orbitres.core.config import settings
from orbitres.core.exceptions import InputError, SamplingDiagnostic


logger = logging.getLogger("algebra.groebner")

Term = Tuple[int, Monomial]
Vector = Dict[Term, object]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _times(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class ModuleOrder:
    """
    Term order on (position, monomial) pairs.

    "top": grevlex on monomials, ties broken towards the lowest position.
    "block": positions below `split` outrank every position from `split` on,
    "top" inside each block (used to eliminate the first block).
    """
    name: str = "top"
    split: int = 0

    def key(self, term: Term):
        pos, m = term
        if self.name == "block":
            return (1 if pos < self.split else 0, grevlex(m), -pos)
        return (grevlex(m), -pos)


@dataclass
class ModuleGB:
    """Groebner basis of a submodule of a graded free module"""
    ring: PolynomialRing
    twists: Tuple[int, ...]
    order: ModuleOrder
    elements: List[Vector] = field(default_factory=list)
    complete_degree: Optional[int] = None

    def __post_init__(self):
        self._leads: List[Term] = [self.lead(v) for v in self.elements]

    # -- term data ------------------------------------------------------------

    def lead(self, vector: Vector) -> Term:
        return max(vector, key=self.order.key)

    def degree(self, vector: Vector) -> int:
        pos, m = next(iter(vector))
        return self.twists[pos] + self.ring.monomial_degree(m)

    @property
    def leads(self) -> List[Term]:
        return list(self._leads)

    # -- reduction ------------------------------------------------------------

    def _reducer(self, term: Term) -> Optional[int]:
        pos, m = term
        for k, (lpos, lm) in enumerate(self._leads):
            if lpos == pos and _divides(lm, m):
                return k
        return None

    def normal_form(self, vector: Vector) -> Vector:
        """Fully reduced remainder of the vector modulo the basis"""
        f = {k: v for k, v in vector.items() if v}
        remainder: Vector = {}
        key = self.order.key
        while f:
            lead = max(f, key=key)
            coeff = f.pop(lead)
            k = self._reducer(lead)
            if k is None:
                remainder[lead] = coeff
                continue
            g = self.elements[k]
            gpos, glm = self._leads[k]
            shift = _quotient(lead[1], glm)
            scale = coeff / g[(gpos, glm)]
            for (pos, m), a in g.items():
                if (pos, m) == (gpos, glm):
                    continue
                t = (pos, _times(m, shift))
                value = f.get(t, QQ.zero) - scale * a
                if value:
                    f[t] = value
                else:
                    f.pop(t, None)
        return remainder

    def reduces_to_zero(self, vector: Vector) -> bool:
        return not self.normal_form(vector)

    def contains_column(self, column: Column) -> bool:
        return self.reduces_to_zero(column_vector(column))

    # -- checks ---------------------------------------------------------------

    def s_vector(self, i: int, j: int) -> Optional[Vector]:
        (pi, mi), (pj, mj) = self._leads[i], self._leads[j]
        if pi != pj:
            return None
        lcm = _lcm(mi, mj)
        return _s_vector(self.elements[i], self._leads[i], self.elements[j], self._leads[j], lcm)

    def is_groebner(self) -> bool:
        """Buchberger criterion over all S-pairs within the completion degree"""
        for i in range(len(self.elements)):
            for j in range(i + 1, len(self.elements)):
                s = self.s_vector(i, j)
                if s is None:
                    continue
                if self.complete_degree is not None:
                    lcm = _lcm(self._leads[i][1], self._leads[j][1])
                    if self.twists[self._leads[i][0]] + self.ring.monomial_degree(lcm) > self.complete_degree:
                        continue
                if self.normal_form(s):
                    return False
        return True

    def hilbert_function(self, degree: int) -> int:
        """Number of standard monomials of the quotient module in `degree`"""
        if self.complete_degree is not None and degree > self.complete_degree:
            raise InputError(
                f"basis complete up to degree {self.complete_degree}, asked for {degree}"
            )
        count = 0
        for pos, t in enumerate(self.twists):
            leads = [lm for (lpos, lm) in self._leads if lpos == pos]
            for m in self.ring.monomials(degree - t):
                if not any(_divides(lm, m) for lm in leads):
                    count += 1
        return count

    # -- export ---------------------------------------------------------------

    def columns(self) -> List[Column]:
        return [vector_column(self.ring, v) for v in self.elements]

    def __len__(self):
        return len(self.elements)


def column_vector(column: Column) -> Vector:
    return {(r, m): a for r, p in column.items() for m, a in p.items() if a}


def vector_column(ring: PolynomialRing, vector: Vector) -> Column:
    grouped: Dict[int, Dict[Monomial, object]] = {}
    for (pos, m), a in vector.items():
        grouped.setdefault(pos, {})[m] = a
    return {pos: ring.R.from_dict(terms) for pos, terms in grouped.items()}


def _s_vector(f: Vector, flead: Term, g: Vector, glead: Term, lcm: Monomial) -> Vector:
    fs, gs = _quotient(lcm, flead[1]), _quotient(lcm, glead[1])
    fc, gc = f[flead], g[glead]
    out: Vector = {}
    for (pos, m), a in f.items():
        t = (pos, _times(m, fs))
        out[t] = out.get(t, QQ.zero) + a / fc
    for (pos, m), a in g.items():
        t = (pos, _times(m, gs))
        out[t] = out.get(t, QQ.zero) - a / gc
    return {t: a for t, a in out.items() if a}


def _monic(vector: Vector, lead: Term) -> Vector:
    c = vector[lead]
    return {t: a / c for t, a in vector.items()}


def _buchberger(ring: PolynomialRing, twists: Sequence[int], inputs: Sequence[Vector],
                order: ModuleOrder, degree_limit: Optional[int]) -> ModuleGB:
    """Homogeneous Buchberger algorithm, normal selection strategy by degree"""
    gb = ModuleGB(ring, tuple(twists), order, [], degree_limit)

    def degree_of(v: Vector) -> int:
        pos, m = next(iter(v))
        return twists[pos] + ring.monomial_degree(m)

    pending: Dict[int, List[Vector]] = {}
    for v in inputs:
        if v:
            pending.setdefault(degree_of(v), []).append(v)
    pairs: List[Tuple[int, int, int, Monomial]] = []

    def add_element(v: Vector) -> None:
        lead = gb.lead(v)
        v = _monic(v, lead)
        h = len(gb.elements)
        pos, lm = lead
        # Gebauer-Moeller: drop old pairs whose lcm the new lead divides strictly
        kept = []
        for (deg, i, j, lcm) in pairs:
            li, lj = gb._leads[i][1], gb._leads[j][1]
            if (gb._leads[i][0] == pos and _divides(lm, lcm)
                    and _lcm(li, lm) != lcm and _lcm(lj, lm) != lcm):
                continue
            kept.append((deg, i, j, lcm))
        pairs[:] = kept
        fresh: Dict[Monomial, Tuple[int, int, int, Monomial]] = {}
        for i, (ipos, ilm) in enumerate(gb._leads):
            if ipos != pos:
                continue
            lcm = _lcm(ilm, lm)
            deg = twists[pos] + ring.monomial_degree(lcm)
            if lcm not in fresh:
                fresh[lcm] = (deg, i, h, lcm)
        lcms = list(fresh)
        for lcm in lcms:
            if any(other != lcm and _divides(other, lcm) for other in lcms):
                continue
            pairs.append(fresh[lcm])
        gb.elements.append(v)
        gb._leads.append(lead)

    steps = 0
    while pending or pairs:
        candidates = [d for d in pending] + [p[0] for p in pairs]
        degree = min(candidates)
        if degree_limit is not None and degree > degree_limit:
            break
        steps += 1
        if steps > settings.MAX_DEGREE_STEPS * 64:
            raise InputError("Groebner basis computation exceeded its step bound")
        batch = pending.pop(degree, [])
        now = sorted((p for p in pairs if p[0] == degree), key=lambda p: (p[1], p[2]))
        pairs[:] = [p for p in pairs if p[0] != degree]
        work = [gb.s_vector(i, j) for (_, i, j, _) in now] + batch
        for v in work:
            if not v:
                continue
            r = gb.normal_form(v)
            if r:
                add_element(r)
        logger.debug(f"groebner degree {degree}: {len(gb.elements)} elements")
    return _reduced(gb)


def _reduced(gb: ModuleGB) -> ModuleGB:
    """Reduced basis: minimal leads, tails in normal form, monic, sorted by lead"""
    keep = []
    for k, (pos, lm) in enumerate(gb._leads):
        redundant = any(
            j != k and lpos == pos and _divides(llm, lm) and (llm != lm or j < k)
            for j, (lpos, llm) in enumerate(gb._leads)
        )
        if not redundant:
            keep.append(k)
    minimal = ModuleGB(gb.ring, gb.twists, gb.order, [gb.elements[k] for k in keep],
                       gb.complete_degree)
    reduced = []
    for k, v in enumerate(minimal.elements):
        lead = minimal._leads[k]
        others = ModuleGB(gb.ring, gb.twists, gb.order,
                          [w for j, w in enumerate(minimal.elements) if j != k],
                          gb.complete_degree)
        tail = {t: a for t, a in v.items() if t != lead}
        reduced.append(_monic({lead: v[lead], **others.normal_form(tail)}, lead))
    reduced.sort(key=lambda v: gb.order.key(max(v, key=gb.order.key)))
    return ModuleGB(gb.ring, gb.twists, gb.order, reduced, gb.complete_degree)


def groebner_basis(gens: PolyMatrix, degree_limit: Optional[int] = None) -> ModuleGB:
    """Groebner basis of the column span of gens, complete up to degree_limit"""
    if not gens.is_homogeneous():
        raise InputError("groebner_basis needs homogeneous columns")
    inputs = [column_vector(col) for col in gens.columns()]
    return _buchberger(gens.ring, gens.target.twists, inputs, ModuleOrder("top"), degree_limit)


def ideal_groebner_basis(polys: Sequence[Polynomial], degree_limit: Optional[int] = None) -> ModuleGB:
    polys = [p for p in polys if p]
    if not polys:
        raise InputError("empty generator list")
    ring = ring_of(polys[0])
    return groebner_basis(PolyMatrix.from_rows(ring, [polys]), degree_limit)


def _pruned(ring: PolynomialRing, target: GradedFreeModule, columns: List[Column],
            twists: List[int], weights=None) -> PolyMatrix:
    keep = graded.minimal_generators(columns, target, weights)
    return PolyMatrix.from_columns(ring, target, [columns[k] for k in keep],
                                   [twists[k] for k in keep])


def _unbounded_syzygies(d: PolyMatrix) -> PolyMatrix:
    ring = d.ring
    nrows = d.nrows
    inputs = []
    for c, col in enumerate(d.columns()):
        v = column_vector(col)
        v[(nrows + c, (0,) * ring.ngens)] = QQ.one
        inputs.append(v)
    twists = tuple(d.target.twists) + tuple(d.source.twists)
    gb = _buchberger(ring, twists, inputs, ModuleOrder("block", nrows), None)
    columns, degrees = [], []
    for v in gb.elements:
        if gb.lead(v)[0] < nrows:
            continue
        columns.append({pos - nrows: p for pos, p in vector_column(ring, v).items()})
        degrees.append(gb.degree(v))
    order = sorted(range(len(columns)), key=lambda k: degrees[k])
    columns = [columns[k] for k in order]
    degrees = [degrees[k] for k in order]
    inferred = graded.infer_weights(d)
    return _pruned(ring, d.source, columns, degrees, inferred[0] if inferred else None)


def syzygies(d: PolyMatrix, degree_limit: Optional[int] = None) -> PolyMatrix:
    """
    Minimal generators of the syzygies of d, up to degree_limit inclusive when
    given; s satisfies d s = 0 and its target is d.source.
    """
    if not d.is_homogeneous():
        raise InputError("syzygies need a homogeneous matrix")
    if d.ncols == 0:
        return PolyMatrix(GradedFreeModule(d.ring, ()), d.source)
    if degree_limit is None:
        s = _unbounded_syzygies(d)
    else:
        s = graded.syzygies(d, degree_limit)
    logger.info(f"syzygies of a {d.nrows}x{d.ncols} matrix: {s.ncols} generators")
    return s


def minimize_presentation(d: PolyMatrix) -> PolyMatrix:
    """
    Presentation of coker d without constant entries: unit pivots are eliminated
    together with their row and column, then redundant columns are pruned.
    """
    current = d
    while True:
        unit = _first_unit(current)
        if unit is None:
            break
        current = eliminate_unit(current, *unit)
    inferred = graded.infer_weights(current)
    keep = graded.minimal_generators(current.columns(), current.target,
                                     inferred[1] if inferred else None)
    if len(keep) != current.ncols:
        current = current.submatrix(range(current.nrows), keep)
    return current


def _first_unit(d: PolyMatrix) -> Optional[Tuple[int, int]]:
    units = [(c, r) for (r, c), p in d.entries.items() if p.is_ground]
    if not units:
        return None
    c, r = min(units)
    return r, c


def eliminate_unit(d: PolyMatrix, r: int, c: int) -> PolyMatrix:
    """d[!r, !c] - d[!r, c] u^-1 d[r, !c] for the unit u = d[r, c]"""
    u = d.entry(r, c)
    if not u.is_ground or not u:
        raise InputError(f"entry ({r}, {c}) is not a unit")
    inv = QQ.one / u.LC
    col = {i: p for i, p in d.column(c).items() if i != r}
    row = {j: p for j, p in d.row(r).items() if j != c}
    entries = {(i, j): p for (i, j), p in d.entries.items() if i != r and j != c}
    for i, p in col.items():
        for j, q in row.items():
            key = (i, j)
            entries[key] = entries.get(key, d.ring.zero) - p * q * inv
    rows = [i for i in range(d.nrows) if i != r]
    cols = [j for j in range(d.ncols) if j != c]
    rpos = {i: k for k, i in enumerate(rows)}
    cpos = {j: k for k, j in enumerate(cols)}
    return PolyMatrix(
        d.source.restrict(cols),
        d.target.restrict(rows),
        {(rpos[i], cpos[j]): p for (i, j), p in entries.items() if p},
    )


# -- ranks --------------------------------------------------------------------

def rank_at_point(d: PolyMatrix, pt: Point) -> int:
    """Exact rank of d with every entry evaluated at pt"""
    if pt.ring != d.ring:
        raise InputError("point and matrix live over different rings")
    return d.rank_at(pt)


def sample_points(ring: PolynomialRing, count: Optional[int] = None,
                  seed: Optional[int] = None) -> List[Point]:
    """Deterministic pseudorandom rational points with nonzero coordinates"""
    count = count or settings.GENERIC_RANK_POINTS
    height = settings.RANDOM_HEIGHT
    rng = np.random.default_rng(settings.RANDOM_SEED if seed is None else seed)
    points = []
    for _ in range(count):
        nums = rng.integers(1, height + 1, size=ring.ngens)
        signs = rng.choice([-1, 1], size=ring.ngens)
        dens = rng.integers(1, height + 1, size=ring.ngens)
        coords = tuple(QQ(int(s) * int(n), int(q)) for n, s, q in zip(nums, signs, dens))
        points.append(Point(ring, coords))
    return points


def symbolic_rank(d: PolyMatrix) -> int:
    """Rank over the fraction field by symbolic elimination"""
    rows = [[d.entry(r, c).as_expr() for c in range(d.ncols)] for r in range(d.nrows)]
    return DomainMatrix.from_list_sympy(d.nrows, d.ncols, rows).to_field().rank()


def generic_rank(d: PolyMatrix, points: Optional[Sequence[Point]] = None) -> int:
    """
    Rank over the fraction field: the maximum of the ranks at a fixed family of
    pseudorandom points, cross-checked symbolically on small matrices.
    """
    if d.is_zero():
        return 0
    points = list(points) if points is not None else sample_points(d.ring)
    ranks = [d.rank_at(pt) for pt in points]
    best = max(ranks)
    if len(set(ranks)) > 1:
        diagnostic = SamplingDiagnostic(
            f"sample ranks {ranks} disagree on a {d.nrows}x{d.ncols} matrix"
        )
        logger.warning(str(diagnostic))
        if settings.STRICT_SAMPLING:
            raise diagnostic
    if len(d.entries) <= settings.SYMBOLIC_RANK_LIMIT:
        exact = symbolic_rank(d)
        if exact != best:
            logger.warning(f"symbolic rank {exact} differs from sampled rank {best}")
            best = exact
    return best


# -- implicitization ----------------------------------------------------------

def parameter_ring(count: int, prefix: str = "y") -> PolynomialRing:
    return PolynomialRing([VariableSpec(f"{prefix}{k}", k) for k in range(count)],
                          name=f"{prefix}[{count}]")


def kernel_of_parametrization(images: Sequence[Polynomial], degree_limit: int,
                              ring: Optional[PolynomialRing] = None) -> List[Polynomial]:
    """
    Minimal generators, up to degree_limit, of the relations among the images:
    polynomials f in `ring` (one variable per image) with f(images) = 0.
    """
    if not images:
        raise InputError("no images to implicitize")
    degs = {total_degree(p) for p in images}
    if len(degs) != 1 or not all(is_homogeneous(p) for p in images):
        raise InputError("images must be homogeneous of equal degree")
    ring = ring or parameter_ring(len(images))
    if ring.ngens != len(images):
        raise InputError(f"{len(images)} images for a ring with {ring.ngens} variables")
    source = images[0].ring

    powers: Dict[Monomial, Polynomial] = {(0,) * ring.ngens: source.one}

    def image_of(m: Monomial) -> Polynomial:
        got = powers.get(m)
        if got is None:
            k = next(i for i, e in enumerate(m) if e)
            prev = list(m)
            prev[k] -= 1
            got = image_of(tuple(prev)) * images[k]
            powers[m] = got
        return got

    relations: List[Polynomial] = []
    for degree in range(1, degree_limit + 1):
        monomials = ring.monomials(degree)
        index = linalg.VectorIndex()
        rows: Dict[int, Dict[int, object]] = {}
        for j, m in enumerate(monomials):
            for pm, a in image_of(m).items():
                rows.setdefault(index(pm), {})[j] = a
        for vec in linalg.nullspace(rows, len(index), len(monomials)):
            relations.append(ring.R.from_dict({monomials[j]: a for j, a in vec.items()}))
        logger.debug(f"implicitization degree {degree}: {len(relations)} relations so far")

    if not relations:
        return []
    target = GradedFreeModule(ring, (0,))
    keep = graded.minimal_generators([{0: p} for p in relations], target)
    return [relations[k] for k in keep]


def ideal_hilbert_function(polys: Sequence[Polynomial], degree: int) -> int:
    """dim (A/I)_degree by exact rank of the degree piece"""
    ring = ring_of(polys[0])
    return graded.hilbert_function(PolyMatrix.from_rows(ring, [list(polys)]), degree)


def minimal_ideal_generators(polys: Sequence[Polynomial]) -> List[Polynomial]:
    polys = [p for p in polys if p]
    if not polys:
        return []
    ring = ring_of(polys[0])
    keep = graded.minimal_generators([{0: p} for p in polys], GradedFreeModule(ring, (0,)))
    return [polys[k] for k in keep]


__all__ = [
    "GradedFreeModule",
    "ModuleGB",
    "ModuleOrder",
    "PolyMatrix",
    "column_degree",
    "eliminate_unit",
    "generic_rank",
    "groebner_basis",
    "ideal_groebner_basis",
    "ideal_hilbert_function",
    "kernel_of_parametrization",
    "minimal_ideal_generators",
    "minimize_presentation",
    "rank_at_point",
    "sample_points",
    "symbolic_rank",
    "syzygies",
]
