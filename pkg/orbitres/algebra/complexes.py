"""
Finite complexes of graded free modules: Betti tables, dualization,
minimization, resolutions, chain-map lifting, mapping cones and the cone
procedure for non-normal orbit closures
"""
import difflib
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from orbitres.algebra.graded import factor_through
from orbitres.algebra.groebner import eliminate_unit, minimize_presentation, syzygies
from orbitres.algebra.matrices import GradedFreeModule, PolyMatrix, block_matrix, hstack
from orbitres.algebra.polyring import PolynomialRing, ring_of
from orbitres.core.exceptions import (
    FactorizationError,
    HomologyError,
    InputError,
    SpliceError,
)


logger = logging.getLogger("algebra.complexes")


class FreeComplex:
    """
    F_0 <- F_1 <- ... <- F_n with differentials[k - 1] = d_k : F_k -> F_{k-1}
    """

    def __init__(self, differentials: Sequence[PolyMatrix],
                 base: Optional[GradedFreeModule] = None):
        self.differentials: List[PolyMatrix] = list(differentials)
        if not self.differentials and base is None:
            raise InputError("a complex without differentials needs its module F_0")
        self.ring: PolynomialRing = (base or self.differentials[0].target).ring
        self.modules: List[GradedFreeModule] = [base or self.differentials[0].target]
        for k, d in enumerate(self.differentials, start=1):
            if d.target.twists != self.modules[-1].twists:
                raise InputError(f"d_{k} does not land in F_{k - 1}: twists differ")
            self.modules.append(d.source)

    @classmethod
    def single(cls, module: GradedFreeModule) -> "FreeComplex":
        return cls([], base=module)

    @property
    def length(self) -> int:
        return len(self.differentials)

    def module(self, k: int) -> GradedFreeModule:
        if 0 <= k <= self.length:
            return self.modules[k]
        return GradedFreeModule(self.ring, ())

    def d(self, k: int) -> PolyMatrix:
        if 1 <= k <= self.length:
            return self.differentials[k - 1]
        return PolyMatrix.zero(self.module(k), self.module(k - 1))

    def ranks(self) -> List[int]:
        return [m.rank for m in self.modules]

    def is_minimal(self) -> bool:
        return not any(d.has_unit_entries() for d in self.differentials)

    def __repr__(self):
        return f"FreeComplex(ranks={self.ranks()})"


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j}; rendered with row r holding beta_{i, i+r}"""
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    minimal: bool = True

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    @classmethod
    def from_complex(cls, C: FreeComplex) -> "BettiTable":
        entries: Dict[Tuple[int, int], int] = {}
        for i, module in enumerate(C.modules):
            for j in module.twists:
                entries[(i, j)] = entries.get((i, j), 0) + 1
        return cls(entries, C.is_minimal())

    @classmethod
    def from_rows(cls, rows: Mapping[int, Sequence[int]]) -> "BettiTable":
        """Rows as printed: row r lists beta_{0,r}, beta_{1,1+r}, ..."""
        entries = {}
        for r, values in rows.items():
            for i, v in enumerate(values):
                if v:
                    entries[(i, i + int(r))] = int(v)
        return cls(entries)

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def totals(self) -> List[int]:
        out = [0] * (self.length + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def rows(self) -> Dict[int, List[int]]:
        if not self.entries:
            return {}
        n = self.length + 1
        out: Dict[int, List[int]] = {}
        for (i, j), v in sorted(self.entries.items()):
            out.setdefault(j - i, [0] * n)[i] = v
        return dict(sorted(out.items()))

    def render(self) -> str:
        """Layout with header of homological indices, a total row, dots for zero"""
        totals = self.totals()
        rows = self.rows()
        lo = min(rows, default=0)
        hi = max(rows, default=0)
        cells = [[str(i) for i in range(len(totals))], [str(t) for t in totals]]
        labels = ["", "total:"]
        for r in range(lo, hi + 1):
            values = rows.get(r, [0] * len(totals))
            cells.append([str(v) if v else "." for v in values])
            labels.append(f"{r}:")
        width = max(len(c) for row in cells for c in row)
        lw = max(len(lab) for lab in labels)
        lines = []
        for lab, row in zip(labels, cells):
            lines.append(f"{lab:>{lw}} " + " ".join(c.rjust(width) for c in row))
        return "\n".join(line.rstrip() for line in lines) + "\n"

    def shifted(self, s: int) -> "BettiTable":
        """Same table with every twist moved by s"""
        return BettiTable({(i, j + s): v for (i, j), v in self.entries.items()}, self.minimal)

    def triples(self) -> str:
        return "".join(f"{i} {j} {v}\n" for (i, j), v in sorted(self.entries.items()))

    def diff(self, other: "BettiTable", names=("expected", "computed")) -> str:
        return "".join(difflib.unified_diff(
            other.render().splitlines(keepends=True),
            self.render().splitlines(keepends=True),
            fromfile=names[0], tofile=names[1],
        ))

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries


@dataclass
class ChainMap:
    """blocks[k] : F_k -> Fp_k commuting with both differentials"""
    source: FreeComplex
    target: FreeComplex
    blocks: List[PolyMatrix]

    def block(self, k: int) -> PolyMatrix:
        if 0 <= k < len(self.blocks):
            return self.blocks[k]
        return PolyMatrix.zero(self.source.module(k), self.target.module(k))

    def failing_square(self) -> Optional[int]:
        top = max(self.source.length, self.target.length)
        for k in range(1, top + 1):
            left = self.target.d(k) @ self.block(k)
            right = self.block(k - 1) @ self.source.d(k)
            if not (left - right).is_zero():
                return k
        return None


# -- basic operations ---------------------------------------------------------

def is_complex(C: FreeComplex) -> Tuple[bool, Optional[int]]:
    """(True, None) if consecutive differentials compose to zero, else (False, k) for d_{k-1} d_k != 0"""
    for k in range(2, C.length + 1):
        if not (C.d(k - 1) @ C.d(k)).is_zero():
            return False, k
    return True, None


def betti(C: FreeComplex) -> BettiTable:
    table = BettiTable.from_complex(C)
    if not table.minimal:
        logger.warning(f"Betti table of a non-minimal complex {C!r}")
    return table


def dualize(C: FreeComplex, shift: Optional[int] = None) -> FreeComplex:
    """
    G_i = F_{n-i}^* with twists s - t, s the largest twist of F_n by default;
    the differentials are transposes
    """
    n = C.length
    if n == 0:
        s = max(C.modules[0].twists, default=0) if shift is None else shift
        return FreeComplex.single(C.modules[0].dual(s))
    s = max(C.modules[n].twists, default=0) if shift is None else shift
    differentials = []
    for i in range(1, n + 1):
        dT = C.d(n - i + 1).transpose()
        differentials.append(dT.with_modules(
            C.module(n - i).dual(s), C.module(n - i + 1).dual(s)
        ))
    return FreeComplex(differentials)


def minimize_complex(C: FreeComplex) -> FreeComplex:
    """Cancel unit entries by Gaussian elimination until no constant entry remains"""
    diffs = list(C.differentials)
    base = C.modules[0]
    changed = True
    while changed:
        changed = False
        for k in range(1, len(diffs) + 1):
            d = diffs[k - 1]
            units = sorted((c, r) for (r, c), p in d.entries.items() if p.is_ground)
            if not units:
                continue
            c, r = units[0]
            diffs[k - 1] = eliminate_unit(d, r, c)
            if k < len(diffs):
                diffs[k] = diffs[k].drop(rows=[c])
            if k >= 2:
                diffs[k - 2] = diffs[k - 2].drop(cols=[r])
            else:
                base = base.restrict([i for i in range(base.rank) if i != r])
            changed = True
            break
    while diffs and diffs[-1].ncols == 0:
        diffs.pop()
    if diffs:
        diffs[0] = diffs[0].with_modules(target=base)
    return FreeComplex(diffs, base=base)


# -- resolutions --------------------------------------------------------------

def resolve(presentation: PolyMatrix, bounds: Optional[Sequence[Optional[int]]] = None,
            length_limit: Optional[int] = None, minimize: bool = True) -> FreeComplex:
    """
    Minimal free resolution of coker(presentation) by iterated syzygies;
    bounds[k] is the degree bound for the generators of F_{k+2}
    """
    d = minimize_presentation(presentation) if minimize else presentation
    diffs = [d]
    limit = length_limit if length_limit is not None else d.ring.ngens + 1
    k = 0
    while len(diffs) < limit:
        bound = None
        if bounds is not None:
            if k >= len(bounds):
                break
            bound = bounds[k]
        s = syzygies(diffs[-1], bound)
        if s.ncols == 0:
            break
        diffs.append(s)
        k += 1
        logger.info(f"resolution step {len(diffs)}: rank {s.ncols}")
    return FreeComplex(diffs)


def resolve_ideal(gens, bounds: Optional[Sequence[Optional[int]]] = None,
                  length_limit: Optional[int] = None) -> FreeComplex:
    gens = [g for g in gens if g]
    if not gens:
        raise InputError("resolution of the zero ideal")
    ring = ring_of(gens[0])
    return resolve(PolyMatrix.from_rows(ring, [gens]), bounds, length_limit)


def resolve_interactive(d: PolyMatrix, tail_bounds: Sequence[Optional[int]],
                        head_bounds: Sequence[Optional[int]],
                        length_limit: Optional[int] = None) -> FreeComplex:
    """
    Treat d as d_i with i = len(head_bounds) + 1. The tail comes from iterated
    syzygies of d, the head from syzygies of transposes, dualized back; the
    pieces are spliced and checked to form a complex.
    """
    i = len(head_bounds) + 1
    head: List[PolyMatrix] = []
    current = d
    for bound in head_bounds:
        s = syzygies(current.transpose(), bound)
        if s.ncols == 0:
            raise SpliceError(f"head step below d_{i - len(head)} produced no generators")
        previous = s.transpose()
        previous = previous.with_modules(source=current.target)
        head.insert(0, previous)
        current = previous

    tail: List[PolyMatrix] = []
    current = d
    limit = length_limit if length_limit is not None else i + len(tail_bounds)
    for bound in tail_bounds:
        if i + len(tail) >= limit:
            break
        s = syzygies(current, bound)
        if s.ncols == 0:
            break
        tail.append(s)
        current = s
    else:
        if tail_bounds and i + len(tail) < limit:
            logger.warning(
                f"tail bounds exhausted after F_{i + len(tail)}; the resolution may continue"
            )

    C = FreeComplex(head + [d] + tail)
    ok, k = is_complex(C)
    if not ok:
        raise SpliceError(f"spliced complex fails at d_{k - 1} d_{k}")
    return C


# -- chain maps and cones -----------------------------------------------------

def lift_chain_map(F: FreeComplex, Fp: FreeComplex, pi0: PolyMatrix,
                   length: Optional[int] = None) -> ChainMap:
    """Extend pi0 : F_0 -> Fp_0 degree by degree through Fp's differentials"""
    if pi0.source.twists != F.module(0).twists or pi0.target.twists != Fp.module(0).twists:
        raise InputError("pi0 must map F_0 to Fp_0")
    top = F.length if length is None else min(length, F.length)
    blocks = [pi0]
    for k in range(1, top + 1):
        rhs = blocks[k - 1] @ F.d(k)
        try:
            block = factor_through(Fp.d(k), rhs)
        except FactorizationError as exc:
            raise FactorizationError(f"chain map does not lift to degree {k}: {exc}") from exc
        blocks.append(block.with_modules(source=F.module(k), target=Fp.module(k)))
    m = ChainMap(F, Fp, blocks)
    bad = None
    for k in range(1, top + 1):
        if not (Fp.d(k) @ m.block(k) - m.block(k - 1) @ F.d(k)).is_zero():
            bad = k
            break
    if bad is not None:
        raise FactorizationError(f"lifted chain map fails to commute in degree {bad}")
    return m


def cone_differential(m: ChainMap, k: int) -> PolyMatrix:
    """D_k = [[-d^F_{k-1}, 0], [pi_{k-1}, d^{Fp}_k]] : F_{k-1} + Fp_k -> F_{k-2} + Fp_{k-1}"""
    F, Fp = m.source, m.target
    return block_matrix(
        [[-F.d(k - 1), None], [m.block(k - 1), Fp.d(k)]],
        sources=[F.module(k - 1), Fp.module(k)],
        targets=[F.module(k - 2), Fp.module(k - 1)],
    )


def mapping_cone(m: ChainMap) -> FreeComplex:
    top = max(m.source.length + 1, m.target.length)
    diffs = [cone_differential(m, k) for k in range(1, top + 1)]
    C = FreeComplex(diffs)
    ok, k = is_complex(C)
    if not ok:
        raise HomologyError(f"cone differentials fail to compose to zero at {k}")
    return C


def homology_presentation(d_in: PolyMatrix, d_out: PolyMatrix,
                          kernel_limit: Optional[int] = None,
                          relation_limit: Optional[int] = None) -> PolyMatrix:
    """
    Minimal presentation of ker(d_in) / im(d_out), where d_in d_out = 0.
    The kernel generators default to the largest twist of the middle module.
    """
    if not (d_in @ d_out).is_zero():
        raise HomologyError("the two maps do not compose to zero")
    if kernel_limit is None:
        kernel_limit = max(d_in.source.twists, default=0)
    K = syzygies(d_in, kernel_limit)
    if K.ncols == 0:
        raise HomologyError("the kernel has no generators in the requested degrees")
    try:
        X = factor_through(K, d_out)
    except FactorizationError as exc:
        raise HomologyError(f"image is not inside the computed kernel: {exc}") from exc
    if relation_limit is None:
        relation_limit = max(d_out.source.twists, default=kernel_limit)
    R = syzygies(K, relation_limit)
    blocks = [b for b in (X, R) if b.ncols]
    if not blocks:
        return PolyMatrix.zero(GradedFreeModule(K.ring, ()), K.source)
    return minimize_presentation(hstack(*blocks))


def cokernel_presentation(d1: PolyMatrix, drop_rows: Sequence[int] = (),
                          drop_cols: Sequence[int] = ()) -> Tuple[PolyMatrix, List[int]]:
    """d1 with the listed rows and columns removed, and the rows that were kept"""
    kept = [r for r in range(d1.nrows) if r not in set(drop_rows)]
    return d1.drop(rows=drop_rows, cols=drop_cols), kept


def projection(source: GradedFreeModule, kept: Sequence[int]) -> PolyMatrix:
    one = source.ring.one
    return PolyMatrix(source, source.restrict(kept), {(i, r): one for i, r in enumerate(kept)})


def cone_procedure(normalization: FreeComplex, presentation: PolyMatrix,
                   truncated: bool = True, kept_rows: Optional[Sequence[int]] = None,
                   bounds: Optional[Sequence[Optional[int]]] = None,
                   degree_limit: Optional[int] = None) -> PolyMatrix:
    """
    Presentation of the coordinate ring of a non-normal orbit closure, extracted
    as degree-one homology of the cone over the lift of the projection
    F_0 -> C_0. When truncated only homological degrees <= 2 are used.

    ker(D1) is generated by the A generator and the image of D2, so kernel
    generators are taken up to the top twist of D2; relations (the ideal)
    up to that twist or degree_limit, whichever is larger.
    """
    F = normalization
    if kept_rows is None:
        kept_rows = _rows_by_labels(F.module(0), presentation.target)
    pi0 = projection(F.module(0), kept_rows)
    presentation = presentation.with_modules(target=pi0.target)

    length = 2 if truncated else None
    Fp = resolve(presentation, bounds, length_limit=length, minimize=False)
    m = lift_chain_map(F, Fp, pi0, length=1 if truncated else None)
    if truncated:
        D1, D2 = cone_differential(m, 1), cone_differential(m, 2)
    else:
        C = mapping_cone(m)
        D1, D2 = C.d(1), C.d(2)
    top = max(D2.source.twists, default=0)
    relations = top if degree_limit is None else max(top, degree_limit)
    H = homology_presentation(D1, D2, kernel_limit=top, relation_limit=relations)
    if H.nrows == 0:
        raise HomologyError("degree-one homology of the cone vanishes")
    logger.info(f"cone procedure: homology presented by a {H.nrows}x{H.ncols} matrix")
    return H


def _rows_by_labels(F0: GradedFreeModule, target: GradedFreeModule) -> List[int]:
    if not target.labels or not F0.labels:
        raise InputError("kept rows must be given when modules carry no labels")
    kept, used = [], set()
    for lab, t in zip(target.labels, target.twists):
        match = next((k for k in range(F0.rank)
                      if k not in used and F0.labels[k] == lab and F0.twists[k] == t), None)
        if match is None:
            raise InputError(f"row '{lab}' of the presentation is not a row of F_0")
        used.add(match)
        kept.append(match)
    return kept
