"""
Graded free modules and polynomial matrices between them
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from orbitres.algebra import linalg
from orbitres.algebra.polyring import (
    Point,
    Polynomial,
    PolynomialRing,
    evaluate,
    homogeneous_degree,
)
from orbitres.core.exceptions import InputError


Column = Dict[int, Polynomial]


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module with basis element k generating A(-twists[k])"""
    ring: PolynomialRing
    twists: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        if self.labels and len(self.labels) != len(self.twists):
            raise InputError("one label per basis element is required")
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def label(self, k: int) -> str:
        return self.labels[k] if self.labels else ""

    def dual(self, shift: int = 0) -> "GradedFreeModule":
        return GradedFreeModule(self.ring, tuple(shift - t for t in self.twists), self.labels)

    def restrict(self, keep: Sequence[int]) -> "GradedFreeModule":
        return GradedFreeModule(
            self.ring,
            tuple(self.twists[k] for k in keep),
            tuple(self.labels[k] for k in keep) if self.labels else (),
        )

    def direct_sum(self, other: "GradedFreeModule") -> "GradedFreeModule":
        labels = ()
        if self.labels or other.labels:
            labels = (self.labels or ("",) * self.rank) + (other.labels or ("",) * other.rank)
        return GradedFreeModule(self.ring, self.twists + other.twists, labels)

    def blocks(self) -> List[Tuple[str, List[int]]]:
        """Consecutive runs of equal labels"""
        out: List[Tuple[str, List[int]]] = []
        for k in range(self.rank):
            lab = self.label(k)
            if out and out[-1][0] == lab:
                out[-1][1].append(k)
            else:
                out.append((lab, [k]))
        return out


class PolyMatrix:
    """
    Homogeneous matrix d: source -> target; entry (r, c) has degree
    source.twists[c] - target.twists[r]. Entries are stored sparsely.
    """

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule,
                 entries: Optional[Dict[Tuple[int, int], Polynomial]] = None):
        if source.ring != target.ring:
            raise InputError("source and target live over different rings")
        self.source = source
        self.target = target
        self.ring = source.ring
        self.entries: Dict[Tuple[int, int], Polynomial] = {
            k: v for k, v in (entries or {}).items() if v
        }
        for (r, c) in self.entries:
            if not (0 <= r < target.rank and 0 <= c < source.rank):
                raise InputError(f"entry ({r}, {c}) outside a {target.rank}x{source.rank} matrix")
        self._columns: Optional[List[Column]] = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def zero(cls, source: GradedFreeModule, target: GradedFreeModule) -> "PolyMatrix":
        return cls(source, target, {})

    @classmethod
    def identity(cls, module: GradedFreeModule) -> "PolyMatrix":
        one = module.ring.one
        return cls(module, module, {(k, k): one for k in range(module.rank)})

    @classmethod
    def from_rows(cls, ring: PolynomialRing, rows: Sequence[Sequence[Polynomial]],
                  target_twists: Optional[Sequence[int]] = None,
                  source_twists: Optional[Sequence[int]] = None) -> "PolyMatrix":
        """Matrix from nested lists; missing twists are inferred from the entries"""
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {(r, c): rows[r][c] for r in range(nrows) for c in range(ncols) if rows[r][c]}
        return cls.from_entries(ring, nrows, ncols, entries, target_twists, source_twists)

    @classmethod
    def from_columns(cls, ring: PolynomialRing, target: GradedFreeModule,
                     columns: Sequence[Column],
                     source_twists: Optional[Sequence[int]] = None) -> "PolyMatrix":
        entries = {(r, c): p for c, col in enumerate(columns) for r, p in col.items() if p}
        if source_twists is None:
            source_twists = [column_degree(ring, col, target.twists) for col in columns]
        return cls(GradedFreeModule(ring, tuple(source_twists)), target, entries)

    @classmethod
    def from_entries(cls, ring: PolynomialRing, nrows: int, ncols: int,
                     entries: Dict[Tuple[int, int], Polynomial],
                     target_twists: Optional[Sequence[int]] = None,
                     source_twists: Optional[Sequence[int]] = None) -> "PolyMatrix":
        entries = {k: v for k, v in entries.items() if v}
        if target_twists is None and source_twists is None:
            target_twists = [0] * nrows
        if source_twists is None:
            source_twists = [0] * ncols
            for (r, c), p in sorted(entries.items()):
                source_twists[c] = homogeneous_degree(p, ring) + target_twists[r]
        if target_twists is None:
            target_twists = [0] * nrows
            for (r, c), p in sorted(entries.items()):
                target_twists[r] = source_twists[c] - homogeneous_degree(p, ring)
        return cls(GradedFreeModule(ring, tuple(source_twists)),
                   GradedFreeModule(ring, tuple(target_twists)), entries)

    # -- shape and access -----------------------------------------------------

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, r: int, c: int) -> Polynomial:
        return self.entries.get((r, c), self.ring.zero)

    def columns(self) -> List[Column]:
        if self._columns is None:
            cols: List[Column] = [dict() for _ in range(self.ncols)]
            for (r, c), p in self.entries.items():
                cols[c][r] = p
            self._columns = cols
        return self._columns

    def column(self, c: int) -> Column:
        return self.columns()[c]

    def row(self, r: int) -> Dict[int, Polynomial]:
        return {c: p for (rr, c), p in self.entries.items() if rr == r}

    def to_lists(self) -> List[List[Polynomial]]:
        return [[self.entry(r, c) for c in range(self.ncols)] for r in range(self.nrows)]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    # -- algebra --------------------------------------------------------------

    def transpose(self) -> "PolyMatrix":
        """d^T : target* -> source*, twists negated"""
        return PolyMatrix(self.target.dual(), self.source.dual(),
                          {(c, r): p for (r, c), p in self.entries.items()})

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        """self o other"""
        if other.nrows != self.ncols:
            raise InputError(f"cannot compose {self.shape} with {other.shape}")
        by_row: Dict[int, List[Tuple[int, Polynomial]]] = {}
        for (r, c), p in other.entries.items():
            by_row.setdefault(r, []).append((c, p))
        out: Dict[Tuple[int, int], Polynomial] = {}
        for (r, k), p in self.entries.items():
            for c, q in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, self.ring.zero) + p * q
        return PolyMatrix(other.source, self.target, out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.shape != self.shape:
            raise InputError("shape mismatch in matrix sum")
        out = dict(self.entries)
        for k, p in other.entries.items():
            out[k] = out.get(k, self.ring.zero) + p
        return PolyMatrix(self.source, self.target, out)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.source, self.target, {k: -p for k, p in self.entries.items()})

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, factor) -> "PolyMatrix":
        f = QQ.convert(factor)
        return PolyMatrix(self.source, self.target, {k: p * f for k, p in self.entries.items()})

    def with_modules(self, source: Optional[GradedFreeModule] = None,
                     target: Optional[GradedFreeModule] = None) -> "PolyMatrix":
        return PolyMatrix(source or self.source, target or self.target, self.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: j for j, c in enumerate(cols)}
        entries = {
            (rpos[r], cpos[c]): p
            for (r, c), p in self.entries.items()
            if r in rpos and c in cpos
        }
        return PolyMatrix(self.source.restrict(cols), self.target.restrict(rows), entries)

    def drop(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "PolyMatrix":
        rows, cols = set(rows), set(cols)
        return self.submatrix([r for r in range(self.nrows) if r not in rows],
                              [c for c in range(self.ncols) if c not in cols])

    # -- homogeneity ----------------------------------------------------------

    def homogeneity_defects(self) -> List[Tuple[int, int]]:
        bad = []
        for (r, c), p in self.entries.items():
            want = self.source.twists[c] - self.target.twists[r]
            if any(self.ring.monomial_degree(m) != want for m in p.keys()):
                bad.append((r, c))
        return sorted(bad)

    def is_homogeneous(self) -> bool:
        return not self.homogeneity_defects()

    def has_unit_entries(self) -> bool:
        return any(p.is_ground for p in self.entries.values())

    # -- evaluation -----------------------------------------------------------

    def evaluate_rows(self, pt: Point) -> Dict[int, Dict[int, object]]:
        rows: Dict[int, Dict[int, object]] = {}
        for (r, c), p in self.entries.items():
            v = evaluate(p, pt)
            if v:
                rows.setdefault(r, {})[c] = v
        return rows

    def rank_at(self, pt: Point) -> int:
        return linalg.rank(self.evaluate_rows(pt), self.nrows, self.ncols)


def column_degree(ring: PolynomialRing, col: Column, target_twists: Sequence[int]) -> int:
    for r, p in sorted(col.items()):
        if p:
            return homogeneous_degree(p, ring) + target_twists[r]
    raise InputError("cannot infer the degree of a zero column")


def hstack(*blocks: PolyMatrix) -> PolyMatrix:
    if not blocks:
        raise InputError("nothing to stack")
    target = blocks[0].target
    entries: Dict[Tuple[int, int], Polynomial] = {}
    source = None
    offset = 0
    for b in blocks:
        if b.target.twists != target.twists:
            raise InputError("horizontal blocks must share the target module")
        for (r, c), p in b.entries.items():
            entries[(r, c + offset)] = p
        offset += b.ncols
        source = b.source if source is None else source.direct_sum(b.source)
    return PolyMatrix(source, target, entries)


def vstack(*blocks: PolyMatrix) -> PolyMatrix:
    if not blocks:
        raise InputError("nothing to stack")
    source = blocks[0].source
    entries: Dict[Tuple[int, int], Polynomial] = {}
    target = None
    offset = 0
    for b in blocks:
        if b.source.twists != source.twists:
            raise InputError("vertical blocks must share the source module")
        for (r, c), p in b.entries.items():
            entries[(r + offset, c)] = p
        offset += b.nrows
        target = b.target if target is None else target.direct_sum(b.target)
    return PolyMatrix(source, target, entries)


def block_matrix(rows: Sequence[Sequence[Optional[PolyMatrix]]],
                 sources: Sequence[GradedFreeModule],
                 targets: Sequence[GradedFreeModule]) -> PolyMatrix:
    """Block matrix; None blocks are zero"""
    source = sources[0]
    for m in sources[1:]:
        source = source.direct_sum(m)
    target = targets[0]
    for m in targets[1:]:
        target = target.direct_sum(m)
    col_off = [0]
    for m in sources:
        col_off.append(col_off[-1] + m.rank)
    row_off = [0]
    for m in targets:
        row_off.append(row_off[-1] + m.rank)
    entries: Dict[Tuple[int, int], Polynomial] = {}
    for i, row in enumerate(rows):
        for j, blk in enumerate(row):
            if blk is None:
                continue
            for (r, c), p in blk.entries.items():
                entries[(r + row_off[i], c + col_off[j])] = p
    return PolyMatrix(source, target, entries)
