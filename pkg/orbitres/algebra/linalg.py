"""
Exact linear algebra over QQ on sparse vectors, backed by sympy DomainMatrix
"""
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from orbitres.core.config import settings


SparseVector = Dict[Hashable, object]


def domain_matrix(rows: Dict[int, Dict[int, object]], nrows: int, ncols: int) -> DomainMatrix:
    """DomainMatrix over QQ; sparse above the configured entry threshold, dense below"""
    clean = {i: {j: QQ.convert(v) for j, v in row.items() if v} for i, row in rows.items()}
    clean = {i: row for i, row in clean.items() if row}
    M = DomainMatrix(clean, (nrows, ncols), QQ)
    nnz = sum(len(r) for r in clean.values())
    if nnz <= settings.SPARSE_THRESHOLD and nrows * ncols <= 4 * settings.SPARSE_THRESHOLD:
        return M.to_dense()
    return M


def _sparse_rows(M: DomainMatrix) -> Dict[int, Dict[int, object]]:
    return {i: dict(row) for i, row in M.to_sparse().rep.items()}


def rank(rows: Dict[int, Dict[int, object]], nrows: int, ncols: int) -> int:
    if nrows == 0 or ncols == 0 or not any(rows.values()):
        return 0
    return domain_matrix(rows, nrows, ncols).rank()


def rref(rows: Dict[int, Dict[int, object]], nrows: int, ncols: int) -> Tuple[Dict[int, Dict[int, object]], Tuple[int, ...]]:
    """Reduced row echelon form as sparse rows plus pivot columns"""
    if nrows == 0 or ncols == 0 or not any(rows.values()):
        return {}, ()
    R, pivots = domain_matrix(rows, nrows, ncols).rref()
    return _sparse_rows(R), tuple(pivots)


def nullspace(rows: Dict[int, Dict[int, object]], nrows: int, ncols: int) -> List[Dict[int, object]]:
    """Basis of {x : M x = 0}, one sparse vector per free column"""
    reduced, pivots = rref(rows, nrows, ncols)
    pivot_set = set(pivots)
    pivot_row = {p: reduced.get(i, {}) for i, p in enumerate(pivots)}
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: QQ.one}
        for p, row in pivot_row.items():
            a = row.get(f)
            if a:
                vec[p] = -a
        basis.append(vec)
    return basis


def solve(rows: Dict[int, Dict[int, object]], nrows: int, ncols: int,
          rhs: Dict[int, object]) -> Optional[Dict[int, object]]:
    """One solution x of M x = rhs, or None when rhs is not in the column span"""
    if not rhs:
        return {}
    augmented = {i: dict(r) for i, r in rows.items()}
    for i, b in rhs.items():
        if b:
            augmented.setdefault(i, {})[ncols] = b
    reduced, pivots = rref(augmented, nrows, ncols + 1)
    if ncols in pivots:
        return None
    x = {}
    for i, p in enumerate(pivots):
        b = reduced.get(i, {}).get(ncols)
        if b:
            x[p] = b
    return x


class VectorIndex:
    """Dense column numbering for the keys of sparse vectors"""

    def __init__(self):
        self.keys: List[Hashable] = []
        self.position: Dict[Hashable, int] = {}

    def __len__(self):
        return len(self.keys)

    def __call__(self, key: Hashable) -> int:
        pos = self.position.get(key)
        if pos is None:
            pos = len(self.keys)
            self.position[key] = pos
            self.keys.append(key)
        return pos


def independent_columns(vectors: Sequence[SparseVector]) -> List[int]:
    """
    Indices of the lexicographically first maximal independent subset of the
    vectors (pivot columns of the matrix having them as columns).
    """
    if not vectors:
        return []
    index = VectorIndex()
    rows: Dict[int, Dict[int, object]] = {}
    for c, vec in enumerate(vectors):
        for key, a in vec.items():
            if a:
                rows.setdefault(index(key), {})[c] = a
    if not rows:
        return []
    _, pivots = rref(rows, len(index), len(vectors))
    return list(pivots)


def span_rank(vectors: Sequence[SparseVector]) -> int:
    return len(independent_columns(vectors))


def inverse(matrix: Sequence[Sequence[object]]) -> List[List[object]]:
    """Exact inverse of a square rational matrix given as nested lists"""
    n = len(matrix)
    M = DomainMatrix([[QQ.convert(a) for a in row] for row in matrix], (n, n), QQ)
    return [list(r) for r in M.inv().to_list()]
