"""
Weight-graded linear algebra in graded free modules.

Every degree piece of a free module over a case ring splits into torus-weight
blocks. Syzygies, lifts, generator pruning and Hilbert functions reduce to
exact eliminations on those blocks (Macaulay matrices).
"""
import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from orbitres.algebra import linalg
from orbitres.algebra.matrices import Column, GradedFreeModule, PolyMatrix, column_degree
from orbitres.algebra.polyring import Monomial, PolynomialRing, Weight
from orbitres.core.config import settings
from orbitres.core.exceptions import FactorizationError, InputError


logger = logging.getLogger("algebra.graded")

ModuleVector = Dict[Tuple[int, Monomial], object]
Weights = Tuple[List[Weight], List[Weight]]


def _add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def infer_weights(d: PolyMatrix) -> Optional[Weights]:
    """
    Torus weights (source, target) making every entry d[r, c] weight-homogeneous
    of weight w_source[c] - w_target[r]; None if no such assignment exists.
    """
    ring = d.ring
    if not ring.weights:
        return None
    zero = ring.zero_weight()
    entry_weight = {}
    for key, p in d.entries.items():
        w = ring.polynomial_weight(p)
        if w is None:
            return None
        entry_weight[key] = w

    by_col: Dict[int, List[int]] = {}
    by_row: Dict[int, List[int]] = {}
    for (r, c) in d.entries:
        by_col.setdefault(c, []).append(r)
        by_row.setdefault(r, []).append(c)

    src: List[Optional[Weight]] = [None] * d.ncols
    tgt: List[Optional[Weight]] = [None] * d.nrows
    for start in range(d.ncols):
        if src[start] is not None:
            continue
        src[start] = zero
        queue = deque([("s", start)])
        while queue:
            side, k = queue.popleft()
            if side == "s":
                for r in by_col.get(k, ()):
                    want = _sub(src[k], entry_weight[(r, k)])
                    if tgt[r] is None:
                        tgt[r] = want
                        queue.append(("t", r))
                    elif tgt[r] != want:
                        return None
            else:
                for c in by_row.get(k, ()):
                    want = _add(tgt[k], entry_weight[(k, c)])
                    if src[c] is None:
                        src[c] = want
                        queue.append(("s", c))
                    elif src[c] != want:
                        return None
    tgt = [w if w is not None else zero for w in tgt]
    return list(src), tgt


def _weights_or_trivial(d: PolyMatrix) -> Tuple[List[Weight], List[Weight], bool]:
    inferred = infer_weights(d)
    if inferred is None:
        return [()] * d.ncols, [()] * d.nrows, False
    return inferred[0], inferred[1], True


def _blocks(ring: PolynomialRing, degree: int, use_weights: bool) -> Dict[Weight, List[Monomial]]:
    if degree < 0:
        return {}
    if use_weights:
        return ring.monomials_by_weight(degree)
    return {(): ring.monomials(degree)}


def _unknowns(ring: PolynomialRing, twists: Sequence[int], weights: Sequence[Weight],
              degree: int, weight: Weight, use_weights: bool) -> List[Tuple[int, Monomial]]:
    out = []
    for c, (s, w) in enumerate(zip(twists, weights)):
        block = _blocks(ring, degree - s, use_weights)
        key = _sub(weight, w) if use_weights else ()
        for mu in block.get(key, ()):
            out.append((c, mu))
    return out


def _candidate_weights(ring: PolynomialRing, twists: Sequence[int], weights: Sequence[Weight],
                       degree: int, use_weights: bool) -> List[Weight]:
    found = set()
    for s, w in zip(twists, weights):
        for key in _blocks(ring, degree - s, use_weights):
            found.add(_add(w, key) if use_weights else ())
    return sorted(found)


def _image_column(d: PolyMatrix, c: int, mu: Monomial) -> ModuleVector:
    vec: ModuleVector = {}
    for r, p in d.column(c).items():
        for m, a in p.items():
            key = (r, _mono_mul(mu, m))
            vec[key] = vec.get(key, QQ.zero) + a
    return {k: v for k, v in vec.items() if v}


def _to_column(ring: PolynomialRing, vec: ModuleVector) -> Column:
    grouped: Dict[int, Dict[Monomial, object]] = {}
    for (c, mu), a in vec.items():
        if a:
            grouped.setdefault(c, {})[mu] = a
    return {c: ring.R.from_dict(terms) for c, terms in grouped.items()}


def _from_column(col: Column) -> ModuleVector:
    return {(r, m): a for r, p in col.items() for m, a in p.items()}


def homogeneous_kernel(d: PolyMatrix, degree: int, weight: Weight = ()) -> List[ModuleVector]:
    """Basis of the syzygies of d of internal degree `degree` and torus weight `weight`"""
    src_w, _, use_weights = _weights_or_trivial(d)
    return _kernel(d, degree, weight, src_w, use_weights)


def _kernel(d: PolyMatrix, degree: int, weight: Weight,
            src_w: Sequence[Weight], use_weights: bool) -> List[ModuleVector]:
    ring = d.ring
    unknowns = _unknowns(ring, d.source.twists, src_w, degree, weight, use_weights)
    if not unknowns:
        return []
    index = linalg.VectorIndex()
    rows: Dict[int, Dict[int, object]] = {}
    for j, (c, mu) in enumerate(unknowns):
        for key, a in _image_column(d, c, mu).items():
            rows.setdefault(index(key), {})[j] = a
    if not rows:
        return [{unknowns[j]: QQ.one} for j in range(len(unknowns))]
    basis = linalg.nullspace(rows, len(index), len(unknowns))
    return [{unknowns[j]: a for j, a in vec.items()} for vec in basis]


def _multiples(ring: PolynomialRing, gens: Sequence[Tuple[int, Weight, ModuleVector]],
               degree: int, weight: Weight, use_weights: bool) -> List[ModuleVector]:
    """Monomial multiples landing in (degree, weight) of earlier generators"""
    out = []
    for g_deg, g_w, g_vec in gens:
        if g_deg >= degree:
            continue
        block = _blocks(ring, degree - g_deg, use_weights)
        key = _sub(weight, g_w) if use_weights else ()
        for mu in block.get(key, ()):
            out.append({(c, _mono_mul(mu, m)): a for (c, m), a in g_vec.items()})
    return out


def syzygies(d: PolyMatrix, degree_limit: int, start: Optional[int] = None) -> PolyMatrix:
    """
    Minimal generators, up to internal degree `degree_limit` inclusive, of the
    syzygy module of d, as a matrix whose target is d.source.
    """
    ring = d.ring
    src_w, _, use_weights = _weights_or_trivial(d)
    if d.ncols == 0:
        return PolyMatrix(GradedFreeModule(ring, ()), d.source)
    lowest = min(d.source.twists) if start is None else start
    degree_steps_guard(lowest, degree_limit)

    gens: List[Tuple[int, Weight, ModuleVector]] = []
    for degree in range(lowest, degree_limit + 1):
        found = 0
        for weight in _candidate_weights(ring, d.source.twists, src_w, degree, use_weights):
            kernel = _kernel(d, degree, weight, src_w, use_weights)
            if not kernel:
                continue
            span = _multiples(ring, gens, degree, weight, use_weights)
            picked = linalg.independent_columns(span + kernel)
            for k in picked:
                if k >= len(span):
                    gens.append((degree, weight, kernel[k - len(span)]))
                    found += 1
        logger.debug(f"syzygies of {d.nrows}x{d.ncols}: degree {degree}, {found} new generators")

    columns = [_to_column(ring, vec) for _, _, vec in gens]
    twists = [deg for deg, _, _ in gens]
    return PolyMatrix.from_columns(ring, d.source, columns, twists)


def _column_weight(ring: PolynomialRing, col: Column,
                   target_weights: Sequence[Weight]) -> Optional[Weight]:
    found = set()
    for r, p in col.items():
        for m in p.keys():
            found.add(_add(target_weights[r], ring.monomial_weight(m)))
    return found.pop() if len(found) == 1 else None


def minimal_generators(columns: Sequence[Column], target: GradedFreeModule,
                       target_weights: Optional[Sequence[Weight]] = None) -> List[int]:
    """
    Indices of a minimal generating subset of the submodule of `target` spanned
    by the (homogeneous) columns, chosen degree by degree in input order.
    """
    ring = target.ring
    use_weights = bool(ring.weights)
    if target_weights is None:
        target_weights = [ring.zero_weight()] * target.rank

    info = []
    for k, col in enumerate(columns):
        col = {r: p for r, p in col.items() if p}
        if col:
            info.append((column_degree(ring, col, target.twists), k, col))
    weights_of = {}
    if use_weights:
        weights_of = {k: _column_weight(ring, col, target_weights) for _, k, col in info}
        use_weights = None not in weights_of.values()
    if not use_weights:
        weights_of = {k: () for _, k, _ in info}
    vectors = {k: _from_column(col) for _, k, col in info}

    kept: List[int] = []
    kept_gens: List[Tuple[int, Weight, ModuleVector]] = []
    for degree in sorted({deg for deg, _, _ in info}):
        groups: Dict[Weight, List[int]] = {}
        for deg, k, _ in info:
            if deg == degree:
                groups.setdefault(weights_of[k], []).append(k)
        for weight in sorted(groups):
            members = groups[weight]
            span = _multiples(ring, kept_gens, degree, weight, use_weights)
            picked = linalg.independent_columns(span + [vectors[k] for k in members])
            for p in picked:
                if p >= len(span):
                    k = members[p - len(span)]
                    kept.append(k)
                    kept_gens.append((degree, weight, vectors[k]))
    return sorted(kept)


def solve_factorization(M: PolyMatrix, v: Column) -> Column:
    """A column x with M x = v, solved block by block; FactorizationError if none exists"""
    ring = M.ring
    v = {r: p for r, p in v.items() if p}
    if not v:
        return {}
    src_w, tgt_w, use_weights = _weights_or_trivial(M)

    pieces: Dict[Tuple[int, Weight], ModuleVector] = {}
    for r, p in v.items():
        for m, a in p.items():
            deg = ring.monomial_degree(m) + M.target.twists[r]
            w = _add(tgt_w[r], ring.monomial_weight(m)) if use_weights else ()
            pieces.setdefault((deg, w), {})[(r, m)] = a

    solution: ModuleVector = {}
    for (degree, weight), rhs in sorted(pieces.items()):
        unknowns = _unknowns(ring, M.source.twists, src_w, degree, weight, use_weights)
        index = linalg.VectorIndex()
        rows: Dict[int, Dict[int, object]] = {}
        for j, (c, mu) in enumerate(unknowns):
            for key, a in _image_column(M, c, mu).items():
                rows.setdefault(index(key), {})[j] = a
        b = {index(key): a for key, a in rhs.items()}
        x = linalg.solve(rows, len(index), len(unknowns), b) if unknowns else None
        if x is None:
            raise FactorizationError(
                f"column of degree {degree} is not in the image of a {M.nrows}x{M.ncols} matrix"
            )
        for j, a in x.items():
            key = unknowns[j]
            solution[key] = solution.get(key, QQ.zero) + a
    return _to_column(ring, solution)


def factor_through(M: PolyMatrix, V: PolyMatrix) -> PolyMatrix:
    """X with M X = V; V and M share their target"""
    if V.target.twists != M.target.twists:
        raise InputError("factorization needs matrices with a common target")
    columns = [solve_factorization(M, V.column(c)) for c in range(V.ncols)]
    entries = {(r, c): p for c, col in enumerate(columns) for r, p in col.items() if p}
    return PolyMatrix(V.source, M.source, entries)


def hilbert_function(M: PolyMatrix, degree: int) -> int:
    """Dimension of the cokernel of M in internal degree `degree`"""
    ring = M.ring
    src_w, tgt_w, use_weights = _weights_or_trivial(M)
    free = sum(len(ring.monomials(degree - t)) for t in M.target.twists)
    if M.ncols == 0:
        return free
    image_rank = 0
    for weight in _candidate_weights(ring, M.source.twists, src_w, degree, use_weights):
        unknowns = _unknowns(ring, M.source.twists, src_w, degree, weight, use_weights)
        image_rank += linalg.span_rank([_image_column(M, c, mu) for c, mu in unknowns])
    return free - image_rank


def degree_steps_guard(start: int, stop: int) -> None:
    if stop - start > settings.MAX_DEGREE_STEPS:
        raise InputError(
            f"degree range {start}..{stop} exceeds MAX_DEGREE_STEPS={settings.MAX_DEGREE_STEPS}"
        )
