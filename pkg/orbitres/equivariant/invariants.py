"""
Polynomial invariants built directly from matrices of ring elements:
determinants and minors, pencil coefficients, binary discriminants, the
2x3x2 hyperdeterminant and the Pfaffian discriminant of a pencil.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Sequence, Tuple

import sympy

from orbitres.algebra import linalg
from orbitres.algebra.polyring import Polynomial, normalize_content
from orbitres.core.exceptions import InputError


logger = logging.getLogger("equivariant.invariants")

PolyRows = Sequence[Sequence[Polynomial]]


# -- determinants and minors -----------------------------------------------------

def determinant(rows: PolyRows) -> Polynomial:
    """Laplace expansion along the first row, memoized on column subsets"""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    zero = rows[0][0] * 0

    @lru_cache(maxsize=None)
    def expand(depth: int, cols: Tuple[int, ...]) -> Polynomial:
        if depth == n - 1:
            return rows[depth][cols[0]]
        total = zero
        for pos, c in enumerate(cols):
            a = rows[depth][c]
            if not a:
                continue
            sub = expand(depth + 1, cols[:pos] + cols[pos + 1:])
            if sub:
                total = total + a * sub if pos % 2 == 0 else total - a * sub
        return total

    return expand(0, tuple(range(n)))


def minors(rows: PolyRows, size: int) -> List[Polynomial]:
    """All nonzero size x size minors, row subsets outer, column subsets inner"""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if not 1 <= size <= min(nrows, ncols):
        raise InputError(f"no {size}x{size} minors in a {nrows}x{ncols} matrix")
    out = []
    for I in combinations(range(nrows), size):
        for J in combinations(range(ncols), size):
            d = determinant([[rows[i][j] for j in J] for i in I])
            if d:
                out.append(d)
    return out


def independent_polynomials(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """A QQ-basis of the span of polys, chosen among them in order"""
    polys = [p for p in polys if p]
    keep = linalg.independent_columns([dict(p) for p in polys])
    return [normalize_content(polys[k]) for k in keep]


def minors_ideal(rows: PolyRows, size: int) -> List[Polynomial]:
    """Linearly independent size x size minors; for homogeneous entries these generate minimally"""
    gens = independent_polynomials(minors(rows, size))
    logger.debug(f"{len(gens)} independent {size}x{size} minors")
    return gens


# -- pencils --------------------------------------------------------------------

def pencil_coefficients(first: PolyRows, second: PolyRows) -> List[Polynomial]:
    """
    Coefficients a_(n,0), a_(n-1,1), ..., a_(0,n) of det(u*first + v*second).
    The coefficient of u^i v^(n-i) is the sum of the determinants taking
    the columns of a size-i subset from `first` and the others from `second`.
    """
    n = len(first)
    if len(second) != n or any(len(r) != n for r in list(first) + list(second)):
        raise InputError("pencil needs two square matrices of the same size")
    coeffs = []
    for i in range(n, -1, -1):
        total = first[0][0] * 0
        for S in combinations(range(n), i):
            mixed = [[(first if j in S else second)[r][j] for j in range(n)] for r in range(n)]
            total = total + determinant(mixed)
        coeffs.append(total)
    return coeffs


# -- binary discriminants ---------------------------------------------------------

@lru_cache(maxsize=None)
def _generic_discriminant(degree: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """
    Res(f, f_t) / a_n for f = a_n t^n + ... + a_0 with the sign
    (-1)^(n(n-1)/2), as (exponents in (a_n, ..., a_0), integer coefficient).
    """
    t = sympy.Symbol("t")
    a = sympy.symbols(f"a0:{degree + 1}")
    f = sum(a[k] * t ** (degree - k) for k in range(degree + 1))
    res = sympy.resultant(f, sympy.diff(f, t), t)
    disc = sympy.cancel(res / a[0]) * (-1) ** (degree * (degree - 1) // 2)
    poly = sympy.Poly(sympy.expand(disc), *a)
    return tuple((tuple(m), int(c)) for m, c in poly.terms())


def binary_discriminant(coeffs: Sequence[Polynomial]) -> Polynomial:
    """
    Discriminant of the binary form sum_i coeffs[i] u^(n-i) v^i in the
    standard normalization (b^2 - 4ac for quadrics, b^2c^2 - 4ac^3 - 4b^3d
    - 27a^2d^2 + 18abcd for cubics), substituted with ring elements.
    """
    degree = len(coeffs) - 1
    if degree < 1:
        raise InputError("a binary form of degree at least 1 is needed")
    total = coeffs[0] * 0
    for exps, c in _generic_discriminant(degree):
        term = coeffs[0] * 0 + c
        for a, e in zip(coeffs, exps):
            if e:
                term = term * a ** e
                if not term:
                    break
        total = total + term
    return total


def discriminant_cubic(coeffs: Sequence[Polynomial]) -> Polynomial:
    if len(coeffs) != 4:
        raise InputError("a binary cubic has four coefficients")
    return binary_discriminant(coeffs)


def discriminant_quadric(coeffs: Sequence[Polynomial]) -> Polynomial:
    """4 a_(2,0) a_(0,2) - a_(1,1)^2, the negative of the standard discriminant"""
    if len(coeffs) != 3:
        raise InputError("a binary quadric has three coefficients")
    return -binary_discriminant(coeffs)


def quadric_apolarity(first: Sequence[Polynomial], second: Sequence[Polynomial]) -> Polynomial:
    """Symmetric bilinear form with B(q, q) = discriminant_quadric(q); SL2-invariant"""
    if len(first) != 3 or len(second) != 3:
        raise InputError("a binary quadric has three coefficients")
    return 2 * first[0] * second[2] + 2 * first[2] * second[0] - first[1] * second[1]


# the cubic discriminant as printed alongside the determinantal cubic, in (a30, a21, a12, a03)
PRINTED_CUBIC_DISCRIMINANT: Tuple[Tuple[Tuple[int, int, int, int], int], ...] = (
    ((2, 0, 2, 0), 27),
    ((1, 0, 3, 0), 4),
    ((0, 3, 0, 1), 4),
    ((0, 2, 2, 0), -1),
    ((1, 1, 1, 1), -18),
)


@dataclass
class DiscriminantAudit:
    """Term-by-term comparison of the printed cubic discriminant with the computed one"""
    matches: bool
    matches_up_to_sign: bool
    missing: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    unexpected: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def summary(self) -> str:
        if self.matches:
            return "printed discriminant agrees with the resultant"
        lines = ["printed discriminant differs from the resultant (up to sign)"]
        for m, c in sorted(self.missing.items()):
            lines.append(f"  computed term {c:+d}*a^{m} absent from the printed formula")
        for m, c in sorted(self.unexpected.items()):
            lines.append(f"  printed term {c:+d}*a^{m} absent from the computed formula")
        return "\n".join(lines)


def audit_printed_discriminant() -> DiscriminantAudit:
    """
    Compare the printed formula with the resultant discriminant, allowing a
    global sign. The mismatch is reported and logged, never corrected.
    """
    computed = dict(_generic_discriminant(3))
    printed = dict(PRINTED_CUBIC_DISCRIMINANT)
    best = None
    for sign in (1, -1):
        flipped = {m: sign * c for m, c in printed.items()}
        missing = {m: c for m, c in computed.items() if flipped.get(m) != c}
        unexpected = {m: c for m, c in flipped.items() if computed.get(m) != c}
        audit = DiscriminantAudit(not missing and not unexpected and sign == 1,
                                  not missing and not unexpected, missing, unexpected)
        if best is None or len(missing) + len(unexpected) < len(best.missing) + len(best.unexpected):
            best = audit
    if not best.matches:
        logger.warning(best.summary())
    return best


# -- hyperdeterminant and Pfaffian pencils ------------------------------------------

def hyperdet_matrix(entry: Callable[[int, int, int], Polynomial]) -> List[List[Polynomial]]:
    """
    6x6 matrix whose determinant is the hyperdeterminant of a 2x3x2 tensor
    a(i, j, k): it represents (c_j(z))_j -> sum_j c_j(z) * sum_(i,k) a(i,j,k) x_i z_k
    from triples of linear forms in z to bilinear-quadratic forms in (x, z).
    Rows are (i, z_k z_l) with k <= l, columns are (j, l).
    """
    zero = entry(0, 0, 0) * 0
    quad = [(0, 0), (0, 1), (1, 1)]
    rows = [[zero] * 6 for _ in range(6)]
    for i in range(2):
        for j in range(3):
            for k in range(2):
                a = entry(i, j, k)
                if not a:
                    continue
                for l in range(2):
                    r = 3 * i + quad.index(tuple(sorted((k, l))))
                    rows[r][2 * j + l] = rows[r][2 * j + l] + a
    return rows


def hyperdet_232(entry: Callable[[int, int, int], Polynomial]) -> Polynomial:
    """Hyperdeterminant of boundary format 2x3x2, a sextic"""
    return determinant(hyperdet_matrix(entry))


def pfaffian_4x4(m: Callable[[int, int], Polynomial]) -> Polynomial:
    """Pfaffian of the skew matrix with upper entries m(a, b), a < b in 0..3"""
    return m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2)


def pfaffian_disc_4x4(first: Callable[[int, int], Polynomial],
                      second: Callable[[int, int], Polynomial]) -> Polynomial:
    """Discriminant 4 c20 c02 - c11^2 of the binary quadric Pf(u*first + v*second)"""
    c20 = pfaffian_4x4(first)
    c02 = pfaffian_4x4(second)
    c11 = pfaffian_4x4(lambda a, b: first(a, b) + second(a, b)) - c20 - c02
    return discriminant_quadric([c20, c11, c02])

