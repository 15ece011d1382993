"""
Exact multivariate polynomial arithmetic over the rationals for the case rings
"""
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from orbitres.core.exceptions import InputError


Monomial = Tuple[int, ...]
Weight = Tuple[int, ...]
Polynomial = PolyElement

SLOT_KINDS = ("vec", "ext", "sym")

# sympy PolyRing -> PolynomialRing wrapper, so bare polynomials find their layout
_WRAPPERS: Dict[PolyRing, "PolynomialRing"] = {}


def rational(value) -> "QQ.dtype":
    """Exact rational from int, str ('3/7') or sympy number"""
    if isinstance(value, str):
        return QQ.from_sympy(sympy.Rational(value.strip()))
    if isinstance(value, int):
        return QQ(value)
    try:
        return QQ.convert(value)
    except Exception:
        return QQ.from_sympy(sympy.Rational(value))


@dataclass(frozen=True)
class SlotSpec:
    """One tensor slot of the representation: vec (a basis index), ext or sym power of a space"""
    kind: str
    space: str
    power: int = 1

    def __post_init__(self):
        if self.kind not in SLOT_KINDS:
            raise InputError(f"unknown slot kind '{self.kind}'")


@dataclass(frozen=True)
class VariableSpec:
    """A ring variable with its printed label"""
    name: str
    index: int
    weight_tag: Optional[str] = None
    slots: Tuple[Tuple[int, ...], ...] = ()
    weight: Optional[Weight] = None


class PolynomialRing:
    """
    Graded polynomial ring A = Sym(g1*) over QQ with grevlex order.

    Variables may carry a tensor layout (slot contents, used by polarization and
    torus weights) or explicit integer weights.
    """

    def __init__(
        self,
        variables: Sequence[VariableSpec],
        degrees: Optional[Sequence[int]] = None,
        slots: Sequence[SlotSpec] = (),
        space_dims: Optional[Mapping[str, int]] = None,
        name: str = "",
    ):
        if not variables:
            raise InputError("a ring needs at least one variable")
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise InputError("variable names must be unique")
        if [v.index for v in variables] != list(range(len(variables))):
            raise InputError("variable indices must be contiguous from 0")
        self.degrees = tuple(degrees) if degrees else (1,) * len(variables)
        if len(self.degrees) != len(variables) or min(self.degrees) < 1:
            raise InputError("one positive degree per variable is required")

        self.name = name
        self.variables: Tuple[VariableSpec, ...] = tuple(variables)
        self.slots: Tuple[SlotSpec, ...] = tuple(slots)
        self.space_dims: Dict[str, int] = dict(space_dims or {})
        self.R = PolyRing([sympy.Symbol(n) for n in names], QQ, grevlex)
        self._index = {n: i for i, n in enumerate(names)}
        self._by_slots = {v.slots: v.index for v in variables if v.slots}
        self.weights: Optional[List[Weight]] = self._variable_weights()
        _WRAPPERS[self.R] = self

    def __repr__(self):
        return f"PolynomialRing({self.name or 'anonymous'}, {self.ngens} variables)"

    # -- basic access -------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.variables)

    @property
    def gens(self) -> Tuple[Polynomial, ...]:
        return self.R.gens

    @property
    def zero(self) -> Polynomial:
        return self.R.zero

    @property
    def one(self) -> Polynomial:
        return self.R.one

    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable '{name}' in ring {self.name}")

    def var(self, name: str) -> Polynomial:
        return self.R.gens[self.index(name)]

    def variable_for_slots(self, contents: Tuple[Tuple[int, ...], ...]) -> Optional[int]:
        return self._by_slots.get(contents)

    def monomial(self, exponents: Monomial, coeff=1) -> Polynomial:
        return self.R.from_dict({tuple(exponents): QQ.convert(coeff)})

    def point(self, values: Mapping[str, object]) -> "Point":
        coords = [QQ.zero] * self.ngens
        for name, value in values.items():
            coords[self.index(name)] = rational(value)
        return Point(self, tuple(coords))

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(self, text)

    # -- gradings -----------------------------------------------------------

    def _variable_weights(self) -> Optional[List[Weight]]:
        if all(v.weight is not None for v in self.variables):
            return [tuple(v.weight) for v in self.variables]
        if self.slots and all(v.slots for v in self.variables):
            spaces = sorted({s.space for s in self.slots})
            weights = []
            for v in self.variables:
                w: List[int] = []
                for space in spaces:
                    counts = [0] * self.space_dims[space]
                    for slot, content in zip(self.slots, v.slots):
                        if slot.space == space:
                            for a in content:
                                counts[a] += 1
                    w.extend(counts)
                weights.append(tuple(w))
            return weights
        return None

    @property
    def weight_length(self) -> int:
        return len(self.weights[0]) if self.weights else 0

    def zero_weight(self) -> Weight:
        return (0,) * self.weight_length

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def monomial_weight(self, m: Monomial) -> Weight:
        if not self.weights:
            return ()
        acc = [0] * self.weight_length
        for e, w in zip(m, self.weights):
            if e:
                for t, x in enumerate(w):
                    acc[t] += e * x
        return tuple(acc)

    def monomials(self, degree: int) -> List[Monomial]:
        return _monomials(self.ngens, self.degrees, degree)

    def monomials_by_weight(self, degree: int) -> Dict[Weight, List[Monomial]]:
        return _monomials_by_weight(self, degree)

    def polynomial_weight(self, p: Polynomial) -> Optional[Weight]:
        """Torus weight of p, or None when p is zero or not weight-homogeneous"""
        ws = {self.monomial_weight(m) for m in p.keys()}
        return ws.pop() if len(ws) == 1 else None

    def __hash__(self):
        return hash(self.R)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.R == self.R


@lru_cache(maxsize=None)
def _monomials(ngens: int, degrees: Tuple[int, ...], degree: int) -> List[Monomial]:
    if degree < 0:
        return []
    if all(d == 1 for d in degrees):
        out = []
        for combo in combinations_with_replacement(range(ngens), degree):
            e = [0] * ngens
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        return out
    out = []

    def rec(i, left, acc):
        if i == ngens:
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // degrees[i] + 1):
            rec(i + 1, left - e * degrees[i], acc + [e])

    rec(0, degree, [])
    return out


_WEIGHT_CACHE: Dict[Tuple[PolyRing, int], Dict[Weight, List[Monomial]]] = {}


def _monomials_by_weight(ring: PolynomialRing, degree: int) -> Dict[Weight, List[Monomial]]:
    key = (ring.R, degree)
    cached = _WEIGHT_CACHE.get(key)
    if cached is None:
        cached = {}
        for m in ring.monomials(degree):
            cached.setdefault(ring.monomial_weight(m), []).append(m)
        _WEIGHT_CACHE[key] = cached
    return cached


def ring_of(p: Polynomial) -> PolynomialRing:
    try:
        return _WRAPPERS[p.ring]
    except KeyError:
        raise InputError("polynomial does not belong to a registered case ring")


@dataclass(frozen=True)
class Point:
    """A point of the representation space, one exact rational per variable"""
    ring: PolynomialRing
    coordinates: Tuple[object, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.coordinates) != self.ring.ngens:
            raise InputError(
                f"point has {len(self.coordinates)} coordinates, ring has {self.ring.ngens}"
            )

    def support(self) -> Dict[str, object]:
        return {v.name: c for v, c in zip(self.ring.variables, self.coordinates) if c}


# -- polynomial helpers -------------------------------------------------------

def total_degree(p: Polynomial) -> int:
    if not p:
        return -1
    return max(sum(m) for m in p.keys())


def is_homogeneous(p: Polynomial, ring: Optional[PolynomialRing] = None) -> bool:
    if not p:
        return True
    if ring is None:
        degs = {sum(m) for m in p.keys()}
    else:
        degs = {ring.monomial_degree(m) for m in p.keys()}
    return len(degs) == 1


def homogeneous_degree(p: Polynomial, ring: PolynomialRing) -> int:
    degs = {ring.monomial_degree(m) for m in p.keys()}
    if len(degs) != 1:
        raise InputError("polynomial is not homogeneous")
    return degs.pop()


def normalize_content(p: Polynomial) -> Polynomial:
    """Scale p to integer coefficients with content 1 and positive leading coefficient"""
    if not p:
        return p
    nums, dens = [], []
    for c in p.values():
        nums.append(abs(int(QQ.numer(c))))
        dens.append(int(QQ.denom(c)))
    scale_den = math.lcm(*dens)
    scale_num = math.gcd(*[n * (scale_den // d) for n, d in zip(nums, dens)])
    factor = QQ(scale_den, scale_num)
    if p.LC < 0:
        factor = -factor
    return p * factor


def evaluate(p: Polynomial, pt: Point):
    """Exact value of p at pt"""
    coords = pt.coordinates
    if len(coords) != p.ring.ngens:
        raise InputError(
            f"point has {len(coords)} coordinates, polynomial ring has {p.ring.ngens}"
        )
    total = QQ.zero
    for monom, coeff in p.items():
        term = coeff
        for v, e in zip(coords, monom):
            if e:
                if not v:
                    term = QQ.zero
                    break
                term = term * v ** e
        if term:
            total += term
    return total


def jacobian(gens: Sequence[Polynomial]):
    """Matrix of first partials, rows by generators, columns by variables"""
    from orbitres.algebra.matrices import GradedFreeModule, PolyMatrix

    if not gens:
        raise InputError("jacobian of an empty generator list")
    ring = ring_of(gens[0])
    if any(g.ring != ring.R for g in gens):
        raise InputError("generators do not share a ring")
    entries = {}
    for r, g in enumerate(gens):
        for c, x in enumerate(ring.gens):
            dg = g.diff(x)
            if dg:
                entries[(r, c)] = dg
    target = GradedFreeModule(ring, tuple(1 - max(total_degree(g), 1) for g in gens))
    source = GradedFreeModule(ring, (0,) * ring.ngens)
    return PolyMatrix(source, target, entries)


# -- polarization -------------------------------------------------------------

def _sort_with_sign(seq: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    items = list(seq)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return tuple(items), sign


def _factor_slots(ring: PolynomialRing, factor: str) -> List[int]:
    positions = [k for k, s in enumerate(ring.slots) if s.space == factor]
    if not positions:
        raise InputError(f"ring {ring.name} has no tensor factor '{factor}'")
    return positions


@lru_cache(maxsize=None)
def _variable_image(ring: PolynomialRing, var: int, factor: str, i: int, j: int) -> Tuple[Tuple[int, object], ...]:
    """Image of x_var under the operator substituting basis index i by j in `factor`"""
    spec = ring.variables[var]
    out: Dict[int, int] = {}
    for s in _factor_slots(ring, factor):
        slot = ring.slots[s]
        content = spec.slots[s]
        for pos, a in enumerate(content):
            if a != i:
                continue
            new = list(content)
            new[pos] = j
            sign = 1
            if slot.kind == "ext":
                if i != j and j in content:
                    continue
                new, sign = _sort_with_sign(new)
            else:
                new = tuple(sorted(new))
            contents = spec.slots[:s] + (tuple(new),) + spec.slots[s + 1:]
            target = ring.variable_for_slots(contents)
            if target is None:
                raise InputError(f"polarization leaves the variable set of {ring.name}")
            out[target] = out.get(target, 0) + sign
    return tuple((k, c) for k, c in out.items() if c)


def apply_polarization(p: Polynomial, factor: str, i: int, j: int,
                       ring: Optional[PolynomialRing] = None) -> Polynomial:
    """
    Lie-algebra operator on p substituting basis direction i by j (1-based) in
    the tensor factor `factor`; a derivation of the polynomial ring.
    """
    ring = ring or ring_of(p)
    if not ring.slots:
        raise InputError(f"ring {ring.name} carries no tensor layout")
    dim = ring.space_dims.get(factor)
    if dim is None:
        raise InputError(f"unknown factor '{factor}'")
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise InputError(f"index out of range for factor {factor} of dimension {dim}")
    i0, j0 = i - 1, j - 1
    terms: Dict[Monomial, object] = {}
    for m, c in p.items():
        for k, e in enumerate(m):
            if not e:
                continue
            for target, a in _variable_image(ring, k, factor, i0, j0):
                new = list(m)
                new[k] -= 1
                new[target] += 1
                key = tuple(new)
                terms[key] = terms.get(key, QQ.zero) + c * e * a
    return ring.R.from_dict(terms)


def polarize_span(seeds: Sequence[Polynomial], factors: Sequence[str],
                  ring: Optional[PolynomialRing] = None) -> List[Polynomial]:
    """
    Basis of the smallest subspace containing the seeds and closed under every
    polarization operator of the listed factors.
    """
    from orbitres.algebra.linalg import independent_columns

    seeds = [s for s in seeds if s]
    if not seeds:
        return []
    ring = ring or ring_of(seeds[0])
    degs = {total_degree(s) for s in seeds}
    if len(degs) != 1 or not all(is_homogeneous(s) for s in seeds):
        raise InputError("polarize_span needs homogeneous seeds of equal degree")
    ops = [(f, i, j) for f in factors for i in range(1, ring.space_dims[f] + 1)
           for j in range(1, ring.space_dims[f] + 1)]

    basis: List[Polynomial] = []
    frontier = list(seeds)
    while frontier:
        picked = independent_columns([dict(b) for b in basis] + [dict(f) for f in frontier])
        new = [frontier[k - len(basis)] for k in picked if k >= len(basis)]
        if not new:
            break
        basis.extend(new)
        frontier = []
        for b in new:
            for f, i, j in ops:
                img = apply_polarization(b, f, i, j, ring)
                if img:
                    frontier.append(img)
    return basis


# -- parsing ------------------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    """
    Parse 'x0*x2345 - 2*x23*x45 + 1/3*x1^2' style text; variable names may
    contain ';'. Coefficients are rationals, powers use '^' or '**'.
    """
    text = text.replace("**", "^").strip()
    if not text or text == "0":
        return ring.zero
    result = ring.zero
    for sign, body in _TERM.findall(text):
        coeff = QQ.one if sign != "-" else -QQ.one
        mono = ring.one
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            base, _, power = factor.partition("^")
            base = base.strip()
            exp = int(power) if power else 1
            if re.fullmatch(r"\d+(/\d+)?", base):
                coeff = coeff * rational(base) ** exp
            else:
                mono = mono * ring.var(base) ** exp
        result = result + mono * coeff
    return result
