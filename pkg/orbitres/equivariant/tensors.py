"""
Based multilinear algebra for GL-equivariant maps.

A TensorSpace is an ordered tensor product of factors, each a symmetric or
exterior power of a named space or of its dual. Bases are deterministic:
sorted subsets for exterior powers, sorted multisets for symmetric powers,
row-major over the factors. Maps are exact over QQ and are assembled from
local operations acting on a few factors and as the identity elsewhere.
Factor positions in the public operations are 1-based.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ

from orbitres.algebra import linalg
from orbitres.core.exceptions import InputError


logger = logging.getLogger("equivariant.tensors")

Basis = Tuple[int, ...]
Element = Tuple[Basis, ...]
Vector = Dict[Element, object]
Rule = Callable[[Element], Vector]

FACTOR_KINDS = ("vec", "ext", "sym")


@dataclass(frozen=True)
class Factor:
    """A power of a named space, or of its dual, inside a tensor product"""
    kind: str
    space: str
    power: int = 1
    dual: bool = False

    def __post_init__(self):
        if self.kind not in FACTOR_KINDS:
            raise InputError(f"unknown factor kind '{self.kind}'")
        if self.power < 0:
            raise InputError(f"negative power of {self.space}")
        if self.power <= 1 and self.kind != "vec":
            object.__setattr__(self, "kind", "vec")
        if self.kind == "vec" and self.power > 1:
            raise InputError("plain vector factors have power 0 or 1")

    @property
    def label(self) -> str:
        if self.power == 0:
            return "C"
        star = "*" if self.dual else ""
        if self.kind == "vec":
            return f"{self.space}{star}"
        sign = "∧" if self.kind == "ext" else "S"
        return f"{sign}{self.power}{self.space}{star}"

    def dualized(self) -> "Factor":
        return Factor(self.kind, self.space, self.power, not self.dual)


def vec(space: str, dual: bool = False) -> Factor:
    return Factor("vec", space, 1, dual)


def ext(space: str, power: int, dual: bool = False) -> Factor:
    return Factor("ext", space, power, dual)


def sym(space: str, power: int, dual: bool = False) -> Factor:
    return Factor("sym", space, power, dual)


@lru_cache(maxsize=None)
def _factor_basis(kind: str, n: int, power: int) -> Tuple[Basis, ...]:
    if power == 0:
        return ((),)
    if kind == "ext":
        return tuple(combinations(range(n), power))
    if kind == "sym":
        return tuple(combinations_with_replacement(range(n), power))
    return tuple((i,) for i in range(n))


def _inversions(seq: Sequence[int]) -> int:
    return sum(1 for a, b in combinations(seq, 2) if a > b)


def _sort_ext(content: Sequence[int]) -> Tuple[Optional[Basis], int]:
    """Sorted exterior monomial with its sign, or (None, 0) on a repeated index"""
    if len(set(content)) != len(content):
        return None, 0
    return tuple(sorted(content)), (-1) ** _inversions(content)


class TensorSpace:
    """Tensor product of factors over named spaces of given dimensions"""

    def __init__(self, factors: Sequence[Factor], dims: Mapping[str, int]):
        self.factors: Tuple[Factor, ...] = tuple(factors)
        for f in self.factors:
            if f.space not in dims:
                raise InputError(f"no dimension given for space '{f.space}'")
            n = dims[f.space]
            if f.kind == "ext" and f.power > n:
                raise InputError(f"exterior power {f.power} of {f.space} exceeds its dimension {n}")
            if f.power and n < 1:
                raise InputError(f"space '{f.space}' has dimension {n}")
        self.dims: Dict[str, int] = dict(dims)
        self._basis: Optional[List[Element]] = None
        self._index: Optional[Dict[Element, int]] = None

    @classmethod
    def unit(cls, dims: Mapping[str, int]) -> "TensorSpace":
        """The scalars, an empty tensor product"""
        return cls((), dims)

    def factor_basis(self, k: int) -> Tuple[Basis, ...]:
        f = self.factors[k]
        return _factor_basis(f.kind, self.dims[f.space], f.power)

    @property
    def basis(self) -> List[Element]:
        if self._basis is None:
            self._basis = list(product(*(self.factor_basis(k) for k in range(len(self.factors)))))
        return self._basis

    @property
    def dim(self) -> int:
        return math.prod(len(self.factor_basis(k)) for k in range(len(self.factors)))

    def __len__(self) -> int:
        return self.dim

    def index(self, element: Element) -> int:
        if self._index is None:
            self._index = {el: i for i, el in enumerate(self.basis)}
        try:
            return self._index[element]
        except KeyError:
            raise InputError(f"{element} is not a basis element of {self}")

    def _signature(self):
        used = sorted({f.space for f in self.factors})
        return self.factors, tuple((s, self.dims[s]) for s in used)

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        return " ⊗ ".join(f.label for f in self.factors) or "C"

    def replaced(self, start: int, width: int, new: Sequence[Factor],
                 dims: Optional[Mapping[str, int]] = None) -> "TensorSpace":
        """Space with factors[start:start+width] (0-based) replaced by `new`"""
        merged = dict(self.dims)
        merged.update(dims or {})
        return TensorSpace(self.factors[:start] + tuple(new) + self.factors[start + width:], merged)

    def _check_position(self, position: int, what: str = "factor") -> int:
        if not 1 <= position <= len(self.factors):
            raise InputError(f"{what} position {position} outside 1..{len(self.factors)} in {self}")
        return position - 1


def _accumulate(acc: Vector, vector: Mapping[Element, object], coeff=1):
    for el, c in vector.items():
        value = acc.get(el, QQ.zero) + c * coeff
        if value:
            acc[el] = value
        else:
            acc.pop(el, None)


class EquivariantMap:
    """
    Linear map between based tensor spaces, given by the images of basis
    elements. Images are computed on demand and cached.
    """

    def __init__(self, domain: TensorSpace, codomain: TensorSpace, rule: Rule, name: str = ""):
        self.domain = domain
        self.codomain = codomain
        self.name = name or "map"
        self._rule = rule
        self._images: Dict[Element, Vector] = {}

    def __repr__(self):
        return f"EquivariantMap({self.name}: {self.domain} -> {self.codomain})"

    def image(self, element: Element) -> Vector:
        got = self._images.get(element)
        if got is None:
            got = {}
            _accumulate(got, self._rule(element))
            self._images[element] = got
        return got

    def apply(self, vector: Mapping[Element, object]) -> Vector:
        out: Vector = {}
        for el, c in vector.items():
            if c:
                _accumulate(out, self.image(el), c)
        return out

    def then(self, other: "EquivariantMap") -> "EquivariantMap":
        """other ∘ self"""
        if other.domain != self.codomain:
            raise InputError(
                f"cannot follow {self.name} by {other.name}: {self.codomain} is not {other.domain}"
            )
        return EquivariantMap(self.domain, other.codomain,
                              lambda el: other.apply(self.image(el)),
                              f"{other.name}∘{self.name}")

    def scaled(self, factor) -> "EquivariantMap":
        c = QQ.convert(factor)
        return EquivariantMap(self.domain, self.codomain,
                              lambda el: {k: v * c for k, v in self.image(el).items()},
                              f"{factor}·{self.name}")

    # -- matrices --------------------------------------------------------------

    def columns(self) -> List[Dict[int, object]]:
        index = self.codomain.index
        return [{index(k): v for k, v in self.image(el).items()} for el in self.domain.basis]

    def rows(self) -> Dict[int, Dict[int, object]]:
        rows: Dict[int, Dict[int, object]] = {}
        for c, col in enumerate(self.columns()):
            for r, v in col.items():
                rows.setdefault(r, {})[c] = v
        return rows

    def to_lists(self) -> List[List[object]]:
        out = [[QQ.zero] * self.domain.dim for _ in range(self.codomain.dim)]
        for r, row in self.rows().items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def rank(self) -> int:
        return linalg.rank(self.rows(), self.codomain.dim, self.domain.dim)

    def is_zero(self) -> bool:
        return not any(self.image(el) for el in self.domain.basis)

    def __eq__(self, other):
        if not isinstance(other, EquivariantMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and all(self.image(el) == other.image(el) for el in self.domain.basis))

    __hash__ = None


def identity(space: TensorSpace) -> EquivariantMap:
    return EquivariantMap(space, space, lambda el: {el: QQ.one}, "id")


def compose(maps: Sequence[EquivariantMap]) -> EquivariantMap:
    """maps[-1] ∘ ... ∘ maps[0], checking every junction"""
    if not maps:
        raise InputError("nothing to compose")
    for k in range(1, len(maps)):
        if maps[k].domain != maps[k - 1].codomain:
            raise InputError(
                f"junction {k}: {maps[k - 1].name} lands in {maps[k - 1].codomain} "
                f"but {maps[k].name} starts from {maps[k].domain}"
            )
    out = maps[0]
    for m in maps[1:]:
        out = out.then(m)
    return out


def _local(space: TensorSpace, start: int, width: int, new: Sequence[Factor],
           rule: Callable[[Element], Mapping[Element, object]], name: str,
           dims: Optional[Mapping[str, int]] = None) -> EquivariantMap:
    """Map acting by `rule` on factors[start:start+width] (0-based) and as the identity elsewhere"""
    codomain = space.replaced(start, width, new, dims)

    def image(el: Element) -> Vector:
        head, mid, tail = el[:start], el[start:start + width], el[start + width:]
        return {head + piece + tail: c for piece, c in rule(mid).items()}

    return EquivariantMap(space, codomain, image, name)


# -- diagonals ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _position_splits(n: int, parts: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    def rec(remaining, k):
        if k == len(parts):
            yield ()
            return
        for block in combinations(remaining, parts[k]):
            rest = tuple(i for i in remaining if i not in block)
            for tail in rec(rest, k + 1):
                yield (block,) + tail

    return tuple(rec(tuple(range(n)), 0))


@lru_cache(maxsize=None)
def _shuffles(kind: str, content: Basis, parts: Tuple[int, ...]) -> Tuple[Tuple[Element, object], ...]:
    out: Dict[Element, int] = {}
    for blocks in _position_splits(len(content), parts):
        piece = tuple(tuple(content[i] for i in b) for b in blocks)
        sign = (-1) ** _inversions([i for b in blocks for i in b]) if kind == "ext" else 1
        out[piece] = out.get(piece, 0) + sign
    return tuple((k, QQ(v)) for k, v in out.items() if v)


def diagonal(space: TensorSpace, position: int, parts: Sequence[int]) -> EquivariantMap:
    """
    Comultiplication splitting one exterior or symmetric factor into several
    of the given powers: a sum over shuffles of positions, signed for
    exterior powers.
    """
    p = space._check_position(position)
    f = space.factors[p]
    parts = tuple(parts)
    if min(parts, default=0) < 0 or sum(parts) != f.power:
        raise InputError(f"parts {parts} do not split {f.label}")
    kind = f.kind if f.kind != "vec" else "ext"
    new = [Factor(kind if r > 1 else "vec", f.space, r, f.dual) for r in parts]
    return _local(space, p, 1, new, lambda mid: dict(_shuffles(kind, mid[0], parts)),
                  f"Δ{parts}")


def exterior_diagonal(n: int, r: int, s: int, space: str = "E", dual: bool = False) -> EquivariantMap:
    if r < 0 or s < 0 or r + s > n:
        raise InputError(f"exterior diagonal {r}+{s} out of range for dimension {n}")
    return diagonal(TensorSpace([ext(space, r + s, dual)], {space: n}), 1, (r, s))


def symmetric_diagonal(n: int, r: int, s: int, space: str = "E", dual: bool = False) -> EquivariantMap:
    if r < 0 or s < 0:
        raise InputError(f"symmetric diagonal {r}+{s} has a negative part")
    return diagonal(TensorSpace([sym(space, r + s, dual)], {space: n}), 1, (r, s))


# -- multiplications ----------------------------------------------------------

Group = Tuple[str, Sequence[int]]


def multiply(space: TensorSpace, groups: Sequence[Group]) -> EquivariantMap:
    """
    Multiplications m_S on groups of factors, each group given as
    (kind, positions) with kind 'ext' or 'sym'. A group's product lands at
    its smallest position; untouched factors keep their relative order.
    """
    if not groups:
        raise InputError("no factors to multiply")
    nfac = len(space.factors)
    seen: set = set()
    items: List[Tuple[int, Optional[int], Optional[Tuple[str, Tuple[int, ...]]]]] = []
    new_factors: Dict[int, Factor] = {}
    for kind, positions in groups:
        if kind not in ("ext", "sym"):
            raise InputError(f"cannot multiply into '{kind}'")
        idx = tuple(space._check_position(q) for q in positions)
        if not idx or seen & set(idx) or len(set(idx)) != len(idx):
            raise InputError(f"positions {tuple(positions)} overlap or repeat")
        seen |= set(idx)
        members = [space.factors[i] for i in idx]
        first = members[0]
        for f in members:
            if (f.space, f.dual) != (first.space, first.dual):
                raise InputError(f"cannot multiply {f.label} with {first.label}")
            if f.kind not in ("vec", kind):
                raise InputError(f"cannot multiply {f.label} inside a {kind} product")
        power = sum(f.power for f in members)
        items.append((min(idx), None, (kind, idx)))
        new_factors[min(idx)] = Factor(kind if power > 1 else "vec", first.space, power, first.dual)
    for i in range(nfac):
        if i not in seen:
            items.append((i, i, None))
    items.sort(key=lambda t: t[0])
    out_factors = [space.factors[i] if grp is None else new_factors[key] for key, i, grp in items]
    codomain = TensorSpace(out_factors, space.dims)

    def image(el: Element) -> Vector:
        out: List[Basis] = []
        sign = 1
        for _, i, grp in items:
            if grp is None:
                out.append(el[i])
                continue
            kind, idx = grp
            content = [a for j in idx for a in el[j]]
            if kind == "ext":
                piece, s = _sort_ext(content)
                if piece is None:
                    return {}
                sign *= s
            else:
                piece = tuple(sorted(content))
            out.append(piece)
        return {tuple(out): QQ(sign)}

    label = ",".join("".join(str(q) for q in pos) for _, pos in groups)
    return EquivariantMap(space, codomain, image, f"m[{label}]")


def exterior_mult(n: int, r: int, s: int, space: str = "E", dual: bool = False) -> EquivariantMap:
    if r < 0 or s < 0 or r + s > n:
        raise InputError(f"exterior multiplication {r}+{s} out of range for dimension {n}")
    source = TensorSpace([ext(space, r, dual), ext(space, s, dual)], {space: n})
    return multiply(source, [("ext", (1, 2))])


def symmetric_mult(n: int, r: int, s: int, space: str = "E", dual: bool = False) -> EquivariantMap:
    if r < 0 or s < 0:
        raise InputError(f"symmetric multiplication {r}+{s} has a negative part")
    source = TensorSpace([sym(space, r, dual), sym(space, s, dual)], {space: n})
    return multiply(source, [("sym", (1, 2))])


# -- traces and contractions ----------------------------------------------------

def insert_trace(space: TensorSpace, position: int, base: str, power: int,
                 kind: str = "ext", dual_first: bool = False,
                 dims: Optional[Mapping[str, int]] = None) -> EquivariantMap:
    """
    tr^(power): insert Σ_I e_I ⊗ e*_I as two new factors starting at
    `position` (len+1 appends); `dual_first` puts the dual factor first.
    """
    merged = dict(space.dims)
    merged.update(dims or {})
    if base not in merged:
        raise InputError(f"no dimension given for space '{base}'")
    if not 1 <= position <= len(space.factors) + 1:
        raise InputError(f"trace position {position} outside 1..{len(space.factors) + 1}")
    pair = [Factor(kind if power > 1 else "vec", base, power, False),
            Factor(kind if power > 1 else "vec", base, power, True)]
    if dual_first:
        pair.reverse()
    p = position - 1
    trial = TensorSpace(pair, merged)
    terms = tuple(((I, I), QQ.one) for I in trial.factor_basis(0))
    return _local(space, p, 0, pair, lambda mid: dict(terms), f"tr{power}[{base}]", merged)


def trace_map(n: int, r: int, kind: str = "ext", space: str = "E") -> EquivariantMap:
    if kind not in ("ext", "sym"):
        raise InputError(f"unknown trace kind '{kind}'")
    if r < 0 or (kind == "ext" and r > n):
        raise InputError(f"trace power {r} out of range for dimension {n}")
    return insert_trace(TensorSpace.unit({space: n}), 1, space, r, kind)


def contract(space: TensorSpace, first: int, second: int) -> EquivariantMap:
    """Pairing of a factor with its dual, ⟨e_I, e*_J⟩ = δ_IJ; both factors are removed"""
    i, j = space._check_position(first), space._check_position(second)
    a, b = space.factors[i], space.factors[j]
    if i == j or a.dualized() != b:
        raise InputError(f"cannot contract {a.label} with {b.label}")
    keep = [k for k in range(len(space.factors)) if k not in (i, j)]
    codomain = TensorSpace([space.factors[k] for k in keep], space.dims)

    def image(el: Element) -> Vector:
        if el[i] != el[j]:
            return {}
        return {tuple(el[k] for k in keep): QQ.one}

    return EquivariantMap(space, codomain, image, f"ev[{first},{second}]")


# -- exterior duality -----------------------------------------------------------

def hodge(space: TensorSpace, position: int) -> EquivariantMap:
    """*: ∧^r E -> ∧^(n-r) E*, e_I ↦ sgn(I, J) e*_J with J the complement of I"""
    p = space._check_position(position)
    f = space.factors[p]
    if f.kind == "sym":
        raise InputError(f"exterior duality is not defined on {f.label}")
    n = space.dims[f.space]
    target = Factor("ext" if n - f.power > 1 else "vec", f.space, n - f.power, not f.dual)

    def rule(mid: Element) -> Vector:
        I = mid[0]
        J = tuple(a for a in range(n) if a not in I)
        return {(J,): QQ((-1) ** _inversions(I + J))}

    return _local(space, p, 1, [target], rule, f"*[{position}]")


def hodge_star(n: int, r: int, direction: str = "forward", space: str = "E") -> EquivariantMap:
    """forward: ∧^r E -> ∧^(n-r) E*; backward: ∧^r E* -> ∧^(n-r) E"""
    if not 0 <= r <= n:
        raise InputError(f"exterior power {r} out of range for dimension {n}")
    if direction not in ("forward", "backward"):
        raise InputError(f"unknown direction '{direction}'")
    source = TensorSpace([Factor("ext", space, r, direction == "backward")], {space: n})
    return hodge(source, 1)


# -- linear maps on a factor ----------------------------------------------------

Matrix = Sequence[Sequence[object]]


def factor_map(space: TensorSpace, position: int, target: Factor,
               images: Union[Mapping[Basis, Mapping[Basis, object]], Callable[[Basis], Mapping[Basis, object]]],
               dims: Optional[Mapping[str, int]] = None, name: str = "") -> EquivariantMap:
    """Arbitrary linear map on one factor, given by the images of its basis elements"""
    p = space._check_position(position)
    lookup = images if callable(images) else (lambda b: images.get(b, {}))

    def rule(mid: Element) -> Vector:
        return {(b,): QQ.convert(c) for b, c in lookup(mid[0]).items() if c}

    return _local(space, p, 1, [target], rule, name or f"L[{position}]", dims)


def linear(space: TensorSpace, position: int, target: Factor, matrix: Matrix,
           dims: Optional[Mapping[str, int]] = None, name: str = "") -> EquivariantMap:
    """
    The map induced on a vector, symmetric or exterior power factor by a
    linear map g of the underlying spaces, given as a target-by-source matrix.
    """
    p = space._check_position(position)
    f = space.factors[p]
    if (target.kind, target.power) != (f.kind, f.power):
        raise InputError(f"{target.label} is not the same power as {f.label}")
    columns: Dict[int, Dict[int, object]] = {}
    for r, row in enumerate(matrix):
        for c, a in enumerate(row):
            if a:
                columns.setdefault(c, {})[r] = QQ.convert(a)

    @lru_cache(maxsize=None)
    def induced(b: Basis) -> Tuple[Tuple[Basis, object], ...]:
        acc: Dict[Basis, object] = {(): QQ.one}
        for a in b:
            nxt: Dict[Basis, object] = {}
            for word, c in acc.items():
                for t, g in columns.get(a, {}).items():
                    key = word + (t,)
                    nxt[key] = nxt.get(key, QQ.zero) + c * g
            acc = nxt
        out: Dict[Basis, object] = {}
        for word, c in acc.items():
            if f.kind == "ext":
                piece, s = _sort_ext(word)
                if piece is None:
                    continue
                c = c * s
            else:
                piece = tuple(sorted(word))
            out[piece] = out.get(piece, QQ.zero) + c
        return tuple((k, v) for k, v in out.items() if v)

    return factor_map(space, position, target, lambda b: dict(induced(b)), dims, name or f"g[{position}]")


def flatten(space: TensorSpace, position: int, new_space: str) -> EquivariantMap:
    """Identify a factor with a plain vector space of the same dimension, basis by basis"""
    p = space._check_position(position)
    basis = space.factor_basis(p)
    index = {b: (k,) for k, b in enumerate(basis)}
    return factor_map(space, position, vec(new_space), lambda b: {index[b]: 1},
                      {new_space: len(basis)}, f"flat[{position}]")


def permute(space: TensorSpace, order: Sequence[int]) -> EquivariantMap:
    """Reorder factors: new factor k is old factor order[k] (1-based); no signs"""
    order = tuple(order)
    if sorted(order) != list(range(1, len(space.factors) + 1)):
        raise InputError(f"{order} is not a permutation of the {len(space.factors)} factors")
    codomain = TensorSpace([space.factors[o - 1] for o in order], space.dims)
    return EquivariantMap(space, codomain,
                          lambda el: {tuple(el[o - 1] for o in order): QQ.one},
                          f"σ{order}")


def on_factors(space: TensorSpace, position: int, inner: EquivariantMap) -> EquivariantMap:
    """inner applied to the consecutive factors starting at `position`, identity elsewhere"""
    p = space._check_position(position)
    width = len(inner.domain.factors)
    block = TensorSpace(space.factors[p:p + width], space.dims)
    if block != inner.domain:
        raise InputError(f"{inner.name} acts on {inner.domain}, found {block} at position {position}")
    return _local(space, p, width, inner.codomain.factors,
                  lambda mid: inner.image(mid), inner.name, inner.codomain.dims)


# -- kernels and quotients ------------------------------------------------------

def kernel_inclusion(m: EquivariantMap, space_name: str) -> EquivariantMap:
    """Inclusion of ker m as a plain vector space named `space_name`"""
    basis = linalg.nullspace(m.rows(), m.codomain.dim, m.domain.dim)
    if not basis:
        raise InputError(f"{m.name} is injective")
    domain_basis = m.domain.basis
    images = [{domain_basis[j]: a for j, a in v.items()} for v in basis]
    source = TensorSpace([vec(space_name)], {**m.domain.dims, space_name: len(images)})
    logger.debug(f"kernel of {m.name}: dimension {len(images)}")
    return EquivariantMap(source, m.domain, lambda el: images[el[0][0]], f"ker({m.name})")


def quotient_projection(m: EquivariantMap, space_name: str) -> EquivariantMap:
    """Projection of the codomain onto coker m, coordinates on the non-pivot basis elements"""
    rows: Dict[int, Dict[int, object]] = {i: col for i, col in enumerate(m.columns()) if col}
    reduced, pivots = linalg.rref(rows, m.domain.dim, m.codomain.dim)
    pivot_set = set(pivots)
    free = [j for j in range(m.codomain.dim) if j not in pivot_set]
    if not free:
        raise InputError(f"{m.name} is surjective")
    position = {j: k for k, j in enumerate(free)}
    pivot_rows = {p: reduced.get(i, {}) for i, p in enumerate(pivots)}
    target = TensorSpace([vec(space_name)], {**m.codomain.dims, space_name: len(free)})

    def image(el: Element) -> Vector:
        j = m.codomain.index(el)
        if j in position:
            return {((position[j],),): QQ.one}
        return {((position[k],),): -a for k, a in pivot_rows[j].items() if k in position and a}

    return EquivariantMap(m.codomain, target, image, f"coker({m.name})")


def traceless_projection(n: int, space: str = "F", direction: str = "inclusion",
                         dual_first: bool = False) -> EquivariantMap:
    """
    inclusion: ker(F ⊗ F* -> C) into F ⊗ F*; projection: F ⊗ F* onto
    F ⊗ F* / im(tr). Both carry the plain space named `<space>0`.
    """
    pair = [vec(space), vec(space, True)]
    if dual_first:
        pair.reverse()
    tensor = TensorSpace(pair, {space: n})
    if direction == "inclusion":
        return kernel_inclusion(contract(tensor, 1, 2), f"{space}0")
    if direction == "projection":
        tr = insert_trace(TensorSpace.unit({space: n}), 1, space, 1, dual_first=dual_first)
        return quotient_projection(tr, f"{space}0")
    raise InputError(f"unknown direction '{direction}'")



class Chain:
    """
    A composite map built step by step from a starting space; each step
    acts on the current codomain with 1-based factor positions.
    """

    def __init__(self, start: Union[TensorSpace, EquivariantMap]):
        self.map = start if isinstance(start, EquivariantMap) else identity(start)

    @property
    def space(self) -> TensorSpace:
        return self.map.codomain

    def then(self, m: EquivariantMap) -> "Chain":
        self.map = self.map.then(m)
        return self

    def diagonal(self, position: int, *parts: int) -> "Chain":
        return self.then(diagonal(self.space, position, parts))

    def multiply(self, *groups: Group) -> "Chain":
        return self.then(multiply(self.space, groups))

    def trace(self, position: int, base: str, power: int = 1, kind: str = "ext",
              dual_first: bool = False) -> "Chain":
        return self.then(insert_trace(self.space, position, base, power, kind, dual_first))

    def hodge(self, position: int) -> "Chain":
        return self.then(hodge(self.space, position))

    def permute(self, *order: int) -> "Chain":
        return self.then(permute(self.space, order))

    def flatten(self, position: int, new_space: str) -> "Chain":
        return self.then(flatten(self.space, position, new_space))

    def on(self, position: int, inner: EquivariantMap) -> "Chain":
        return self.then(on_factors(self.space, position, inner))

    def linear(self, position: int, target: Factor, matrix: Matrix) -> "Chain":
        return self.then(linear(self.space, position, target, matrix))

    def build(self) -> EquivariantMap:
        return self.map
