"""
Embeddings of tensor spaces into graded pieces of a case ring, and the
conversion of equivariant maps landing in (free module) ⊗ A_d into
polynomial matrices.
"""
import logging
import math
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from orbitres.algebra.matrices import GradedFreeModule, PolyMatrix
from orbitres.algebra.polyring import Polynomial, PolynomialRing, homogeneous_degree
from orbitres.core.exceptions import InputError
from orbitres.equivariant.tensors import Element, EquivariantMap, Factor, TensorSpace


logger = logging.getLogger("equivariant.embeddings")


class RingEmbedding:
    """Linear map from a tensor space into the degree-`degree` piece of a ring"""

    def __init__(self, space: TensorSpace, ring: PolynomialRing, degree: int,
                 rule: Callable[[Element], Polynomial], name: str = ""):
        self.space = space
        self.ring = ring
        self.degree = degree
        self.name = name or f"A{degree}"
        self._rule = rule
        self._cache: Dict[Element, Polynomial] = {}

    def __repr__(self):
        return f"RingEmbedding({self.name}: {self.space} -> A_{self.degree})"

    def polynomial(self, element: Element) -> Polynomial:
        got = self._cache.get(element)
        if got is None:
            got = self._rule(element)
            if got and homogeneous_degree(got, self.ring) != self.degree:
                raise InputError(f"{self.name} sends {element} outside degree {self.degree}")
            self._cache[element] = got
        return got

    def of_vector(self, vector: Mapping[Element, object]) -> Polynomial:
        out = self.ring.zero
        for el, c in vector.items():
            out += self.polynomial(el) * c
        return out

    def after(self, m: EquivariantMap, name: str = "") -> "RingEmbedding":
        """self ∘ m, an embedding of m's domain"""
        if m.codomain != self.space:
            raise InputError(f"{m.name} lands in {m.codomain}, {self.name} starts from {self.space}")
        return RingEmbedding(m.domain, self.ring, self.degree,
                             lambda el: self.of_vector(m.image(el)),
                             name or f"{self.name}∘{m.name}")


def variable_embedding(ring: PolynomialRing, factors: Sequence[Factor],
                       dims: Optional[Mapping[str, int]] = None) -> RingEmbedding:
    """g1* ⊂ A_1: basis tensors are matched with ring variables by slot contents"""
    if not ring.slots:
        raise InputError(f"ring {ring.name} carries no tensor layout")
    if len(factors) != len(ring.slots):
        raise InputError(f"{len(factors)} factors for a ring with {len(ring.slots)} slots")
    for f, slot in zip(factors, ring.slots):
        if (f.space, f.kind, f.power) != (slot.space, slot.kind, slot.power):
            raise InputError(f"factor {f.label} does not match slot {slot.kind} {slot.space}")
    space = TensorSpace(factors, dims or ring.space_dims)

    def rule(el: Element) -> Polynomial:
        k = ring.variable_for_slots(el)
        if k is None:
            raise InputError(f"no variable of {ring.name} for {el}")
        return ring.gens[k]

    return RingEmbedding(space, ring, 1, rule, "g1*")


def product_embedding(parts: Sequence[RingEmbedding], name: str = "") -> RingEmbedding:
    """A_d1 ⊗ ... ⊗ A_dk -> A_(d1+...+dk) by multiplication"""
    if not parts:
        raise InputError("nothing to multiply")
    ring = parts[0].ring
    factors = [f for p in parts for f in p.space.factors]
    dims: Dict[str, int] = {}
    for p in parts:
        dims.update(p.space.dims)
    widths = [len(p.space.factors) for p in parts]

    def rule(el: Element) -> Polynomial:
        out = ring.one
        start = 0
        for p, w in zip(parts, widths):
            out = out * p.polynomial(el[start:start + w])
            if not out:
                break
            start += w
        return out

    return RingEmbedding(TensorSpace(factors, dims), ring, sum(p.degree for p in parts), rule,
                         name or "·".join(p.name for p in parts))


def _primitive_scale(polys: Sequence[Polynomial]) -> object:
    nums, dens = [], []
    for p in polys:
        for c in p.values():
            nums.append(abs(int(QQ.numer(c))))
            dens.append(int(QQ.denom(c)))
    if not nums:
        return QQ.one
    den = math.lcm(*dens)
    num = math.gcd(*[n * (den // d) for n, d in zip(nums, dens)])
    scale = QQ(den, num)
    return -scale if polys[0].LC < 0 else scale


def normalize_entries(entries: Mapping[Tuple[int, int], Polynomial]) -> Dict[Tuple[int, int], Polynomial]:
    """Scale a whole block to integer entries with content 1, first entry in column order positive"""
    keys = sorted((k for k, p in entries.items() if p), key=lambda rc: (rc[1], rc[0]))
    if not keys:
        return {}
    scale = _primitive_scale([entries[k] for k in keys])
    return {k: entries[k] * scale for k in keys}


def to_poly_matrix(m: EquivariantMap,
                   embeddings: Sequence[Tuple[RingEmbedding, Sequence[int]]],
                   row_positions: Sequence[int] = (),
                   target_twist: int = 0,
                   target_label: str = "",
                   source_label: str = "",
                   normalize: bool = True) -> PolyMatrix:
    """
    PolyMatrix of m: domain basis -> columns, the codomain factors at
    row_positions -> rows, the remaining codomain factors pushed into the ring
    through the listed embeddings (each with its 1-based factor positions).
    """
    if not embeddings:
        raise InputError(f"{m.name}: no ring embedding given")
    codomain = m.codomain
    covered = sorted(list(row_positions) + [q for _, ps in embeddings for q in ps])
    if covered != list(range(1, len(codomain.factors) + 1)):
        raise InputError(f"{m.name}: every codomain factor of {codomain} must be a row factor "
                         f"or pushed into the ring exactly once")
    ring = embeddings[0][0].ring
    for emb, ps in embeddings:
        if emb.ring != ring:
            raise InputError(f"{m.name}: embeddings over different rings")
        block = TensorSpace([codomain.factors[q - 1] for q in ps], codomain.dims)
        if block != emb.space:
            raise InputError(f"{m.name}: {emb.name} expects {emb.space}, found {block}")
    degree = sum(emb.degree for emb, _ in embeddings)
    row_space = TensorSpace([codomain.factors[q - 1] for q in row_positions], codomain.dims)
    rows = [q - 1 for q in row_positions]

    entries: Dict[Tuple[int, int], Polynomial] = {}
    for c, el in enumerate(m.domain.basis):
        for img, coeff in m.image(el).items():
            poly = ring.one * coeff
            for emb, ps in embeddings:
                poly = poly * emb.polynomial(tuple(img[q - 1] for q in ps))
                if not poly:
                    break
            if poly:
                key = (row_space.index(tuple(img[i] for i in rows)), c)
                entries[key] = entries.get(key, ring.zero) + poly
    if normalize:
        entries = normalize_entries(entries)
    logger.debug(f"{m.name}: {row_space.dim}x{m.domain.dim} matrix of degree {degree}")

    nrows, ncols = row_space.dim, m.domain.dim
    target = GradedFreeModule(ring, (target_twist,) * nrows,
                              (target_label,) * nrows if target_label else ())
    source = GradedFreeModule(ring, (target_twist + degree,) * ncols,
                              (source_label,) * ncols if source_label else ())
    return PolyMatrix(source, target, entries)


def invariant(m: EquivariantMap, embeddings: Sequence[Tuple[RingEmbedding, Sequence[int]]],
              normalize: bool = True) -> Polynomial:
    """The polynomial image of a one-dimensional domain pushed entirely into the ring"""
    if m.domain.dim != 1:
        raise InputError(f"{m.name} has a {m.domain.dim}-dimensional domain")
    return to_poly_matrix(m, embeddings, normalize=normalize).entry(0, 0)
