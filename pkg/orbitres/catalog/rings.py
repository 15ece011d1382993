"""
Polynomial rings of the cases, built from the catalog ring layouts
"""
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import List, Optional, Sequence, Tuple

from orbitres.algebra.polyring import PolynomialRing, SlotSpec, VariableSpec
from orbitres.catalog.models import RingLayout
from orbitres.core.exceptions import InputError


def slot_basis(slot: SlotSpec, dim: int) -> List[Tuple[int, ...]]:
    """0-based contents of one tensor slot, in lexicographic order"""
    if slot.kind == "vec":
        return [(a,) for a in range(dim)]
    if slot.kind == "ext":
        return list(combinations(range(dim), slot.power))
    return list(combinations_with_replacement(range(dim), slot.power))


def variable_name(contents: Sequence[Tuple[int, ...]], separator: str = "") -> str:
    return "x" + separator.join("".join(str(a + 1) for a in c) for c in contents)


def build_ring(layout: RingLayout, name: str = "") -> PolynomialRing:
    """Variables are the products of the slot bases, first slot outermost, or the listed variables"""
    if layout.variables:
        specs = [VariableSpec(v.name, k, weight=tuple(v.weight)) for k, v in enumerate(layout.variables)]
        return PolynomialRing(specs, name=name)
    if not layout.slots:
        raise InputError(f"ring layout of {name} lists neither slots nor variables")
    slots = [SlotSpec(s.kind, s.space, s.power) for s in layout.slots]
    for s in slots:
        if s.space not in layout.dims:
            raise InputError(f"no dimension for space {s.space} in ring layout of {name}")
    bases = [slot_basis(s, layout.dims[s.space]) for s in slots]
    specs = []
    for k, contents in enumerate(product(*bases)):
        specs.append(VariableSpec(variable_name(contents, layout.separator), k, slots=tuple(contents)))
    return PolynomialRing(specs, slots=slots, space_dims=layout.dims, name=name)


@lru_cache(maxsize=None)
def case_ring(case_id: str, catalog: Optional[str] = None) -> PolynomialRing:
    """The ring of a catalog case; one instance per case and catalog directory"""
    from orbitres.catalog.loader import read_case_file

    return build_ring(read_case_file(case_id, catalog).ring, case_id)
