"""
Symplectic linear algebra on F = C^6 for the 14-dimensional representation
V = ker(∧³F -> F) of Sp(F).

Basis f1..f6 of F has weights ε1, ε2, ε3, -ε1, -ε2, -ε3 and the form is
ω(f_a, f_(a+3)) = 1. The basis of V is a weight basis: the eight
decomposable vectors of weights ±ε1±ε2±ε3 and, for weight ±ε_i, the vector
f_i ∧ f_j ∧ f_(j+3) - f_i ∧ f_k ∧ f_(k+3) with j < k the other two indices.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from sympy.polys.domains import QQ

from orbitres.algebra import linalg
from orbitres.core.exceptions import InputError
from orbitres.equivariant.tensors import (
    Basis,
    EquivariantMap,
    TensorSpace,
    ext,
    factor_map,
    linear,
    vec,
)


logger = logging.getLogger("equivariant.symplectic")

SECTIONS = ("standard", "rescaled")

# weights of the V basis, in the order of the (F4, alpha1) ring variables
V_WEIGHTS: Tuple[Tuple[int, int, int], ...] = (
    (1, 1, 1), (1, 1, -1), (1, 0, 0), (0, 1, 0), (1, -1, 1), (0, 0, 1), (1, -1, -1),
    (-1, 1, 1), (0, 0, -1), (-1, 1, -1), (0, -1, 0), (-1, 0, 0), (-1, -1, 1), (-1, -1, -1),
)


def _wedge(indices: Sequence[int]) -> Tuple[Basis, int]:
    ordered = tuple(sorted(indices))
    inversions = sum(1 for a in range(len(indices)) for b in range(a + 1, len(indices))
                     if indices[a] > indices[b])
    return ordered, (-1) ** inversions


def weight_vector(weight: Tuple[int, int, int]) -> Dict[Basis, object]:
    """The basis vector of V ⊂ ∧³F of the given weight, as sparse ∧³F coordinates"""
    nonzero = [i for i, w in enumerate(weight) if w]
    if len(nonzero) == 3:
        key, sign = _wedge([i if w > 0 else i + 3 for i, w in enumerate(weight)])
        return {key: QQ(sign)}
    if len(nonzero) == 1:
        i = nonzero[0]
        head = i if weight[i] > 0 else i + 3
        j, k = [a for a in range(3) if a != i]
        out: Dict[Basis, object] = {}
        for a, s in ((j, 1), (k, -1)):
            key, sign = _wedge([head, a, a + 3])
            out[key] = out.get(key, QQ.zero) + s * sign
        return out
    raise InputError(f"{weight} is not a weight of V")


@dataclass
class SymplecticKit:
    """The form, the duality δ, the contraction c, and the projection φ with a section ψ"""
    n: int
    section: str
    form: List[List[int]]
    delta: EquivariantMap
    delta_inverse: EquivariantMap
    contraction: EquivariantMap
    phi: EquivariantMap
    psi: EquivariantMap
    psi_dual: EquivariantMap
    weights: Tuple[Tuple[int, int, int], ...] = field(default=V_WEIGHTS)


def symplectic_kit(n: int = 6, section: str = "standard") -> SymplecticKit:
    """
    section='rescaled' doubles the six short weight vectors of the V basis;
    the resulting ψ' is again a section of the matching φ'.
    """
    if n != 6:
        raise InputError("the kit covers Sp(6) only")
    if section not in SECTIONS:
        raise InputError(f"unknown section '{section}'")
    half = n // 2
    form = [[0] * n for _ in range(n)]
    for a in range(half):
        form[a][a + half] = 1
        form[a + half][a] = -1

    dims = {"F": n, "V": len(V_WEIGHTS)}
    # δ(v) = ω(v, -) as a target-by-source matrix
    delta_matrix = [[form[s][t] for s in range(n)] for t in range(n)]
    delta = linear(TensorSpace([vec("F")], dims), 1, vec("F", True), delta_matrix, name="δ")
    inverse = linalg.inverse(delta_matrix)
    delta_inverse = linear(TensorSpace([vec("F", True)], dims), 1, vec("F"), inverse, name="δ^-1")

    wedge3 = TensorSpace([ext("F", 3)], dims)

    def contract(b: Basis) -> Dict[Basis, object]:
        u, v, w = b
        out: Dict[Basis, object] = {}
        for (p, q, r), s in (((u, v, w), 1), ((u, w, v), -1), ((v, w, u), 1)):
            if form[p][q]:
                out[(r,)] = out.get((r,), QQ.zero) + s * form[p][q]
        return out

    contraction = factor_map(wedge3, 1, vec("F"), contract, name="c")

    scale = [QQ(2) if section == "rescaled" and sum(map(abs, w)) == 1 else QQ.one for w in V_WEIGHTS]
    vectors = [{k: a * s for k, a in weight_vector(w).items()} for w, s in zip(V_WEIGHTS, scale)]
    for k, v in enumerate(vectors):
        if _contract_vector(contract, v):
            raise InputError(f"basis vector {k} of V is not killed by the contraction")

    basis3 = wedge3.factor_basis(0)
    column_of = {b: j for j, b in enumerate(basis3)}
    rows: Dict[int, Dict[int, object]] = {}
    for k, v in enumerate(vectors):
        for b, a in v.items():
            rows.setdefault(column_of[b], {})[k] = a

    def project(b: Basis) -> Dict[Basis, object]:
        # x - ω ∧ c(x) / 2 lies in V; read off its coordinates
        x: Dict[Basis, object] = {b: QQ.one}
        for (r,), a in contract(b).items():
            for i in range(half):
                if r in (i, i + half):
                    continue
                key, sign = _wedge([i, i + half, r])
                x[key] = x.get(key, QQ.zero) - a * sign / 2
        rhs = {column_of[key]: a for key, a in x.items() if a}
        coords = linalg.solve(rows, len(basis3), len(vectors), rhs)
        if coords is None:
            raise InputError(f"projection of {b} left V")
        return {(k,): a for k, a in coords.items() if a}

    V = TensorSpace([vec("V")], dims)
    phi = factor_map(wedge3, 1, vec("V"), project, name="φ")
    psi = factor_map(V, 1, ext("F", 3), lambda b: vectors[b[0]], name="ψ")
    dual_images: Dict[Basis, Dict[Basis, object]] = {}
    for k, v in enumerate(vectors):
        for b, a in v.items():
            dual_images.setdefault(b, {})[(k,)] = a
    psi_dual = factor_map(TensorSpace([ext("F", 3, True)], dims), 1, vec("V", True),
                          lambda b: dual_images.get(b, {}), name="ψ*")
    logger.debug(f"symplectic kit built with the {section} section")
    return SymplecticKit(n, section, form, delta, delta_inverse, contraction, phi, psi, psi_dual)


def _contract_vector(contract, v: Dict[Basis, object]) -> bool:
    acc: Dict[Basis, object] = {}
    for b, a in v.items():
        for key, c in contract(b).items():
            acc[key] = acc.get(key, QQ.zero) + a * c
    return any(acc.values())
