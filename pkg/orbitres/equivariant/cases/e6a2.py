"""
(E6, alpha2): ∧³F with dim F = 6.
"""
from itertools import combinations
from typing import List

from orbitres.algebra.groebner import kernel_of_parametrization, parameter_ring
from orbitres.equivariant.embeddings import invariant, product_embedding
from orbitres.equivariant.invariants import determinant
from orbitres.equivariant.registry import BuildKind, CaseBuilder, construction
from orbitres.equivariant.tensors import Chain, Factor, contract, ext, kernel_inclusion, vec


class E6Alpha2Builder(CaseBuilder):
    case_id = "E6a2"

    def dual_factors(self) -> List[Factor]:
        return [ext("F", 3, True)]

    @construction("O3-quartic", BuildKind.INVARIANT)
    def quartic(self):
        """Degree 4 invariant cutting out the orbit of codimension 1"""
        top = ext("F", 6, True)
        chain = (Chain(self.space([top, top]))
                 .diagonal(1, 3, 2, 1).diagonal(4, 1, 2, 3)
                 .multiply(("ext", (2, 4)), ("ext", (3, 5))))
        a4 = product_embedding([self.a1] * 4)
        return self.row([invariant(chain.build(), [(a4, (1, 2, 3, 4))])])

    @construction("O2-d2")
    def contact_d2(self):
        """Second differential of the closure of codimension 5: sl(F) -> ∧³F⊗A1"""
        pair = self.space([vec("F"), vec("F", True)])
        chain = (Chain(kernel_inclusion(contract(pair, 1, 2), "F0"))
                 .trace(3, "F", 2)
                 .multiply(("ext", (1, 3)), ("ext", (2, 4))))
        return self.matrix(chain.build(), [(self.a1, (2,))], (1,), 3, "∧3F", "sl(F)")

    @construction("O1-pluecker", BuildKind.GENERATORS)
    def pluecker(self):
        """Plücker quadrics of the Grassmannian of 3-planes, by implicitization"""
        params = parameter_ring(18)
        y = params.gens
        rows = [[y[6 * i + j] for j in range(6)] for i in range(3)]
        images = [determinant([[rows[i][j] for j in cols] for i in range(3)])
                  for cols in combinations(range(6), 3)]
        return self.row(kernel_of_parametrization(images, 2, self.ring))
