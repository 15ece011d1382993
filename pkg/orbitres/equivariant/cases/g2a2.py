"""
(G2, alpha2): binary cubics S3 E with dim E = 2.
"""
from typing import List

from orbitres.algebra.matrices import vstack
from orbitres.equivariant.embeddings import product_embedding
from orbitres.equivariant.invariants import determinant
from orbitres.equivariant.registry import BuildKind, CaseBuilder, construction
from orbitres.equivariant.tensors import Chain, Factor, ext, sym, vec


class G2Alpha2Builder(CaseBuilder):
    case_id = "G2a2"

    def dual_factors(self) -> List[Factor]:
        return [sym("E", 3, True)]

    @construction("O2-blockA", BuildKind.BLOCK)
    def block_a(self):
        """Normalization d1 into A: ∧²E*⊗∧²E*⊗S2E* -> A2"""
        chain = (Chain(self.space([ext("E", 2, True), ext("E", 2, True), sym("E", 2, True)]))
                 .diagonal(1, 1, 1).diagonal(3, 1, 1).diagonal(5, 1, 1)
                 .multiply(("sym", (1, 3, 5)), ("sym", (2, 4, 6))))
        quad = product_embedding([self.a1, self.a1])
        return self.matrix(chain.build(), [(quad, (1, 2))], (), 0, "A", "(4,2)")

    @construction("O2-blockB", BuildKind.BLOCK)
    def block_b(self):
        """Normalization d1 into the second summand: ∧²E*⊗S2E* -> E*⊗A1"""
        chain = (Chain(self.space([ext("E", 2, True), sym("E", 2, True)]))
                 .diagonal(1, 1, 1).diagonal(3, 1, 1)
                 .multiply(("sym", (2, 3, 4))))
        return self.matrix(chain.build(), [(self.a1, (2,))], (1,), 1, "(2,1)", "(4,2)")

    @construction("O2-d1")
    def normalization_d1(self):
        """Presentation of the normalization of the quartic hypersurface"""
        return vstack(self.build("O2-blockA"), self.build("O2-blockB"))

    @construction("O2-quartic", BuildKind.INVARIANT)
    def quartic(self):
        """The quartic invariant, det of the normalization presentation"""
        return self.row([determinant(self.build("O2-d1").to_lists())])

    @construction("O1-d2")
    def cubic_cone_d2(self):
        """Last differential of the twisted cubic resolution: ∧²E*⊗∧²E*⊗E* -> S2E*⊗A1"""
        chain = (Chain(self.space([ext("E", 2, True), ext("E", 2, True), vec("E", True)]))
                 .diagonal(1, 1, 1).diagonal(3, 1, 1)
                 .multiply(("sym", (2, 3)), ("sym", (1, 4, 5))))
        return self.matrix(chain.build(), [(self.a1, (1,))], (2,), 2, "(2,0)", "(3,1)")

