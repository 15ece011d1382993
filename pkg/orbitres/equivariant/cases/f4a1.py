"""
(F4, alpha1): the 14-dimensional representation V of Sp(6). Ring variables
are indexed by roots and carry explicit weights; V* basis vector k is sent
to the k-th variable.
"""
from functools import cached_property
from typing import List

from orbitres.algebra.polyring import PolynomialRing
from orbitres.equivariant.embeddings import RingEmbedding, invariant, product_embedding
from orbitres.equivariant.registry import BuildKind, CaseBuilder, construction
from orbitres.equivariant.symplectic import SymplecticKit, symplectic_kit
from orbitres.equivariant.tensors import Chain, EquivariantMap, Factor, TensorSpace, sym, vec


class F4Alpha1Builder(CaseBuilder):
    case_id = "F4a1"

    def __init__(self, ring: PolynomialRing, section: str = "standard"):
        super().__init__(ring)
        self.kit: SymplecticKit = symplectic_kit(6, section)
        self.dims.update({"F": 6, "V": len(self.kit.weights)})

    def dual_factors(self) -> List[Factor]:
        return [vec("V", True)]

    @property
    def a1(self) -> RingEmbedding:
        if self._a1 is None:
            gens = self.ring.gens
            self._a1 = RingEmbedding(self.space([vec("V", True)]), self.ring, 1,
                                     lambda el: gens[el[0][0]], "V*")
        return self._a1

    def rho_chain(self) -> EquivariantMap:
        """S2F* -> V*⊗V*"""
        kit = self.kit
        chain = (Chain(self.space([sym("F", 2, True)]))
                 .diagonal(1, 1, 1)
                 .on(1, kit.delta_inverse)
                 .hodge(1)
                 .diagonal(1, 3, 2)
                 .multiply(("ext", (2, 3)))
                 .on(1, kit.psi_dual)
                 .on(2, kit.psi_dual))
        return chain.build()

    @cached_property
    def rho(self) -> RingEmbedding:
        """ρ: S2F* -> A2"""
        return product_embedding([self.a1, self.a1]).after(self.rho_chain(), "ρ")

    @construction("rho", BuildKind.GENERATORS)
    def rho_row(self):
        """Image of ρ, the quadrics of the closed orbit"""
        return self.matrix(self.rho_chain(), [(product_embedding([self.a1, self.a1]), (1, 2))],
                           (), 0, "A", "2ω1")

    @construction("quartic", BuildKind.INVARIANT)
    def quartic(self):
        """Degree 4 invariant: tr2, then S2(δ), then ρ⊗ρ and multiplication"""
        delta = self.kit.delta.to_lists()
        chain = (Chain(TensorSpace.unit(self.dims))
                 .trace(1, "F").trace(3, "F")
                 .multiply(("sym", (1, 3)), ("sym", (2, 4)))
                 .linear(1, sym("F", 2, True), delta))
        return self.row([invariant(chain.build(), [(self.rho, (1,)), (self.rho, (2,))])])

    @construction("O2-d2")
    def o2_d2(self):
        """Second differential of the closure of dimension 10: S2F* -> V*⊗A1"""
        return self.matrix(self.rho_chain(), [(self.a1, (2,))], (1,), 3, "ω3", "2ω1")
