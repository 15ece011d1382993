"""
(E6, alpha3): E⊗∧²F with dim E = 2, dim F = 5.
"""
from functools import cached_property
from itertools import combinations
from typing import List

from orbitres.algebra.polyring import Polynomial, polarize_span
from orbitres.equivariant.embeddings import RingEmbedding, product_embedding
from orbitres.equivariant.invariants import minors_ideal, pfaffian_disc_4x4
from orbitres.equivariant.registry import BuildKind, CaseBuilder, construction
from orbitres.equivariant.tensors import Chain, Factor, ext, sym, vec


class E6Alpha3Builder(CaseBuilder):
    case_id = "E6a3"

    def dual_factors(self) -> List[Factor]:
        return [vec("E", True), ext("F", 2, True)]

    def x(self, i: int, a: int, b: int) -> Polynomial:
        return self.ring.gens[self.ring.variable_for_slots(((i,), (a, b)))]

    @cached_property
    def quadric_embedding(self) -> RingEmbedding:
        """S2E*⊗∧⁴F* -> A2 through E*⊗∧²F*⊗E*⊗∧²F*"""
        chain = (Chain(self.space([sym("E", 2, True), ext("F", 4, True)]))
                 .diagonal(2, 2, 2).diagonal(1, 1, 1)
                 .permute(1, 3, 2, 4))
        return product_embedding([self.a1, self.a1]).after(chain.build(), "A2")

    @construction("O6-d2")
    def normalization_d2(self):
        """Second differential of the normalization: S3E* -> E*⊗∧⁴F⊗A2"""
        chain = (Chain(self.space([sym("E", 3, True)]))
                 .diagonal(1, 2, 1)
                 .trace(3, "F", 4))
        return self.matrix(chain.build(), [(self.quadric_embedding, (1, 4))], (2, 3), 3,
                           "(2,1;2,1,1,1,1)", "(4,1;2,2,2,2,2)")

    @construction("O5-d4")
    def last_d4(self):
        """Last differential of the closure of dimension 15: F* -> E⊗F⊗A1"""
        chain = (Chain(self.space([vec("F", True)]))
                 .trace(2, "E")
                 .trace(4, "F")
                 .multiply(("ext", (1, 5))))
        return self.matrix(chain.build(), [(self.a1, (3, 1))], (2, 4), 7,
                           "(4,3;3,3,3,3,2)", "(4,4;4,3,3,3,3)")

    @construction("O4-pfaffian-disc", BuildKind.GENERATORS)
    def pfaffian_discriminants(self):
        """Polarizations of the discriminant of the Pfaffian pencil on a 4-dimensional subspace"""
        seed = pfaffian_disc_4x4(lambda a, b: self.x(0, a, b), lambda a, b: self.x(1, a, b))
        return self.row(polarize_span([seed], ["E", "F"], self.ring))

    @construction("O3-embedding", BuildKind.GENERATORS)
    def embedded_quadrics(self):
        """Image of S2E*⊗∧⁴F* in the quadrics"""
        emb = self.quadric_embedding
        return self.row([emb.polynomial(el) for el in emb.space.basis])

    @construction("O2-minors", BuildKind.GENERATORS)
    def e_minors(self):
        """2x2 minors of the generic matrix of E* -> ∧²F"""
        pairs = list(combinations(range(5), 2))
        rows = [[self.x(i, a, b) for a, b in pairs] for i in range(2)]
        return self.row(minors_ideal(rows, 2))
