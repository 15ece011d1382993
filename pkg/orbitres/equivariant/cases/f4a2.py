"""
(F4, alpha2): E⊗S2F with dim E = 2, dim F = 3.

δ is the pencil of symmetric matrices u·X1 + v·X2 with X_i[j][k] = x_i;jk.
Q names S2F* flattened to a 6-dimensional space, so that ∧²E*⊗∧²(S2F*)
embeds into A2 by the 2x2 minors of the 2x6 matrix of variables.
"""
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import List

from orbitres.algebra.matrices import vstack
from orbitres.algebra.polyring import Polynomial, PolynomialRing
from orbitres.equivariant.embeddings import RingEmbedding, product_embedding
from orbitres.equivariant.invariants import (
    binary_discriminant,
    independent_polynomials,
    minors_ideal,
    pencil_coefficients,
)
from orbitres.equivariant.registry import BuildKind, CaseBuilder, construction
from orbitres.equivariant.tensors import (
    Chain,
    Element,
    EquivariantMap,
    Factor,
    contract,
    ext,
    kernel_inclusion,
    quotient_projection,
    sym,
    traceless_projection,
    vec,
)


QUADRATIC = tuple(combinations_with_replacement(range(3), 2))


class F4Alpha2Builder(CaseBuilder):
    case_id = "F4a2"

    def __init__(self, ring: PolynomialRing):
        super().__init__(ring)
        self.dims["Q"] = len(QUADRATIC)

    def dual_factors(self) -> List[Factor]:
        return [vec("E", True), sym("F", 2, True)]

    def x(self, i: int, j: int, k: int) -> Polynomial:
        j, k = min(j, k), max(j, k)
        return self.ring.gens[self.ring.variable_for_slots(((i,), (j, k)))]

    def pencil(self, i: int, rows=(0, 1, 2), cols=(0, 1, 2)) -> List[List[Polynomial]]:
        return [[self.x(i, j, k) for k in cols] for j in rows]

    @cached_property
    def delta_coefficients(self) -> List[Polynomial]:
        return pencil_coefficients(self.pencil(0), self.pencil(1))

    @cached_property
    def wedge_q(self) -> RingEmbedding:
        """∧²Q -> A2, e_a∧e_b ↦ x_1;a x_2;b - x_1;b x_2;a"""

        def rule(el: Element) -> Polynomial:
            a, b = (QUADRATIC[q] for q in el[0])
            return self.x(0, *a) * self.x(1, *b) - self.x(0, *b) * self.x(1, *a)

        return RingEmbedding(self.space([ext("Q", 2)]), self.ring, 2, rule, "∧²Q")

    def traceless_inclusion(self) -> EquivariantMap:
        return kernel_inclusion(contract(self.space([vec("F", True), vec("F")]), 1, 2), "F0")

    # -- invariants -------------------------------------------------------------

    @construction("delta-coefficients", BuildKind.GENERATORS)
    def coefficients(self):
        """The four cubic coefficients of det δ"""
        return self.row(self.delta_coefficients)

    @construction("disc", BuildKind.INVARIANT)
    def discriminant(self):
        """Discriminant of the binary cubic det δ"""
        return self.row([binary_discriminant(self.delta_coefficients)])

    # -- the hypersurface -------------------------------------------------------

    @construction("O9-blockA", BuildKind.BLOCK)
    def o9_block_a(self):
        """∧³F*⊗∧³F*⊗S2F* -> ∧²Q⊗∧²Q -> A4"""
        chain = (Chain(self.space([ext("F", 3, True), ext("F", 3, True), sym("F", 2, True)]))
                 .diagonal(1, 1, 1, 1).diagonal(4, 1, 1, 1).diagonal(7, 1, 1)
                 .multiply(("sym", (1, 7)), ("sym", (2, 4)), ("sym", (3, 5)), ("sym", (6, 8)))
                 .flatten(1, "Q").flatten(2, "Q").flatten(3, "Q").flatten(4, "Q")
                 .multiply(("ext", (1, 2)), ("ext", (3, 4))))
        a4 = product_embedding([self.wedge_q, self.wedge_q])
        return self.matrix(chain.build(), [(a4, (1, 2))], (), 0, "A", "(2,2;4,2,2)")

    @construction("O9-blockB", BuildKind.BLOCK)
    def o9_block_b(self):
        """∧³F*⊗S2F* -> F*⊗∧²Q -> F*⊗A2"""
        chain = (Chain(self.space([ext("F", 3, True), sym("F", 2, True)]))
                 .diagonal(1, 1, 1, 1).diagonal(4, 1, 1)
                 .multiply(("sym", (2, 4)), ("sym", (3, 5)))
                 .flatten(2, "Q").flatten(3, "Q")
                 .multiply(("ext", (2, 3))))
        return self.matrix(chain.build(), [(self.wedge_q, (2,))], (1,), 2, "(1,1;2,1,1)", "(2,2;4,2,2)")

    @construction("O9-blockC", BuildKind.BLOCK)
    def o9_block_c(self):
        """S2F* -> E⊗E*⊗S2F* -> E⊗A1"""
        chain = Chain(self.space([sym("F", 2, True)])).trace(1, "E")
        return self.matrix(chain.build(), [(self.a1, (2, 3))], (1,), 3, "(2,1;2,2,2)", "(2,2;4,2,2)")

    @construction("O9-d1")
    def o9_d1(self):
        """Presentation of the normalization of the discriminant hypersurface"""
        return vstack(self.build("O9-blockA"), self.build("O9-blockB"), self.build("O9-blockC"))

    # -- non-normal closures ------------------------------------------------------

    @construction("O8-d2-block1", BuildKind.BLOCK)
    def o8_block1(self):
        """sl(F) -> E⊗∧²F⊗A1"""
        chain = (Chain(self.traceless_inclusion())
                 .trace(3, "F", dual_first=True)
                 .multiply(("sym", (1, 3)), ("ext", (2, 4)))
                 .trace(1, "E"))
        return self.matrix(chain.build(), [(self.a1, (2, 3))], (1, 4), 5, "(3,2;4,3,3)", "(3,3;5,4,3)")

    @construction("O8-d2-block2", BuildKind.BLOCK)
    def o8_block2(self):
        """sl(F) -> ∧²Q⊗S2F* -> S2F*⊗A2"""
        chain = (Chain(self.traceless_inclusion())
                 .trace(3, "F", dual_first=True).trace(5, "F", dual_first=True)
                 .trace(7, "F", dual_first=True)
                 .multiply(("sym", (1, 3)), ("ext", (2, 8)), ("ext", (4, 6)), ("sym", (5, 7)))
                 .flatten(1, "Q").flatten(4, "Q")
                 .hodge(2).hodge(3)
                 .multiply(("ext", (1, 4)), ("sym", (2, 3))))
        return self.matrix(chain.build(), [(self.wedge_q, (1,))], (2,), 4, "(2,2;4,2,2)", "(3,3;5,4,3)")

    @construction("O8-d2")
    def o8_d2(self):
        """Second differential of the normalization of the closure of dimension 10"""
        return vstack(self.build("O8-d2-block1"), self.build("O8-d2-block2"))

    @construction("O8-relations")
    def o8_relations(self):
        """Relations among the three sextics: E*⊗∧²E*⊗∧²E*⊗∧³F*⊗∧³F* -> S2E*⊗A3"""
        chain = (Chain(self.space([vec("E", True), ext("E", 2, True), ext("E", 2, True),
                                   ext("F", 3, True), ext("F", 3, True)]))
                 .diagonal(2, 1, 1).diagonal(4, 1, 1)
                 .diagonal(6, 1, 1, 1).diagonal(9, 1, 1, 1)
                 .multiply(("sym", (2, 4)), ("sym", (6, 9)), ("sym", (7, 10)), ("sym", (8, 11))))
        a3 = product_embedding([self.a1] * 3)
        return self.matrix(chain.build(), [(a3, (1, 5, 3, 6, 4, 7))], (2,), 6, "(4,2;4,4,4)", "(5,4;6,6,6)")

    @construction("O7-d2")
    def o7_d2(self):
        """Second differential of the normalization: S2E*⊗∧²F* -> E*⊗S(2,1)F*⊗A1"""
        chain = (Chain(self.space([sym("E", 2, True), ext("F", 2, True)]))
                 .diagonal(1, 1, 1)
                 .trace(3, "F")
                 .diagonal(5, 1, 1)
                 .multiply(("sym", (4, 5)))
                 .permute(1, 3, 5, 2, 4)
                 .on(2, traceless_projection(3, "F", "projection")))
        return self.matrix(chain.build(), [(self.a1, (3, 4))], (1, 2), 3, "(2,1;3,2,1)", "(3,1;3,3,2)")

    @construction("O6-d1-block1", BuildKind.BLOCK)
    def o6_block1(self):
        """E*⊗F⊗F* -> S2F⊗A1"""
        chain = (Chain(self.space([vec("E", True), vec("F"), vec("F", True)]))
                 .trace(4, "F")
                 .multiply(("sym", (2, 4)), ("sym", (3, 5))))
        return self.matrix(chain.build(), [(self.a1, (1, 3))], (2,), 2, "(1,1;2,2,0)", "E*⊗F⊗F*")

    @construction("O6-d1-blockA", BuildKind.BLOCK)
    def o6_block_a(self):
        """E*⊗F⊗F*⊗∧³F* -> E*⊗∧²Q⊗S2F* -> A3"""
        chain = (Chain(self.space([vec("E", True), vec("F"), vec("F", True), ext("F", 3, True)]))
                 .hodge(2)
                 .diagonal(2, 1, 1)
                 .diagonal(5, 1, 1, 1)
                 .multiply(("sym", (2, 5)), ("sym", (3, 6)), ("sym", (4, 7)))
                 .flatten(2, "Q").flatten(3, "Q")
                 .multiply(("ext", (2, 3))))
        return self.matrix(chain.build(), [(self.a1, (1, 3)), (self.wedge_q, (2,))], (), 0, "A", "E*⊗F⊗F*")

    @construction("O6-d1")
    def o6_d1(self):
        """Presentation of the normalization of the closure of dimension 9"""
        return vstack(self.build("O6-d1-blockA"), self.build("O6-d1-block1"))

    @construction("O5-d4")
    def o5_d4(self):
        """Last differential of the normalization: S3F -> E⊗S(3,2)F⊗A1"""
        relations = (Chain(self.space([sym("F", 4), vec("F")]))
                     .diagonal(1, 3, 1)
                     .multiply(("sym", (2, 3))))
        chain = (Chain(self.space([sym("F", 3)]))
                 .trace(1, "E")
                 .trace(4, "F").trace(6, "F")
                 .multiply(("sym", (4, 6)), ("sym", (5, 7)))
                 .permute(1, 3, 4, 2, 5)
                 .on(2, quotient_projection(relations.build(), "F32")))
        return self.matrix(chain.build(), [(self.a1, (3, 4))], (1, 2), 5, "(3,2;5,3,2)", "(3,3;5,5,2)")

    @construction("O4-d4-block1", BuildKind.BLOCK)
    def o4_block1(self):
        """S3F* -> E⊗F*⊗A1"""
        chain = (Chain(self.space([sym("F", 3, True)]))
                 .trace(1, "E")
                 .diagonal(3, 2, 1))
        return self.matrix(chain.build(), [(self.a1, (2, 3))], (1, 4), 5, "(3,2;4,3,3)", "(3,3;6,3,3)")

    @construction("O4-d4-block2", BuildKind.BLOCK)
    def o4_block2(self):
        """S3F*⊗∧³F* -> E⊗S(3,1)F*⊗A1"""
        relations = Chain(self.space([sym("F", 4, True)])).diagonal(1, 3, 1)
        chain = (Chain(self.space([sym("F", 3, True), ext("F", 3, True)]))
                 .trace(1, "E")
                 .diagonal(3, 2, 1)
                 .diagonal(5, 1, 1, 1)
                 .multiply(("sym", (3, 5)), ("sym", (4, 6)))
                 .permute(1, 3, 5, 2, 4)
                 .on(2, quotient_projection(relations.build(), "F31")))
        return self.matrix(chain.build(), [(self.a1, (3, 4))], (1, 2), 5, "(3,2;5,3,2)", "(3,3;6,3,3)")

    @construction("O4-d4")
    def o4_d4(self):
        """Last differential of the closure of dimension 8 with a symmetric pencil"""
        return vstack(self.build("O4-d4-block1"), self.build("O4-d4-block2"))

    # -- generator sets ---------------------------------------------------------

    @construction("O3-minors", BuildKind.GENERATORS)
    def o3_minors(self):
        """2x2 minors of the 6x2 matrix of the variables"""
        rows = [[self.x(i, j, k) for i in range(2)] for j, k in QUADRATIC]
        return self.row(minors_ideal(rows, 2))

    @construction("O1-minor-coefficients", BuildKind.GENERATORS)
    def o1_minor_coefficients(self):
        """Coefficients of the 2x2 minors of δ"""
        out: List[Polynomial] = []
        for rows in combinations(range(3), 2):
            for cols in combinations(range(3), 2):
                out.extend(pencil_coefficients(self.pencil(0, rows, cols), self.pencil(1, rows, cols)))
        return self.row(independent_polynomials(out))
