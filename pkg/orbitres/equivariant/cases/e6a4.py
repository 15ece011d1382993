"""
(E6, alpha4): E⊗F⊗H with dim E = 2, dim F = dim H = 3.

The pencil δ = u·X1 + v·X2 has X_i[j][k] = x_ijk; S_r E* embeds into A_3
(r = 3) and into the 2x2 minors (r = 2) through the coefficients of det δ
and of its minors, each scaled by i!j!/r! for the basis element with i
copies of e1* and j copies of e2*.
"""
from functools import cached_property
from itertools import combinations
from math import factorial
from typing import Callable, List, Sequence

from sympy.polys.domains import QQ

from orbitres.algebra.matrices import vstack
from orbitres.algebra.polyring import Polynomial, polarize_span
from orbitres.equivariant.embeddings import RingEmbedding, product_embedding
from orbitres.equivariant.invariants import (
    binary_discriminant,
    discriminant_quadric,
    hyperdet_232,
    minors_ideal,
    pencil_coefficients,
    quadric_apolarity,
)
from orbitres.equivariant.registry import BuildKind, CaseBuilder, construction
from orbitres.equivariant.tensors import Chain, Element, Factor, ext, sym, vec


def _binomial_weight(content: Sequence[int]) -> object:
    i = sum(1 for a in content if a == 0)
    j = len(content) - i
    return QQ(factorial(i) * factorial(j), factorial(len(content)))


class E6Alpha4Builder(CaseBuilder):
    case_id = "E6a4"

    def dual_factors(self) -> List[Factor]:
        return [vec("E", True), vec("F", True), vec("H", True)]

    def x(self, i: int, j: int, k: int) -> Polynomial:
        return self.ring.gens[self.ring.variable_for_slots(((i,), (j,), (k,)))]

    def pencil(self, i: int, rows: Sequence[int] = (0, 1, 2), cols: Sequence[int] = (0, 1, 2)):
        return [[self.x(i, j, k) for k in cols] for j in rows]

    @cached_property
    def delta_coefficients(self) -> List[Polynomial]:
        """a30, a21, a12, a03 of det δ"""
        return pencil_coefficients(self.pencil(0), self.pencil(1))

    @cached_property
    def delta_embedding(self) -> RingEmbedding:
        """S3E* -> A3"""
        coeffs = self.delta_coefficients

        def rule(el: Element) -> Polynomial:
            content = el[0]
            return coeffs[len(content) - sum(1 for a in content if a == 0)] * _binomial_weight(content)

        return RingEmbedding(self.space([sym("E", 3, True)]), self.ring, 3, rule, "det δ")

    @cached_property
    def minor_embedding(self) -> RingEmbedding:
        """S2E*⊗∧²F*⊗∧²H* -> A2 through the 2x2 minors of δ"""

        def rule(el: Element) -> Polynomial:
            content, rows, cols = el
            coeffs = pencil_coefficients(self.pencil(0, rows, cols), self.pencil(1, rows, cols))
            return coeffs[2 - sum(1 for a in content if a == 0)] * _binomial_weight(content)

        space = self.space([sym("E", 2, True), ext("F", 2, True), ext("H", 2, True)])
        return RingEmbedding(space, self.ring, 2, rule, "minors δ")

    @cached_property
    def cofactors(self) -> List[List[List[Polynomial]]]:
        """Signed cofactors of δ as binary quadrics: cofactors[i][j] = (u², uv, v² coefficients)"""
        out = []
        for i in range(3):
            rows = [r for r in range(3) if r != i]
            line = []
            for j in range(3):
                cols = [c for c in range(3) if c != j]
                coeffs = pencil_coefficients(self.pencil(0, rows, cols), self.pencil(1, rows, cols))
                line.append([-c for c in coeffs] if (i + j) % 2 else coeffs)
            out.append(line)
        return out

    def flattening_minors(self, row_of: Callable[[int, int, int], int],
                          col_of: Callable[[int, int, int], int],
                          shape: Sequence[int], size: int) -> List[Polynomial]:
        rows = [[self.ring.zero] * shape[1] for _ in range(shape[0])]
        for i in range(2):
            for j in range(3):
                for k in range(3):
                    rows[row_of(i, j, k)][col_of(i, j, k)] = self.x(i, j, k)
        return minors_ideal(rows, size)

    # -- invariants -------------------------------------------------------------

    @construction("delta-coefficients", BuildKind.GENERATORS)
    def coefficients(self):
        """The four cubic coefficients of det δ"""
        return self.row(self.delta_coefficients)

    @construction("disc", BuildKind.INVARIANT)
    def discriminant(self):
        """Discriminant of the binary cubic det δ, of degree 12"""
        return self.row([binary_discriminant(self.delta_coefficients)])

    # -- differentials ----------------------------------------------------------

    @construction("O16-blockA", BuildKind.BLOCK)
    def o16_block_a(self):
        """Normalization d1 into A: S2E*⊗∧²E*⊗∧²E* -> A6"""
        chain = (Chain(self.space([sym("E", 2, True), ext("E", 2, True), ext("E", 2, True)]))
                 .diagonal(1, 1, 1).diagonal(3, 1, 1).diagonal(5, 1, 1)
                 .multiply(("sym", (1, 3, 5)), ("sym", (2, 4, 6))))
        a6 = product_embedding([self.delta_embedding, self.delta_embedding])
        return self.matrix(chain.build(), [(a6, (1, 2))], (), 0, "A", "(4,2;2,2,2;2,2,2)")

    @construction("O16-blockB", BuildKind.BLOCK)
    def o16_block_b(self):
        """Normalization d1 into the second summand: S2E* -> E⊗A3"""
        chain = (Chain(self.space([sym("E", 2, True)]))
                 .trace(1, "E")
                 .multiply(("sym", (2, 3))))
        return self.matrix(chain.build(), [(self.delta_embedding, (2,))], (1,), 3,
                           "(2,1;1,1,1;1,1,1)", "(4,2;2,2,2;2,2,2)")

    @construction("O16-d1")
    def o16_d1(self):
        """Presentation of the normalization of the discriminant hypersurface"""
        return vstack(self.build("O16-blockA"), self.build("O16-blockB"))

    @construction("O15-d2")
    def o15_d2(self):
        """Last differential of the closure of codimension 2: ∧²E*⊗∧²E*⊗E* -> S2E*⊗A3"""
        chain = (Chain(self.space([ext("E", 2, True), ext("E", 2, True), vec("E", True)]))
                 .diagonal(1, 1, 1).diagonal(3, 1, 1)
                 .multiply(("sym", (1, 3)), ("sym", (2, 4)))
                 .multiply(("sym", (1, 3))))
        return self.matrix(chain.build(), [(self.delta_embedding, (1,))], (2,), 6,
                           "(4,2;2,2,2;2,2,2)", "(5,4;3,3,3;3,3,3)")

    @construction("O14-d3")
    def o14_d3(self):
        """Last differential of the normalization: S4E* -> S2E*⊗∧²F⊗∧²H⊗A2"""
        chain = (Chain(self.space([sym("E", 4, True)]))
                 .diagonal(1, 2, 2)
                 .trace(3, "F", 2)
                 .trace(5, "H", 2))
        return self.matrix(chain.build(), [(self.minor_embedding, (2, 4, 6))], (1, 3, 5), 4,
                           "(3,1;2,1,1;2,1,1)", "(5,1;2,2,2;2,2,2)")

    @construction("O13-d4")
    def o13_d4(self):
        """Last differential of the normalization: ∧²F*⊗∧²H* -> E⊗F*⊗H*⊗A1"""
        chain = (Chain(self.space([ext("F", 2, True), ext("H", 2, True)]))
                 .trace(1, "E")
                 .diagonal(3, 1, 1)
                 .diagonal(5, 1, 1))
        return self.matrix(chain.build(), [(self.a1, (2, 4, 6))], (1, 3, 5), 7,
                           "(4,3;3,2,2;3,2,2)", "(4,4;3,3,2;3,3,2)")

    @construction("O12-d4-block1", BuildKind.BLOCK)
    def o12_block1(self):
        """S3E*⊗∧³F*⊗∧³H* -> E*⊗F*⊗H*⊗A2"""
        chain = (Chain(self.space([sym("E", 3, True), ext("F", 3, True), ext("H", 3, True)]))
                 .diagonal(1, 1, 2).diagonal(3, 1, 2).diagonal(5, 1, 2))
        return self.matrix(chain.build(), [(self.minor_embedding, (2, 4, 6))], (1, 3, 5), 7,
                           "(4,3;3,2,2;3,2,2)", "(6,3;3,3,3;3,3,3)")

    @construction("O12-d4-block2", BuildKind.BLOCK)
    def o12_block2(self):
        """∧²E*⊗∧²E*⊗S3E* -> S4E*⊗A3"""
        chain = (Chain(self.space([ext("E", 2, True), ext("E", 2, True), sym("E", 3, True)]))
                 .diagonal(1, 1, 1).diagonal(3, 1, 1).diagonal(5, 2, 1)
                 .multiply(("sym", (1, 3, 5)), ("sym", (2, 4, 6))))
        return self.matrix(chain.build(), [(self.delta_embedding, (2,))], (1,), 6,
                           "(5,1;2,2,2;2,2,2)", "(6,3;3,3,3;3,3,3)")

    @construction("O12-d4")
    def o12_d4(self):
        """Last differential of the normalization of the closure of dimension 14"""
        return vstack(self.build("O12-d4-block1"), self.build("O12-d4-block2"))

    # -- generator sets ---------------------------------------------------------

    @construction("O11-minors", BuildKind.GENERATORS)
    def o11_minors(self):
        """3x3 minors of the generic matrix of F -> E*⊗H*"""
        return self.row(self.flattening_minors(lambda i, j, k: 3 * i + k, lambda i, j, k: j, (6, 3), 3))

    @construction("O10-minors", BuildKind.GENERATORS)
    def o10_minors(self):
        """3x3 minors of the generic matrix of H -> E*⊗F*"""
        return self.row(self.flattening_minors(lambda i, j, k: 3 * i + j, lambda i, j, k: k, (6, 3), 3))

    @construction("O6-minors", BuildKind.GENERATORS)
    def o6_minors(self):
        """2x2 minors of the generic matrix of E -> F*⊗H*"""
        return self.row(self.flattening_minors(lambda i, j, k: 3 * j + k, lambda i, j, k: i, (9, 2), 2))

    @construction("O3-minors", BuildKind.GENERATORS)
    def o3_minors(self):
        """2x2 minors of the generic matrix of F -> E*⊗H*"""
        return self.row(self.flattening_minors(lambda i, j, k: j, lambda i, j, k: 3 * i + k, (3, 6), 2))

    @construction("O2-minors", BuildKind.GENERATORS)
    def o2_minors(self):
        """2x2 minors of the generic matrix of H -> E*⊗F*"""
        return self.row(self.flattening_minors(lambda i, j, k: k, lambda i, j, k: 3 * i + j, (3, 6), 2))

    @construction("O8-hyperdet", BuildKind.GENERATORS)
    def o8_hyperdeterminants(self):
        """Polarizations of the 2x3x2 hyperdeterminant on E⊗F⊗C²"""
        seed = hyperdet_232(lambda i, j, k: self.x(i, j, k))
        return self.row(polarize_span([seed], ["E", "F", "H"], self.ring))

    @construction("O9-hyperdet", BuildKind.GENERATORS)
    def o9_hyperdeterminants(self):
        """Polarizations of the 2x3x2 hyperdeterminant on E⊗C²⊗H"""
        seed = hyperdet_232(lambda i, j, k: self.x(i, k, j))
        return self.row(polarize_span([seed], ["E", "F", "H"], self.ring))

    @construction("O5-quadric-disc", BuildKind.GENERATORS)
    def o5_discriminants(self):
        """Polarizations of the discriminant of a 2x2 pencil on E⊗C²⊗C²"""
        coeffs = pencil_coefficients(self.pencil(0, (0, 1), (0, 1)), self.pencil(1, (0, 1), (0, 1)))
        return self.row(polarize_span([discriminant_quadric(coeffs)], ["E", "F", "H"], self.ring))

    @construction("O1-minor-coefficients", BuildKind.GENERATORS)
    def o1_minor_coefficients(self):
        """Coefficients of the 2x2 minors of δ"""
        out: List[Polynomial] = []
        for rows in combinations(range(3), 2):
            for cols in combinations(range(3), 2):
                out.extend(pencil_coefficients(self.pencil(0, rows, cols), self.pencil(1, rows, cols)))
        return self.row(out)

    @construction("O14-cofactor-span", BuildKind.GENERATORS)
    def o14_cofactor_span(self):
        """3x3 minors of the 9x3 coefficient matrix of the cofactors: δ meets rank one"""
        rows = [self.cofactors[i][j] for i in range(3) for j in range(3)]
        return self.row(minors_ideal(rows, 3))

    @construction("O13-adjugate-flattenings", BuildKind.GENERATORS)
    def o13_adjugate_flattenings(self):
        """3x3 minors of adj δ flattened along F and along H"""
        C = self.cofactors
        along_f = [[C[i][j][m] for j in range(3) for m in range(3)] for i in range(3)]
        along_h = [[C[i][j][m] for i in range(3) for m in range(3)] for j in range(3)]
        return self.row(minors_ideal(along_f, 3) + minors_ideal(along_h, 3))

    @construction("O12-apolar-quartics", BuildKind.GENERATORS)
    def o12_apolar_quartics(self):
        """∧²F*⊗∧²H* -> A4 by pairing cofactors with the apolarity form on S2E*"""
        C = self.cofactors
        out: List[Polynomial] = []
        for i, k in combinations(range(3), 2):
            for j, l in combinations(range(3), 2):
                out.append(quadric_apolarity(C[i][j], C[k][l]) - quadric_apolarity(C[i][l], C[k][j]))
        return self.row(out)
