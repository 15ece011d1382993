"""
Tests for based tensor spaces and equivariant maps
"""
import pytest

from orbitres.core.exceptions import InputError
from orbitres.equivariant.symplectic import symplectic_kit
from orbitres.equivariant.tensors import (
    Chain,
    TensorSpace,
    compose,
    contract,
    exterior_diagonal,
    exterior_mult,
    ext,
    hodge_star,
    identity,
    sym,
    symmetric_mult,
    trace_map,
    vec,
)
from orbitres.services.acceptance_service import tensor_identities


class TestSpaces:
    def test_dimensions(self):
        dims = {"E": 4, "F": 3}
        assert TensorSpace([ext("E", 2)], dims).dim == 6
        assert TensorSpace([sym("F", 2), vec("E", True)], dims).dim == 24
        assert TensorSpace.unit(dims).dim == 1

    def test_basis_order_is_lexicographic(self):
        space = TensorSpace([ext("E", 2)], {"E": 3})
        assert space.basis == [((0, 1),), ((0, 2),), ((1, 2),)]

    def test_exterior_power_above_dimension(self):
        with pytest.raises(InputError):
            TensorSpace([ext("E", 3)], {"E": 2})


class TestMaps:
    def test_exterior_multiplication_is_onto(self):
        m = exterior_mult(3, 1, 1)
        assert m.rank() == 3

    def test_symmetric_multiplication_is_onto(self):
        m = symmetric_mult(2, 1, 1)
        assert m.rank() == 3

    def test_exterior_multiplication_is_alternating(self):
        # Arrange
        m = exterior_mult(3, 1, 1)

        # Act
        forward = m.image(((0,), (1,)))
        backward = m.image(((1,), (0,)))

        # Assert
        assert forward == {((0, 1),): 1}
        assert backward == {((0, 1),): -1}
        assert m.image(((2,), (2,))) == {}

    def test_composition_checks_junctions(self):
        with pytest.raises(InputError):
            compose([exterior_mult(3, 1, 1), exterior_mult(3, 1, 1)])

    def test_contraction_needs_dual_pair(self):
        space = TensorSpace([vec("E"), vec("E")], {"E": 2})
        with pytest.raises(InputError):
            contract(space, 1, 2)

    def test_chain_builds_the_same_map(self):
        # Arrange
        space = TensorSpace([ext("E", 2)], {"E": 4})

        # Act
        built = Chain(space).diagonal(1, 1, 1).multiply(("ext", (1, 2))).build()

        # Assert
        assert built == identity(space).scaled(2)


class TestIdentities:
    def test_comultiplication_then_multiplication(self):
        m = compose([exterior_diagonal(4, 1, 2), exterior_mult(4, 1, 2)])
        assert m == identity(m.domain).scaled(3)

    def test_star_squared(self):
        star = compose([hodge_star(4, 1), hodge_star(4, 3, "backward")])
        assert star == identity(star.domain).scaled(-1)

    def test_trace_contracts_to_dimension(self):
        tr = trace_map(5, 2, "ext")
        closed = compose([tr, contract(tr.codomain, 1, 2)])
        assert closed == identity(closed.domain).scaled(10)

    @pytest.mark.parametrize("section", ["standard", "rescaled"])
    def test_section_of_projection(self, section):
        kit = symplectic_kit(6, section)
        assert compose([kit.psi, kit.phi]) == identity(kit.psi.domain)

    def test_full_identity_suite(self):
        assert tensor_identities() == []

    def test_unknown_section(self):
        with pytest.raises(InputError):
            symplectic_kit(6, "other")
