"""
Tests for graded polynomial rings, evaluation, parsing and polarization
"""
import numpy as np
import pytest
from sympy import QQ

from orbitres.algebra.polyring import (
    Point,
    apply_polarization,
    evaluate,
    is_homogeneous,
    jacobian,
    normalize_content,
    polarize_span,
    total_degree,
)
from orbitres.catalog import case_ring
from orbitres.core.exceptions import InputError


class TestParsing:
    def test_parse_matches_arithmetic(self, xyz):
        # Arrange
        x, y, z = xyz.gens

        # Act
        p = xyz.parse("x*y - 2*z^2 + 1/3*x**2")

        # Assert
        assert p == x * y - 2 * z ** 2 + QQ(1, 3) * x ** 2

    def test_zero_text_is_zero(self, xyz):
        assert xyz.parse("0") == xyz.zero
        assert xyz.parse("") == xyz.zero

    def test_unknown_variable_is_rejected(self, xyz):
        with pytest.raises(InputError):
            xyz.parse("x*w")

    def test_names_with_separator(self):
        ring = case_ring("E6a3")

        # Act
        p = ring.parse("x1;12*x1;34 - x1;12^2")

        # Assert
        assert total_degree(p) == 2
        assert p == ring.var("x1;12") * ring.var("x1;34") - ring.var("x1;12") ** 2


class TestEvaluation:
    def test_exact_rational_value(self, xyz):
        # Arrange
        p = xyz.parse("x^2*y - 3*z")
        pt = xyz.point({"x": "1/2", "y": 4, "z": 1})

        # Act
        value = evaluate(p, pt)

        # Assert
        assert value == QQ(-2)

    def test_point_needs_every_coordinate(self, xyz, abcd):
        p = abcd.parse("a*b")
        with pytest.raises(InputError):
            evaluate(p, xyz.point({"x": 1}))

    def test_jacobian_rank_at_smooth_point(self, xyz):
        # Arrange
        gens = [xyz.parse("x*y - z^2")]

        # Act
        J = jacobian(gens)

        # Assert
        assert J.shape == (1, 3)
        assert J.rank_at(xyz.point({"x": 1, "y": 1, "z": 1})) == 1
        assert J.rank_at(xyz.point({})) == 0


SEEDS = [20170605, 7, 1234]


def random_polynomial(ring, rng, terms=4, degree=3):
    out = ring.zero
    for _ in range(terms):
        exponents = tuple(int(e) for e in rng.integers(0, degree + 1, size=ring.ngens))
        coeff = QQ(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
        out += ring.monomial(exponents, coeff)
    return out


def random_point(ring, rng):
    return Point(ring, tuple(QQ(int(a), int(b)) for a, b in zip(rng.integers(-5, 6, size=ring.ngens),
                                                                  rng.integers(1, 4, size=ring.ngens))))


class TestRingProperties:
    @pytest.mark.parametrize("seed", SEEDS)
    def test_ring_axioms(self, xyz, seed):
        # Arrange
        rng = np.random.default_rng(seed)
        p, q, r = (random_polynomial(xyz, rng) for _ in range(3))

        # Assert
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + xyz.zero == p and p * xyz.one == p
        assert p - p == xyz.zero

    @pytest.mark.parametrize("seed", SEEDS)
    def test_evaluation_is_a_homomorphism(self, xyz, seed):
        # Arrange
        rng = np.random.default_rng(seed)
        p, q = random_polynomial(xyz, rng), random_polynomial(xyz, rng)
        pt = random_point(xyz, rng)

        # Act
        at_sum, at_product = evaluate(p + q, pt), evaluate(p * q, pt)

        # Assert
        assert at_sum == evaluate(p, pt) + evaluate(q, pt)
        assert at_product == evaluate(p, pt) * evaluate(q, pt)
        assert evaluate(xyz.one, pt) == 1
        assert evaluate(xyz.zero, pt) == 0

    @pytest.mark.parametrize("seed", SEEDS)
    def test_homogeneous_products_add_degrees(self, seed):
        # Arrange
        ring = case_ring("E6a4")
        rng = np.random.default_rng(seed)
        p = ring.monomial(tuple(int(e) for e in rng.multinomial(2, [1 / ring.ngens] * ring.ngens)))
        q = ring.monomial(tuple(int(e) for e in rng.multinomial(3, [1 / ring.ngens] * ring.ngens)))

        # Act
        product = p * q + q * p

        # Assert
        assert is_homogeneous(product, ring)
        assert total_degree(product) == 5


class TestHelpers:
    def test_total_degree_and_homogeneity(self, xyz):
        assert total_degree(xyz.parse("x^3 + y")) == 3
        assert total_degree(xyz.zero) == -1
        assert is_homogeneous(xyz.parse("x*y + z^2"))
        assert not is_homogeneous(xyz.parse("x*y + z"))

    def test_normalize_content(self, xyz):
        # Arrange
        p = xyz.parse("-2/3*x + 4/9*y")

        # Act
        q = normalize_content(p)

        # Assert
        assert q == xyz.parse("3*x - 2*y")


class TestPolarization:
    def test_euler_identity_on_binary_cubics(self):
        # Arrange
        ring = case_ring("G2a2")
        x111, x112 = ring.var("x111"), ring.var("x112")

        # Act / Assert
        assert apply_polarization(x111, "E", 1, 1) == 3 * x111
        assert apply_polarization(x112, "E", 1, 1) == 2 * x112
        assert apply_polarization(x111 * x112, "E", 2, 2) == x111 * x112

    def test_raising_operator(self):
        ring = case_ring("G2a2")

        # Act
        image = apply_polarization(ring.var("x111"), "E", 1, 2)

        # Assert
        assert image == 3 * ring.var("x112")

    def test_derivation_rule(self):
        # Arrange
        ring = case_ring("G2a2")
        f, g = ring.var("x111"), ring.var("x122")

        # Act
        lhs = apply_polarization(f * g, "E", 2, 1)
        rhs = apply_polarization(f, "E", 2, 1) * g + f * apply_polarization(g, "E", 2, 1)

        # Assert
        assert lhs == rhs

    def test_span_of_highest_weight_vector(self):
        # Arrange
        ring = case_ring("G2a2")

        # Act
        span = polarize_span([ring.var("x111")], ["E"])

        # Assert
        assert len(span) == 4

    def test_index_out_of_range(self):
        ring = case_ring("G2a2")
        with pytest.raises(InputError):
            apply_polarization(ring.var("x111"), "E", 1, 3)
