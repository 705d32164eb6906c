import pytest

from src.models.lattice import Comparison, ExponentVector, LatticeBinomial, TermOrder
from src.services.binomials import (compare_monomials, multiplicity, normalize, orient, reduce_binomial,
                                    spair_vector)
from src.utils.errors import ReductionCapError, StructuralError


class TestExponentVector:
    def test_divides_and_lcm(self):
        a = ExponentVector((1, 0, 2))
        b = ExponentVector((2, 1, 2))
        assert a.divides(b)
        assert not b.divides(a)
        assert a.lcm(ExponentVector((0, 3, 1))).entries == (1, 3, 2)

    def test_degree_and_support(self):
        m = ExponentVector((0, 4, 0, 1))
        assert m.degree == 5
        assert m.support() == [1, 3]
        assert ExponentVector.one(3).is_one

    def test_negative_entries_rejected(self):
        with pytest.raises(StructuralError):
            ExponentVector((1, -1))

    def test_length_mismatch(self):
        with pytest.raises(StructuralError):
            ExponentVector((1, 0)).divides(ExponentVector((1, 0, 0)))

    def test_format(self):
        assert ExponentVector((3, 0, 1)).format() == "x1^3*x3"
        assert ExponentVector((0, 0)).format() == "1"


class TestLatticeBinomial:
    def test_sides_are_disjoint(self):
        b = LatticeBinomial.from_sides((5, 0, 1), (1, 2, 1))
        assert b.v == (4, -2, 0)
        assert b.positive.entries == (4, 0, 0)
        assert b.negative.entries == (0, 2, 0)

    def test_zero_sentinel(self):
        assert LatticeBinomial.zero(3).is_zero
        assert LatticeBinomial.from_sides((1, 2), (1, 2)).is_zero

    def test_to_pair(self):
        assert LatticeBinomial((2, -1)).to_pair() == [[2, 0], [0, 1]]


class TestTermOrder:
    def test_identity_order_makes_last_variable_largest(self):
        order = TermOrder.identity(3)
        assert compare_monomials(order, (0, 0, 1), (5, 5, 0)) is Comparison.GREATER

    def test_reverse_order(self):
        order = TermOrder.reverse(3)
        assert compare_monomials(order, (1, 0, 0), (0, 9, 9)) is Comparison.GREATER

    def test_from_precedence(self):
        order = TermOrder.from_precedence([2, 0, 1])
        assert order.ranks == (2, 3, 1)
        assert order.precedence == (2, 0, 1)
        assert compare_monomials(order, (0, 1, 0), (1, 0, 0)) is Comparison.GREATER

    def test_equal(self):
        assert compare_monomials(TermOrder.identity(2), (1, 2), (1, 2)) is Comparison.EQUAL

    def test_not_a_permutation(self):
        with pytest.raises(StructuralError):
            TermOrder((1, 1, 2))


class TestBinomialArithmetic:
    def test_normalize_strips_common_factor(self):
        # 5c1 - c8 - 4c5 - 2c6 - 3c7 = 0
        b = normalize((5, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 4, 2, 3, 1))
        assert b.v == (5, 0, 0, 0, -4, -2, -3, -1)

    def test_normalize_length_mismatch(self):
        with pytest.raises(StructuralError):
            normalize((1, 0), (1,))

    def test_orient(self):
        order = TermOrder.identity(2)
        b = orient(order, LatticeBinomial((3, -1)))
        assert b.v == (-3, 1)
        assert b.positive.entries == (0, 1)

    def test_orient_zero(self):
        with pytest.raises(StructuralError):
            orient(TermOrder.identity(2), LatticeBinomial.zero(2))

    def test_spair_vector(self):
        order = TermOrder.identity(2)
        g1 = orient(order, LatticeBinomial((2, 0)))
        g2 = orient(order, LatticeBinomial((-1, 1)))
        s = spair_vector(g1, g2, order)
        assert s.v == (-3, 1)
        assert spair_vector(g2, g1, order) == s

    def test_multiplicity(self):
        assert multiplicity((2, 0, 1), (7, 3, 5)) == 3
        assert multiplicity((2, 0, 1), (1, 3, 5)) == 0
        assert multiplicity((0, 0, 0), (1, 1, 1)) == 0

    def test_reduce_to_zero(self):
        order = TermOrder.identity(2)
        G = [orient(order, LatticeBinomial((4, 0))), orient(order, LatticeBinomial((-2, 1)))]
        assert reduce_binomial(LatticeBinomial((0, 2)), G, order).is_zero

    def test_reduce_to_standard_form(self):
        order = TermOrder.identity(2)
        G = [orient(order, LatticeBinomial((5, 0)))]
        r = reduce_binomial(LatticeBinomial((12, -1)), G, order)
        # lead x2, trail x1^12 reduced to x1^2
        assert r.v == (-2, 1)

    def test_single_step_matches_maximal_multiplicity(self):
        order = TermOrder.identity(3)
        G = [orient(order, LatticeBinomial((0, 0, 3))), orient(order, LatticeBinomial((-2, 1, 0)))]
        b = LatticeBinomial((0, 7, 8))
        assert reduce_binomial(b, G, order) == LatticeBinomial((14, 0, 2))
        assert reduce_binomial(b, G, order, single_step=True) == LatticeBinomial((14, 0, 2))

    def test_step_cap(self):
        order = TermOrder.identity(2)
        G = [orient(order, LatticeBinomial((-1, 1)))]
        with pytest.raises(ReductionCapError):
            reduce_binomial(LatticeBinomial((0, 50)), G, order, step_cap=3, single_step=True)
