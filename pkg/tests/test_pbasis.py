import math

import pytest

from src.config.settings import EngineConfig
from src.models.lattice import LatticeBinomial, TermOrder
from src.models.dedekind import BlockSpec, CycleKind, ModuleSpec, RingKind
from src.models.presentation import GroupType, PBasisElement, Presentation
from src.services.module_builders import build_cycle_presentation, ring_model
from src.services.pbasis_service import (PBasisService, p_height, p_valuation, relations_to_binomials,
                                         shape_violation, ulm_type)
from src.services.snf_service import SNFOracle
from src.utils.errors import (NonFiniteGroupError, ShapeViolationError, StructuralError)


def presentation(prime, relations):
    q = len(relations[0])
    return Presentation(prime, tuple(f"c{i + 1}" for i in range(q)), tuple(map(tuple, relations)))


class TestBinomialsFromRelations:
    def test_sign_split(self, zc3_block):
        binomials = relations_to_binomials(zc3_block)
        # 3a = p1a + 2 p2^2a
        assert binomials[0] == LatticeBinomial((3, 0, -1, -2, 0))
        assert len(binomials) == 5

    def test_layer_normalization(self):
        pres = presentation(3, [[-4, -1]])
        (b,) = relations_to_binomials(pres, orders=[3, 3])
        # pivot is the last unit: c2 = -4*c1 = 2*c1 mod 3
        assert b == LatticeBinomial((-2, 1))

    def test_mixed_layers_untouched(self):
        pres = presentation(3, [[3, -1]])
        (b,) = relations_to_binomials(pres, orders=[9, 3])
        assert b == LatticeBinomial((3, -1))

    def test_pipeline_generators(self, pbasis_service):
        pres = presentation(3, [[3, 0], [0, 3], [-4, -1]])
        generators = pbasis_service.pipeline_generators(pres, [3, 3])
        assert LatticeBinomial((-2, 1)) in generators
        assert LatticeBinomial((-4, -1)) not in generators
        assert generators[-2:] == [LatticeBinomial((3, 0)), LatticeBinomial((0, 3))]

    def test_normalized_relations_give_the_same_basis(self, engine, pbasis_service, pullback_cycle):
        binomials, _ = pbasis_service.ideal_generators(pullback_cycle)
        orders = pbasis_service.generator_orders(pullback_cycle, binomials)
        order = TermOrder.identity(pullback_cycle.size)
        plain = engine.buchberger_reduced(binomials, order)
        normalized = engine.buchberger_reduced(pbasis_service.pipeline_generators(pullback_cycle, orders), order)
        assert normalized.as_vector_set() == plain.as_vector_set()

    def test_p_valuation(self):
        assert p_valuation(54, 3) == 3
        assert p_valuation(7, 3) == 0


class TestWorkedStructures:
    def test_five_group(self, pbasis_service, p5_group):
        structure = pbasis_service.compute_structure(p5_group)
        assert structure.group_type.as_tuple() == (0, 2, 3)
        assert structure.basis_orders() == [25, 25, 25, 5, 5]
        assert structure.order == TermOrder.identity(8)

    def test_zc3_block(self, pbasis_service, zc3_block):
        structure = pbasis_service.compute_structure(zc3_block)
        assert list(structure.orders) == [27, 9, 9, 3, 3]
        assert [b.pivot for b in structure.basis] == [0, 1]
        assert all(not b.tail for b in structure.basis)
        assert structure.group_type.as_tuple() == (0, 0, 1, 1)

    def test_zc3_block_cycle(self, pbasis_service, zc3_block_cycle):
        structure = pbasis_service.compute_structure(zc3_block_cycle)
        assert list(structure.orders) == [81, 27, 9, 9, 3, 3, 3]
        texts = [b.format() for b in structure.basis]
        assert texts == ["c1", "c2 - 3*c1", "c3 - 9*c1"]
        assert structure.group_type.as_tuple() == (0, 2, 0, 0, 1)

    def test_pullback_cycle(self, pbasis_service, pullback_cycle):
        structure = pbasis_service.compute_structure(pullback_cycle)
        assert [b.pivot for b in structure.basis] == [0, 1, 2, 4]
        assert structure.basis[-1].format() == "c5 - c3 - 6*c1"
        assert structure.group_type.as_tuple() == (0, 1, 1, 2)

    def test_agrees_with_oracle(self, pbasis_service, p5_group, zc3_block, zc3_block_cycle, pullback_cycle):
        oracle = SNFOracle()
        for pres in (p5_group, zc3_block, zc3_block_cycle, pullback_cycle):
            assert pbasis_service.compute_structure(pres).group_type == oracle.group_type(pres)

    def test_basis_order_product_is_group_order(self, engine, pbasis_service, pullback_cycle):
        structure = pbasis_service.compute_structure(pullback_cycle)
        assert math.prod(structure.basis_orders()) == engine.standard_monomial_count(structure.groebner)

    def test_trivial_group(self, pbasis_service):
        structure = pbasis_service.compute_structure(presentation(2, [[1]]))
        assert structure.basis == ()
        assert structure.group_type.is_trivial

    def test_to_dict(self, pbasis_service, zc3_block_cycle):
        payload = pbasis_service.compute_structure(zc3_block_cycle).to_dict(include_gb=True)
        assert payload['generator_orders']['a'] == 81
        assert payload['basis'][1] == {'pivot': 2, 'order': 3, 'tail': {'1': 3}, 'text': "p1a - 3*a"}
        assert payload['group_type']['type'] == [0, 2, 0, 0, 1]
        assert len(payload['groebner_basis']['elements']) == 7


class TestOrderSearch:
    def test_initial_precedence(self):
        assert PBasisService.initial_precedence([3, 9, 1, 9]) == [1, 3, 0, 2]

    def test_forced_identity(self, pbasis_service, zc3_block_cycle):
        structure = pbasis_service.compute_structure(zc3_block_cycle, precedence=list(range(7)))
        assert structure.group_type.as_tuple() == (0, 2, 0, 0, 1)

    def test_forced_order_rejected(self, pbasis_service, zc3_block_cycle):
        with pytest.raises(ShapeViolationError):
            pbasis_service.compute_structure(zc3_block_cycle, precedence=list(range(6, -1, -1)))

    def test_forced_order_wrong_length(self, pbasis_service, zc3_block_cycle):
        with pytest.raises(StructuralError):
            pbasis_service.compute_structure(zc3_block_cycle, precedence=[0, 1])

    def test_shape_violation_reported(self, pbasis_service, zc3_block_cycle):
        binomials, _ = pbasis_service.ideal_generators(zc3_block_cycle)
        orders = pbasis_service.generator_orders(zc3_block_cycle, binomials)
        G = pbasis_service.engine.buchberger_reduced(binomials, TermOrder.reverse(7))
        assert shape_violation(G, orders, 3) is not None

    def test_enumerated_orders_agree(self, pbasis_service, zc3_block):
        found = list(pbasis_service.enumerate_shape_permutations(zc3_block))
        assert found
        for order, G in found:
            assert shape_violation(G, [27, 9, 9, 3, 3], 3) is None

    def test_splitting_precedence(self, pbasis_service, zc3_block_cycle, pullback_cycle):
        for pres in (zc3_block_cycle, pullback_cycle):
            binomials, _ = pbasis_service.ideal_generators(pres)
            orders = pbasis_service.generator_orders(pres, binomials)
            precedence = pbasis_service.splitting_precedence(pres, binomials, orders)
            assert sorted(precedence) == list(range(pres.size))
            G = pbasis_service.engine.buchberger_reduced(binomials, TermOrder.from_precedence(precedence))
            assert shape_violation(G, orders, 3) is None
        # quotient orders 81, 3, 3 then 1 for the rest
        binomials, _ = pbasis_service.ideal_generators(zc3_block_cycle)
        orders = pbasis_service.generator_orders(zc3_block_cycle, binomials)
        assert pbasis_service.splitting_precedence(zc3_block_cycle, binomials, orders) == list(range(7))

    @pytest.mark.slow
    @pytest.mark.parametrize("first", [5, 6])
    def test_deleted_cycle_with_cross_order_violation(self, pbasis_service, first):
        spec = ModuleSpec(ring_model(RingKind.ZCP, 3), CycleKind.DELETED, (BlockSpec(first, 3), BlockSpec(3, 2)))
        pres = build_cycle_presentation(spec)
        assert pres.size >= 10
        structure = pbasis_service.compute_structure(pres)
        assert structure.group_type == SNFOracle().group_type(pres)
        assert shape_violation(structure.groebner, structure.orders, 3) is None

    @pytest.mark.slow
    def test_deleted_cycle_type(self, pbasis_service):
        spec = ModuleSpec(ring_model(RingKind.ZCP, 3), CycleKind.DELETED, (BlockSpec(5, 3), BlockSpec(3, 2)))
        structure = pbasis_service.compute_structure(build_cycle_presentation(spec))
        assert structure.group_type.as_tuple() == (0, 2, 0, 1, 0, 1)


class TestSaturation:
    def test_certificate_for_triangular_input(self, pullback_cycle):
        assert pullback_cycle.is_triangular()
        assert pullback_cycle.is_saturated()

    def test_gluing_rows_keep_the_certificate(self, pullback_cycle):
        assert len(pullback_cycle.relations) > pullback_cycle.size
        assert pullback_cycle.is_triangular()

    def test_not_triangular(self):
        assert not presentation(3, [[0, 3], [3, 0]]).is_triangular()
        assert not Presentation(3, ("c1", "c2"), ((3, 0),)).is_triangular()
        assert not presentation(3, [[3, 0], [1, 3]]).is_triangular()

    def test_uncertified_presentation_is_saturated(self, pbasis_service):
        # Z_3 + Z_9, but no relation isolates a single generator
        pres = presentation(3, [[3, 3], [3, -6]])
        assert not pres.is_saturated()
        binomials, saturated = pbasis_service.ideal_generators(pres)
        assert not saturated
        assert binomials[-2:] == [LatticeBinomial((9, 0)), LatticeBinomial((0, 9))]

        structure = pbasis_service.compute_structure(pres)
        assert not structure.saturated
        assert structure.group_type == GroupType(0, {1: 1, 2: 1})

    def test_free_part_rejected(self, pbasis_service):
        with pytest.raises(NonFiniteGroupError):
            pbasis_service.compute_structure(presentation(3, [[3, 3]]))

    def test_foreign_torsion_rejected(self, pbasis_service):
        with pytest.raises(NonFiniteGroupError):
            pbasis_service.compute_structure(presentation(3, [[2, 2], [2, -2]]))


class TestHeights:
    @pytest.fixture
    def block(self, pbasis_service, zc3_block):
        return pbasis_service.compute_structure(zc3_block)

    def test_height_of_multiple(self, pbasis_service, block):
        assert pbasis_service.height([9, 0, 0, 0, 0], block) == 2

    def test_height_of_zero(self, pbasis_service, block):
        assert pbasis_service.height([27, 9, 0, 0, 0], block) == math.inf

    def test_height_reduces_modulo_orders(self, pbasis_service, block):
        # 9 p2a vanishes, leaving 3a
        assert pbasis_service.height([3, 9, 0, 0, 0], block) == 1

    def test_coordinates(self, pbasis_service, block):
        # p1a = 3a - 2 p2^2a = 3a - 6 p2a
        assert pbasis_service.coordinates([0, 0, 1, 0, 0], block) == [3, 3]
        assert pbasis_service.height([0, 0, 1, 0, 0], block) == 1

    def test_back_substitution(self, pbasis_service, zc3_block_cycle):
        structure = pbasis_service.compute_structure(zc3_block_cycle)
        # p2^2a = p1a - 3a is itself the second basis element
        assert pbasis_service.coordinates([0, 0, 0, 0, 1, 0, 0], structure) == [0, 1, 0]
        assert pbasis_service.height([0, 0, 0, 0, 0, 0, 1], structure) == 3

    def test_multiplying_by_p_raises_height(self, pbasis_service, block):
        elements = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
                    [0, 0, 0, 0, 1], [1, 2, 0, 1, 0], [3, 0, 1, 0, 2]]
        for x in elements:
            h = pbasis_service.height(x, block)
            assert pbasis_service.height([3 * e for e in x], block) >= h + 1

    def test_wrong_length(self, pbasis_service, block):
        with pytest.raises(StructuralError):
            pbasis_service.coordinates([1, 0], block)

    def test_p_height_function(self):
        basis = [PBasisElement(0, 3), PBasisElement(1, 2)]
        assert p_height([9, 0], basis, 3) == 2
        assert p_height([3, 9], basis, 3) == 1
        assert p_height([0, 0], basis, 3) == math.inf


class TestUlmType:
    def test_counts_by_order_exponent(self):
        basis = [PBasisElement(0, 4), PBasisElement(1, 1), PBasisElement(2, 1)]
        assert ulm_type(basis, 3).as_tuple() == (0, 2, 0, 0, 1)

    def test_custom_config_is_used(self, zc3_block):
        service = PBasisService(EngineConfig(exhaustive_permutation_cap=1))
        assert service.compute_structure(zc3_block).group_type.as_tuple() == (0, 0, 1, 1)
