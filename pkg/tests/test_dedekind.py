import pytest

from src.config.settings import DedekindConfig
from src.models.dedekind import (INFINITE, BlockSpec, ConnectorHeights, CycleKind, ModuleSpec, RingKind,
                                 RingModel, SigmaMode, smallest_period)
from src.models.presentation import GroupType
from src.services.dedekind_service import DedekindService, connector_positions, end_positions, reduced_blocks
from src.services.module_builders import (PresentationBuilder, build_block_presentation,
                                          check_f_irreducible_power, ring_model, sigma_decomposition,
                                          verify_ring_identity)
from src.utils.errors import RingIdentityError, SpecError, StabilizationError
from src.utils.validators import ModuleSpecValidator

PULLBACK_3 = RingModel(RingKind.PULLBACK, 3)


def zcp(p):
    return ring_model(RingKind.ZCP, p)


def deleted(ring, *blocks, glue=()):
    return ModuleSpec(ring, CycleKind.DELETED, tuple(BlockSpec(*b) for b in blocks), glue=glue)


class TestRingIdentity:
    def test_sigma_small_primes(self):
        assert sigma_decomposition(2) == (-1,)
        assert sigma_decomposition(3) == (2, 1)

    def test_sigma_five(self):
        sigma = sigma_decomposition(5)
        assert len(sigma) == 4
        verify_ring_identity(5, sigma)

    def test_wrong_sigma_rejected(self):
        with pytest.raises(RingIdentityError):
            verify_ring_identity(3, (1,))

    def test_ring_model(self):
        assert zcp(3).to_dict() == {'kind': 'zcp', 'p': 3, 'sigma': [2, 1]}
        assert ring_model(RingKind.PULLBACK, 5).sigma == ()

    def test_ring_prime_checked(self):
        with pytest.raises(SpecError):
            RingModel(RingKind.ZCP, 4)


class TestBlockPresentations:
    def test_pullback_block(self):
        pres = build_block_presentation(PULLBACK_3, BlockSpec(2, 2))
        assert pres.generators == ("a", "p1a", "p2a")
        assert pres.relations == ((3, -1, -1), (0, 3, 0), (0, 0, 3))

    def test_zc3_block_constant_sigma(self, pbasis_service):
        pres = build_block_presentation(zcp(3), BlockSpec(3, 3), SigmaMode.CONSTANT)
        assert pres.generators == ("a", "p1a", "p2a", "p1^2a", "p2^2a")
        # p*a = p1a + 2*p2^2a; p*p2a = 2*p2^3a is truncated
        assert pres.relations[0] == (3, -1, 0, 0, -2)
        assert pres.relations[2] == (0, 0, 3, 0, 0)
        assert pbasis_service.compute_structure(pres).group_type.as_tuple() == (0, 2, 0, 1)

    def test_zc3_block_full_sigma_uses_higher_terms(self):
        pres = build_block_presentation(zcp(3), BlockSpec(2, 5))
        # p*a = p1a + 2*p2^2a + p2^3a
        names = pres.generators
        row = dict(zip(names, pres.relations[0]))
        assert row == {"a": 3, "p1a": -1, "p2a": 0, "p2^2a": -2, "p2^3a": -1, "p2^4a": 0}

    def test_block_relations_are_triangular(self):
        pres = build_block_presentation(zcp(5), BlockSpec(4, 6))
        assert pres.is_triangular()

    def test_multi_block_names(self):
        builder = PresentationBuilder(PULLBACK_3, (BlockSpec(3, 2), BlockSpec(2, 2)))
        assert builder.names == ["a1", "a2", "p1a1", "p2a1", "p1a2", "p2a2", "p1^2a1"]
        assert builder.socle(0, 1) == 6
        assert builder.socle(1, 2) == 5

    def test_socle_needs_length_two(self):
        builder = PresentationBuilder(PULLBACK_3, (BlockSpec(1, 2),))
        with pytest.raises(SpecError):
            builder.socle(0, 1)

    def test_infinite_block_rejected(self):
        with pytest.raises(SpecError):
            PresentationBuilder(PULLBACK_3, (BlockSpec(2, INFINITE),))


class TestCyclePresentations:
    def test_block_cycle(self, dedekind_service, zc3_block_cycle_spec, zc3_block_cycle):
        assert dedekind_service.build(zc3_block_cycle_spec) == zc3_block_cycle

    def test_deleted_cycle(self, dedekind_service, pullback_cycle_spec, pullback_cycle):
        assert dedekind_service.build(pullback_cycle_spec) == pullback_cycle

    def test_default_glue(self, dedekind_service):
        pres = dedekind_service.build(deleted(PULLBACK_3, (2, 2), (2, 2)))
        # p1a2 = -p2a1, i.e. p1a2 - 2*p2a1 = 0 mod 3
        assert pres.relations[-1] == (0, 0, 0, -2, 1, 0)

    def test_built_cycles_are_certified(self, dedekind_service, zc3_block_cycle_spec, pullback_cycle_spec):
        specs = [zc3_block_cycle_spec, pullback_cycle_spec, deleted(PULLBACK_3, (2, 2), (2, 2)),
                 deleted(zcp(3), (5, 3), (3, 2))]
        for spec in specs:
            pres = dedekind_service.build(spec)
            assert pres.is_triangular()
            assert pres.is_saturated()

    def test_irreducible_check(self):
        irreducible = ModuleSpec(PULLBACK_3, CycleKind.BLOCK, (BlockSpec(2, 2),) * 2, f=(1, 0))
        split = ModuleSpec(PULLBACK_3, CycleKind.BLOCK, (BlockSpec(2, 2),) * 2, f=(2, 0))
        assert check_f_irreducible_power(irreducible)
        assert not check_f_irreducible_power(split)


class TestModuleSpec:
    def test_period(self):
        blocks = tuple(BlockSpec(*b) for b in [(3, 3), (2, 2), (3, 3), (2, 2)])
        assert smallest_period(blocks) == 2
        spec = ModuleSpec(PULLBACK_3, CycleKind.BLOCK, blocks, f=(1, 0))
        assert spec.l == 2

    @pytest.mark.parametrize("kwargs", [
        dict(cycle=CycleKind.DELETED, blocks=((3, 3), (3, 3)), glue=(3,)),
        dict(cycle=CycleKind.DELETED, blocks=((3, 3),), f=(1,)),
        dict(cycle=CycleKind.DELETED, blocks=((3, INFINITE), (3, 3))),
        dict(cycle=CycleKind.DELETED, blocks=((3, 1), (3, 3))),
        dict(cycle=CycleKind.BLOCK, blocks=((3, INFINITE),), f=(1,)),
        dict(cycle=CycleKind.BLOCK, blocks=((3, 3),), f=(1, 1)),
        dict(cycle=CycleKind.BLOCK, blocks=((3, 3),), f=(3,)),
    ])
    def test_invalid_specs(self, kwargs):
        blocks = tuple(BlockSpec(*b) for b in kwargs.pop('blocks'))
        with pytest.raises(SpecError):
            ModuleSpec(PULLBACK_3, blocks=blocks, **kwargs)

    def test_block_lengths_positive(self):
        with pytest.raises(SpecError):
            BlockSpec(0, 2)

    def test_to_dict(self, pullback_cycle_spec):
        assert pullback_cycle_spec.to_dict() == {
            'ring': {'kind': 'pullback', 'p': 3},
            'cycle': 'deleted',
            'blocks': [{'d1': 3, 'd2': 3}, {'d1': 3, 'd2': 3}],
            'glue': [-4],
        }

    def test_validator_reports_errors(self):
        spec, error = ModuleSpecValidator.validate({'ring': {'kind': 'zcq', 'p': 3}, 'blocks': [{'d1': 2, 'd2': 2}]})
        assert spec is None and "kind" in error
        spec, error = ModuleSpecValidator.validate({'ring': {'kind': 'zcp', 'p': 3}, 'blocks': [{'d1': 'x', 'd2': 2}]})
        assert spec is None and error
        spec, error = ModuleSpecValidator.validate({'ring': {'kind': 'zcp', 'p': 3}, 'blocks': []})
        assert spec is None and "blocks" in error

    def test_validator_reads_infinity(self):
        spec, error = ModuleSpecValidator.validate({'ring': {'kind': 'zcp', 'p': 3},
                                                    'blocks': [{'d1': 2, 'd2': 'inf'}]})
        assert error is None
        assert spec.blocks[0].d2 == INFINITE
        assert not spec.is_finite


class TestConnectors:
    def test_positions(self, pullback_cycle_spec, zc3_block_cycle_spec):
        assert connector_positions(pullback_cycle_spec) == [("d1", (0, 2))]
        assert end_positions(pullback_cycle_spec) == [("d0", (0, 1)), ("d2", (1, 2))]
        assert connector_positions(zc3_block_cycle_spec) == [("d1", (0, 2))]
        assert end_positions(zc3_block_cycle_spec) == []

    def test_reduced_blocks(self, pullback_cycle_spec, zc3_block_cycle_spec):
        assert reduced_blocks(pullback_cycle_spec) == (BlockSpec(3, 2), BlockSpec(2, 3))
        assert reduced_blocks(zc3_block_cycle_spec) == (BlockSpec(3, 3),)

    def test_heights(self, dedekind_service, pbasis_service, pullback_cycle_spec):
        structure = pbasis_service.compute_structure(dedekind_service.build(pullback_cycle_spec))
        heights = dedekind_service.connector_heights(pullback_cycle_spec, structure)
        assert heights.sequential == (1,)
        assert heights.ambient == (1,)
        assert heights.ends == {'d0': 1, 'd2': 1}
        assert heights.tally() == {2: 1}
        assert heights.correction() == [0, -1, 1, 0]

    def test_correction_padding(self):
        heights = ConnectorHeights(("d1",), (3,), (3,), exponent=4)
        assert heights.correction() == [0, 0, 0, -1, 1]


class TestTypeFormula:
    def test_block_cycle(self, dedekind_service, zc3_block_cycle_spec):
        result = dedekind_service.formula(zc3_block_cycle_spec)
        assert [t.as_tuple() for t in result.block_types] == [(0, 2, 0, 1)]
        assert result.heights.sequential == (3,)
        assert result.formula.as_tuple() == (0, 2, 0, 0, 1)
        assert result.agreement

    def test_deleted_cycle(self, dedekind_service, pullback_cycle_spec):
        result = dedekind_service.formula(pullback_cycle_spec)
        assert [t.as_tuple() for t in result.block_types] == [(0, 1, 0, 1), (0, 1, 0, 1)]
        assert result.formula == GroupType(0, {1: 1, 2: 1, 3: 2})
        assert result.direct == result.formula
        payload = result.to_dict()
        assert payload['agreement'] is True
        assert payload['connectors']['tally'] == {'2': 1}

    def test_type_via_formula(self, dedekind_service, pullback_cycle_spec):
        assert dedekind_service.type_via_formula(pullback_cycle_spec).as_tuple() == (0, 1, 1, 2)

    def test_infinite_spec_rejected(self, dedekind_service):
        spec = deleted(zcp(3), (2, INFINITE))
        with pytest.raises(SpecError):
            dedekind_service.formula(spec)


class TestInfiniteLengths:
    def test_zc3_arm_two(self, dedekind_service):
        finite, resolution = dedekind_service.resolve_infinite_lengths(deleted(zcp(3), (2, INFINITE)))
        assert resolution.reclassified == 2
        assert resolution.sentinel == 4
        assert resolution.group_type == GroupType(2, {1: 1}, 3)
        assert finite.blocks == (BlockSpec(2, 4),)

    def test_pullback_arm_two(self, dedekind_service):
        spec = deleted(PULLBACK_3, (3, INFINITE))
        assert dedekind_service.module_type(spec) == GroupType(1, {2: 1}, 3)

    def test_both_ends_free(self, dedekind_service):
        _, resolution = dedekind_service.resolve_infinite_lengths(deleted(zcp(3), (INFINITE, INFINITE)))
        assert resolution.free_basis == ("a", "p2a", "p2^2a")
        assert resolution.free_rank == 3
        _, resolution = dedekind_service.resolve_infinite_lengths(deleted(PULLBACK_3, (INFINITE, INFINITE)))
        assert resolution.free_basis == ("a", "p1a")

    def test_single_block(self, dedekind_service):
        _, resolution = dedekind_service.resolve_infinite_lengths(BlockSpec(2, INFINITE), zcp(3))
        assert resolution.group_type == GroupType(2, {1: 1}, 3)
        with pytest.raises(SpecError):
            dedekind_service.resolve_infinite_lengths(BlockSpec(2, INFINITE))

    @pytest.mark.slow
    def test_two_blocks_with_mixed_infinite_arms(self, dedekind_service):
        # an infinite p1-end grows by the whole step, the p2-ends by one
        _, resolution = dedekind_service.resolve_infinite_lengths(
            deleted(zcp(3), (INFINITE, 2), (2, INFINITE)))
        assert resolution.reclassified == 3
        assert resolution.group_type == GroupType(3, {1: 1}, 3)
        sentinel, exponents = resolution.history[-1]
        assert exponents[0] == sentinel

    @pytest.mark.slow
    def test_two_blocks_with_one_infinite_arm(self, dedekind_service):
        _, resolution = dedekind_service.resolve_infinite_lengths(deleted(zcp(3), (INFINITE, 3), (3, 2)))
        assert resolution.reclassified == 1
        assert resolution.group_type.torsion_free_rank == 1

    def test_finite_spec_passes_through(self, dedekind_service, pullback_cycle_spec):
        finite, resolution = dedekind_service.resolve_infinite_lengths(pullback_cycle_spec)
        assert finite is pullback_cycle_spec
        assert resolution.sentinel is None

    def test_stabilization_cap(self, pbasis_service, monkeypatch):
        service = DedekindService(DedekindConfig(sentinel_max_iterations=2), pbasis_service)
        # nothing reclassified: the growing summands count as torsion and never settle
        monkeypatch.setattr(service, "_reclassified", lambda spec, ends: 0)
        with pytest.raises(StabilizationError):
            service.resolve_infinite_lengths(deleted(zcp(3), (2, INFINITE)))

    def test_to_dict(self, dedekind_service):
        _, resolution = dedekind_service.resolve_infinite_lengths(deleted(zcp(3), (2, INFINITE)))
        payload = resolution.to_dict()
        assert payload['torsion_free_rank'] == 2
        assert payload['history'][0] == {'sentinel': 4, 'exponents': [2, 2, 1]}
