"""
Types of cycle modules: infinite lengths by sentinel runs, connector
heights, and the type formula over reduced building blocks.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ..config.settings import DedekindConfig
from ..models.dedekind import (INFINITE, BlockSpec, ConnectorHeights, CycleKind, InfiniteResolution,
                               ModuleSpec, RingKind, RingModel)
from ..models.presentation import GroupType, Presentation
from ..models.report import StructureResult
from ..utils.errors import ConnectorError, SpecError, StabilizationError
from ..utils.logging import performance_logger, pipeline_logger, timing_decorator
from .module_builders import PresentationBuilder, build_block_presentation, build_cycle_presentation, ring_model
from .pbasis_service import PBasisService

# (block index, arm) of a socle element p_arm^(d-1) a_i
Position = Tuple[int, int]


@dataclass(frozen=True)
class FormulaResult:
    """Both readings of the type of a finite cycle module."""
    formula: GroupType
    direct: GroupType
    block_types: Tuple[GroupType, ...]
    reduced_blocks: Tuple[BlockSpec, ...]
    heights: ConnectorHeights

    @property
    def agreement(self) -> bool:
        return self.formula == self.direct

    def to_dict(self) -> Dict:
        return {
            'formula': self.formula.to_dict(),
            'direct': self.direct.to_dict(),
            'reduced_blocks': [b.to_dict() for b in self.reduced_blocks],
            'block_types': [list(t.as_tuple()) for t in self.block_types],
            'connectors': self.heights.to_dict(),
            'agreement': self.agreement,
        }


def connector_positions(spec: ModuleSpec) -> List[Tuple[str, Position]]:
    """Connectors d_1.. in tally order: right socle copies of glued blocks."""
    count = spec.m - 1 if spec.cycle is CycleKind.DELETED else spec.m
    return [(f"d{i + 1}", (i, 2)) for i in range(count)]


def end_positions(spec: ModuleSpec) -> List[Tuple[str, Position]]:
    """d_0 and d_m of a deleted cycle, where finite and of length at least 2."""
    if spec.cycle is not CycleKind.DELETED:
        return []
    ends = []
    first, last = spec.blocks[0], spec.blocks[-1]
    if first.d1 != INFINITE and first.d1 >= 2:
        ends.append(("d0", (0, 1)))
    if last.d2 != INFINITE and last.d2 >= 2:
        ends.append((f"d{spec.m}", (spec.m - 1, 2)))
    return ends


def reduced_blocks(spec: ModuleSpec) -> Tuple[BlockSpec, ...]:
    """Blocks with every glued length lowered by one."""
    blocks = []
    for i, block in enumerate(spec.blocks):
        d1, d2 = block.d1, block.d2
        if spec.cycle is CycleKind.BLOCK or i > 0:
            d1 -= 1
        if spec.cycle is CycleKind.BLOCK or i < spec.m - 1:
            d2 -= 1
        blocks.append(BlockSpec(d1, d2))
    return tuple(blocks)


class DedekindService:
    """Type computations for building blocks and cycles."""

    def __init__(self, config: Optional[DedekindConfig] = None,
                 pbasis: Optional[PBasisService] = None):
        self.config = config or DedekindConfig()
        self.pbasis = pbasis or PBasisService()

    def build(self, spec: ModuleSpec) -> Presentation:
        return build_cycle_presentation(spec, self.config.check_irreducible)

    # -- Infinite lengths ----------------------------------------------------

    @staticmethod
    def _infinite_ends(spec: ModuleSpec) -> List[Position]:
        ends = []
        for i, block in enumerate(spec.blocks):
            if block.d1 == INFINITE:
                ends.append((i, 1))
            if block.d2 == INFINITE:
                ends.append((i, 2))
        return ends

    @staticmethod
    def _reclassified(spec: ModuleSpec, ends: List[Position]) -> int:
        if spec.ring.kind is RingKind.PULLBACK:
            return len(ends)
        return sum(spec.prime - 1 if arm == 2 else 1 for _, arm in ends)

    def _sentinel_spec(self, spec: ModuleSpec, sentinel: int) -> ModuleSpec:
        return spec.with_blocks(tuple(
            BlockSpec(sentinel if b.d1 == INFINITE else b.d1, sentinel if b.d2 == INFINITE else b.d2)
            for b in spec.blocks
        ))

    def _exponents(self, spec: ModuleSpec) -> List[int]:
        structure = self.pbasis.compute_structure(self.build(spec))
        return sorted((b.order_exponent for b in structure.basis), reverse=True)

    @timing_decorator(performance_logger)
    def resolve_infinite_lengths(self, spec: Union[ModuleSpec, BlockSpec],
                                 ring: Optional[RingModel] = None
                                 ) -> Tuple[Optional[ModuleSpec], InfiniteResolution]:
        """
        Replace infinite lengths by a sentinel L large enough that the torsion
        part no longer depends on it.

        A lone BlockSpec needs its ring and is treated as a one-block deleted
        cycle. L starts past the largest finite length and grows by p-1 when an
        infinite p2-arm of ZC_p is present (else by 1). L is accepted when
        the torsion at L and at the next sentinel agree and each of the k
        reclassified summands grew. Their growth differs by arm: an infinite
        p1-end gains the whole step, a p2-end of ZC_p about one.
        """
        if isinstance(spec, BlockSpec):
            if ring is None:
                raise SpecError("a single block needs its ring")
            spec = ModuleSpec(ring, CycleKind.DELETED, (spec,))
        ends = self._infinite_ends(spec)
        p = spec.prime
        if not ends:
            return spec, InfiniteResolution(None, 0, GroupType(prime=p))

        if spec.m == 1 and len(ends) == 2:
            if spec.ring.kind is RingKind.ZCP:
                basis = ("a",) + tuple("p2a" if k == 1 else f"p2^{k}a" for k in range(1, p))
            else:
                basis = ("a", "p1a")
            return None, InfiniteResolution(None, len(basis), GroupType(len(basis), {}, p), free_basis=basis)

        k = self._reclassified(spec, ends)
        zcp_p2_end = spec.ring.kind is RingKind.ZCP and any(arm == 2 for _, arm in ends)
        step = p - 1 if zcp_p2_end else 1
        finite = [int(length) for b in spec.blocks for length in (b.d1, b.d2) if length != INFINITE]
        sentinel = max(finite, default=1) + self.config.sentinel_padding

        history = []
        current = self._exponents(self._sentinel_spec(spec, sentinel))
        history.append((sentinel, tuple(current)))
        for iteration in range(1, self.config.sentinel_max_iterations + 1):
            following = self._exponents(self._sentinel_spec(spec, sentinel + step))
            history.append((sentinel + step, tuple(following)))
            big, torsion = current[:k], current[k:]
            next_big, next_torsion = following[:k], following[k:]
            stable = (
                len(big) == k
                and torsion == next_torsion
                and all(n > e for n, e in zip(next_big, big))
            )
            pipeline_logger.log_stabilization(sentinel, str(torsion), stable)
            if stable:
                group_type = GroupType.from_exponents(torsion, prime=p, torsion_free_rank=k)
                resolution = InfiniteResolution(sentinel, k, group_type, iteration, (), tuple(history))
                return self._sentinel_spec(spec, sentinel), resolution
            sentinel += step
            current = following

        raise StabilizationError(
            f"torsion part did not stabilize within {self.config.sentinel_max_iterations} sentinel lengths"
        )

    def module_type(self, spec: ModuleSpec) -> GroupType:
        """Type of the module, infinite lengths included."""
        if spec.is_finite:
            return self.pbasis.compute_structure(self.build(spec)).group_type
        _, resolution = self.resolve_infinite_lengths(spec)
        return resolution.group_type

    # -- Connector heights -----------------------------------------------------

    def _socle_indices(self, spec: ModuleSpec, positions: List[Tuple[str, Position]]) -> List[int]:
        builder = PresentationBuilder(ring_model(spec.ring.kind, spec.prime), spec.blocks, spec.sigma_mode)
        return [builder.socle(block, arm) for _, (block, arm) in positions]

    def connector_heights(self, spec: ModuleSpec, structure: StructureResult) -> ConnectorHeights:
        """
        p-heights of the connectors, in M and in the successive quotients
        M / <d_1, ..., d_(k-1)>; the tally uses the latter.
        """
        if not spec.is_finite:
            raise SpecError("connector heights need a finite spec")
        presentation = structure.presentation
        q = presentation.size
        connectors = connector_positions(spec)
        indices = self._socle_indices(spec, connectors)

        def unit(j: int) -> List[int]:
            vector = [0] * q
            vector[j] = 1
            return vector

        ambient, sequential = [], []
        quotient = structure
        for k, ((label, _), j) in enumerate(zip(connectors, indices)):
            h = self.pbasis.height(unit(j), structure)
            if h == math.inf:
                raise ConnectorError(f"connector {label} is zero in the module")
            ambient.append(int(h))
            if k:
                killed = tuple(tuple(unit(i)) for i in indices[:k])
                quotient = self.pbasis.compute_structure(Presentation(
                    presentation.prime, presentation.generators, presentation.relations + killed))
            h = self.pbasis.height(unit(j), quotient)
            if h == math.inf:
                raise ConnectorError(f"connector {label} vanishes modulo the previous connectors")
            sequential.append(int(h))

        ends = {}
        for (label, _), j in zip(end_positions(spec), self._socle_indices(spec, end_positions(spec))):
            h = self.pbasis.height(unit(j), structure)
            if h == math.inf:
                raise ConnectorError(f"end element {label} is zero in the module")
            ends[label] = int(h)

        return ConnectorHeights(
            labels=tuple(label for label, _ in connectors),
            sequential=tuple(sequential),
            ambient=tuple(ambient),
            ends=ends,
            exponent=structure.group_type.exponent,
        )

    # -- Type formula ------------------------------------------------------------

    @timing_decorator(performance_logger)
    def formula(self, spec: ModuleSpec) -> FormulaResult:
        """Sum of the reduced block types corrected by the connector tally, next to the direct type."""
        if not spec.is_finite:
            raise SpecError("the type formula needs a finite spec")
        ring = ring_model(spec.ring.kind, spec.prime)
        blocks = reduced_blocks(spec)
        block_types = tuple(
            self.pbasis.compute_structure(build_block_presentation(ring, b, spec.sigma_mode)).group_type
            for b in blocks
        )
        structure = self.pbasis.compute_structure(self.build(spec))
        heights = self.connector_heights(spec, structure)

        total = GroupType(prime=spec.prime)
        for t in block_types:
            total = total + t
        ulm = dict(total.ulm)
        for alpha, c in enumerate(heights.correction()):
            if alpha:
                ulm[alpha] = ulm.get(alpha, 0) + c
        if any(s < 0 for s in ulm.values()):
            raise ConnectorError(f"connector tally {heights.tally()} exceeds the block invariants {total.ulm}")
        formula = GroupType(total.torsion_free_rank, ulm, spec.prime)
        return FormulaResult(formula, structure.group_type, block_types, blocks, heights)

    def type_via_formula(self, spec: ModuleSpec) -> GroupType:
        return self.formula(spec).formula
