"""
Data models for modules over the group ring ZC_p and the pullback
{Z -> Z_p <- Z}: rings, building blocks, cycle specs and connector data.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from sympy import isprime

from ..utils.errors import InputParseError, SpecError
from .presentation import GroupType

INFINITE = math.inf

Length = Union[int, float]


class RingKind(Enum):
    """The two Dedekind-like rings."""
    ZCP = "zcp"
    PULLBACK = "pullback"


class CycleKind(Enum):
    DELETED = "deleted"
    BLOCK = "block"


class SigmaMode(Enum):
    """How much of the identity p = p1 + p2^(p-1) sigma(p2) the builders use."""
    FULL = "full"
    CONSTANT = "constant"


@dataclass(frozen=True)
class RingModel:
    """
    ZC_p with p1 = 1 + x + ... + x^(p-1) and p2 = x - 1, or the pullback
    with p1 = (p, 0) and p2 = (0, p).

    For ZC_p, sigma holds the coefficients of sigma(p2) in powers of p2.
    """
    kind: RingKind
    prime: int
    sigma: Tuple[int, ...] = ()

    def __post_init__(self):
        if not isprime(self.prime):
            raise SpecError(f"ring prime must be prime, got {self.prime}")
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))

    def to_dict(self) -> Dict[str, Any]:
        result = {'kind': self.kind.value, 'p': self.prime}
        if self.kind is RingKind.ZCP:
            result['sigma'] = list(self.sigma)
        return result


def _parse_length(value: Any) -> Length:
    if isinstance(value, str) and value.lower() in ("inf", "infinity", "oo"):
        return INFINITE
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputParseError(f"block length must be a positive integer or \"inf\", got {value!r}")
    return value


def _format_length(value: Length) -> Union[int, str]:
    return "inf" if value == INFINITE else int(value)


@dataclass(frozen=True)
class BlockSpec:
    """Basic building block with lengths d1 = d(1,i) and d2 = d(2,i)."""
    d1: Length
    d2: Length

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1:
            raise SpecError(f"block lengths must be at least 1, got ({self.d1}, {self.d2})")

    @property
    def is_finite(self) -> bool:
        return self.d1 != INFINITE and self.d2 != INFINITE

    def to_dict(self) -> Dict[str, Any]:
        return {'d1': _format_length(self.d1), 'd2': _format_length(self.d2)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'BlockSpec':
        return cls(_parse_length(data['d1']), _parse_length(data['d2']))


def smallest_period(blocks: Tuple[BlockSpec, ...]) -> int:
    m = len(blocks)
    for period in range(1, m + 1):
        if m % period == 0 and all(blocks[i] == blocks[i % period] for i in range(m)):
            return period
    return m


@dataclass(frozen=True)
class ModuleSpec:
    """
    Deleted or block cycle of m building blocks.

    glue[i] is the unit c with p1^(d(1,i+2)-1) a_(i+2) = c * p2^(d(2,i+1)-1) a_(i+1);
    f holds lambda_0 .. lambda_(l-1) of the monic f(z) of a block cycle.
    """
    ring: RingModel
    cycle: CycleKind
    blocks: Tuple[BlockSpec, ...]
    f: Tuple[int, ...] = ()
    glue: Tuple[int, ...] = ()
    sigma_mode: SigmaMode = SigmaMode.FULL
    period: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "f", tuple(int(c) for c in self.f))
        if not self.blocks:
            raise SpecError("a cycle needs at least one block")
        glue = tuple(int(c) for c in self.glue) or (-1,) * (self.m - 1)
        object.__setattr__(self, "glue", glue)
        object.__setattr__(self, "period", smallest_period(self.blocks))
        self._validate()

    def _validate(self) -> None:
        p, m = self.ring.prime, self.m
        if len(self.glue) != m - 1:
            raise SpecError(f"expected {m - 1} glue coefficients, got {len(self.glue)}")
        for k, c in enumerate(self.glue, start=1):
            if c % p == 0:
                raise SpecError(f"glue coefficient {c} of connector {k} is not a unit mod {p}")
        if self.cycle is CycleKind.DELETED:
            if self.f:
                raise SpecError("a deleted cycle takes no f(z)")
            for i, block in enumerate(self.blocks, start=1):
                if i < m and block.d2 == INFINITE:
                    raise SpecError(f"d(2,{i}) must be finite in a deleted cycle")
                if i > 1 and block.d1 == INFINITE:
                    raise SpecError(f"d(1,{i}) must be finite in a deleted cycle")
            glued = [(2, i) for i in range(1, m)] + [(1, i) for i in range(2, m + 1)]
        else:
            if not all(block.is_finite for block in self.blocks):
                raise SpecError("all lengths of a block cycle must be finite")
            if len(self.f) != self.l:
                raise SpecError(f"f(z) needs l = {self.l} coefficients lambda_0..lambda_(l-1), got {len(self.f)}")
            if self.f[0] % p == 0:
                raise SpecError(f"lambda_0 = {self.f[0]} must be a unit mod {p}")
            glued = [(j, i) for i in range(1, m + 1) for j in (1, 2)]
        for j, i in glued:
            block = self.blocks[i - 1]
            length = block.d1 if j == 1 else block.d2
            if length < 2:
                raise SpecError(f"glued position d({j},{i}) must have length at least 2")

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def l(self) -> int:
        """m / smallest period."""
        return self.m // self.period

    @property
    def prime(self) -> int:
        return self.ring.prime

    @property
    def is_finite(self) -> bool:
        return all(block.is_finite for block in self.blocks)

    def with_blocks(self, blocks: Tuple[BlockSpec, ...]) -> 'ModuleSpec':
        """Same ring, cycle and coefficients over other blocks."""
        return ModuleSpec(self.ring, self.cycle, tuple(blocks), self.f, self.glue, self.sigma_mode)

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            'ring': {'kind': self.ring.kind.value, 'p': self.prime},
            'cycle': self.cycle.value,
            'blocks': [b.to_dict() for b in self.blocks],
        }
        if self.f:
            result['f'] = list(self.f)
        if self.m > 1:
            result['glue'] = list(self.glue)
        if self.sigma_mode is not SigmaMode.FULL:
            result['sigma'] = self.sigma_mode.value
        return result


@dataclass(frozen=True)
class ConnectorHeights:
    """p-heights of the connectors d_i and the tally l_alpha."""
    labels: Tuple[str, ...]
    sequential: Tuple[int, ...]
    ambient: Tuple[int, ...]
    ends: Dict[str, int] = field(default_factory=dict)
    exponent: int = 0

    def tally(self) -> Dict[int, int]:
        """l_alpha = number of connectors of height alpha - 1."""
        result: Dict[int, int] = {}
        for h in self.sequential:
            result[h + 1] = result.get(h + 1, 0) + 1
        return dict(sorted(result.items()))

    def correction(self) -> List[int]:
        """(0, l_1 - l_2, ..., l_(n-1) - l_n, l_n) padded to length n + 1."""
        tally = self.tally()
        n = max([self.exponent] + list(tally))
        return [0] + [tally.get(a, 0) - tally.get(a + 1, 0) for a in range(1, n + 1)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'connectors': [
                {'label': label, 'height': s, 'ambient_height': a}
                for label, s, a in zip(self.labels, self.sequential, self.ambient)
            ],
            'ends': dict(self.ends),
            'tally': {str(a): n for a, n in self.tally().items()},
        }


@dataclass(frozen=True)
class InfiniteResolution:
    """
    Sentinel bookkeeping for a spec with infinite lengths.

    reclassified counts the largest summands of the sentinel run that stand
    for infinite-order elements; they make up the torsion-free rank.
    """
    sentinel: Optional[int]
    reclassified: int
    group_type: GroupType
    iterations: int = 0
    free_basis: Tuple[str, ...] = ()
    history: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()

    @property
    def free_rank(self) -> int:
        return self.group_type.torsion_free_rank

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sentinel': self.sentinel,
            'reclassified': self.reclassified,
            'torsion_free_rank': self.free_rank,
            'group_type': self.group_type.to_dict(),
            'iterations': self.iterations,
            'free_basis': list(self.free_basis),
            'history': [{'sentinel': s, 'exponents': list(t)} for s, t in self.history],
        }
