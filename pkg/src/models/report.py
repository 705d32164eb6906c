"""
Pipeline results and the machine-readable reports built from them.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .groebner import GroebnerBasis
from .lattice import TermOrder
from .matrix import SNFResult
from .presentation import GroupType, MixedType, PBasisElement, Presentation


@dataclass(frozen=True)
class StructureResult:
    """Everything the p-basis pipeline computes for one presentation."""
    presentation: Presentation
    order: TermOrder
    groebner: GroebnerBasis
    orders: Tuple[int, ...]
    basis: Tuple[PBasisElement, ...]
    group_type: GroupType
    saturated: bool = True

    @property
    def prime(self) -> int:
        return self.presentation.prime

    def basis_orders(self) -> List[int]:
        return [self.prime ** b.order_exponent for b in self.basis]

    def to_dict(self, include_gb: bool = False) -> Dict[str, Any]:
        names = self.presentation.generators
        result = {
            'precedence': [names[i] for i in self.order.precedence],
            'generator_orders': {names[i]: o for i, o in enumerate(self.orders)},
            'basis': [b.to_dict(self.prime, names) for b in self.basis],
            'group_type': self.group_type.to_dict(),
        }
        if include_gb:
            result['groebner_basis'] = self.groebner.to_dict()
        return result


@dataclass
class StructureReport:
    """Report written by the pbasis, snf and verify commands."""
    command: str
    input_digest: str
    structure: Optional[StructureResult] = None
    snf: Optional[SNFResult] = None
    snf_type: Optional[MixedType] = None
    include_gb: bool = False
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def agreement(self) -> Optional[bool]:
        """Pipeline type equals the oracle type; None unless both ran."""
        if self.structure is None or self.snf_type is None:
            return None
        prime = self.structure.prime
        oracle = self.snf_type
        if any(p != prime for p in oracle.primes):
            return False
        return self.structure.group_type == oracle.at(prime)

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            'command': self.command,
            'input_digest': self.input_digest,
        }
        if self.structure is not None:
            result['pbasis'] = self.structure.to_dict(self.include_gb)
        if self.snf_type is not None:
            result['snf'] = dict(self.snf.to_dict() if self.snf else {'diagonal': [], 'rank': 0},
                                 group_type=self.snf_type.to_dict())
        if self.agreement is not None:
            result['agreement'] = self.agreement
        result.update(self.extra)
        return result
