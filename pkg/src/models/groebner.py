"""
Data model for reduced Groebner bases of lattice ideals.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .lattice import ExponentVector, LatticeBinomial, TermOrder


@dataclass(frozen=True)
class GroebnerBasis:
    """Oriented binomial basis under a permuted lexicographic order."""
    elements: Tuple[LatticeBinomial, ...]
    order: TermOrder
    reduced: bool = True

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leads(self) -> List[ExponentVector]:
        return [g.positive for g in self.elements]

    def pure_power(self, g: LatticeBinomial) -> Optional[Tuple[int, int]]:
        """(variable, exponent) when the leading monomial is a pure power."""
        support = g.positive.support()
        if len(support) != 1:
            return None
        return support[0], g.positive[support[0]]

    def by_pivot(self) -> Dict[int, LatticeBinomial]:
        """Elements keyed by the variable of a pure-power leading monomial."""
        result = {}
        for g in self.elements:
            pivot = self.pure_power(g)
            if pivot is not None:
                result[pivot[0]] = g
        return result

    def as_vector_set(self) -> frozenset:
        """Orientation-independent comparison key."""
        return frozenset(g.v for g in self.elements)

    def format(self, names: Sequence[str] = ()) -> List[str]:
        return [g.format(names) for g in self.elements]

    def to_dict(self, names: Sequence[str] = ()) -> Dict[str, Any]:
        """Convert to a JSON-serializable listing."""
        return {
            'precedence': [int(i) + 1 for i in self.order.precedence],
            'elements': [g.to_pair() for g in self.elements],
            'text': self.format(names),
        }
