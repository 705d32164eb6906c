"""
Data models for presented abelian groups and their decompositions.
"""

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import isprime

from ..utils.errors import InputParseError, StructuralError


def canonical_digest(payload: Dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON text of a parsed input."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Presentation:
    """
    Abelian group <c_1..c_q | sum_j a_j c_j = 0 for each relation a>.

    The generators are names only; relations are integer vectors of length q.
    """
    prime: int
    generators: Tuple[str, ...]
    relations: Tuple[Tuple[int, ...], ...]
    names: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        """Validate and freeze the presentation."""
        object.__setattr__(self, "generators", tuple(str(g) for g in self.generators))
        object.__setattr__(self, "relations", tuple(tuple(int(a) for a in r) for r in self.relations))
        if not isprime(self.prime):
            raise InputParseError(f"prime must be a prime number, got {self.prime}")
        if not self.generators:
            raise InputParseError("presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise InputParseError("generator names must be distinct")
        for k, relation in enumerate(self.relations):
            if len(relation) != self.size:
                raise StructuralError(
                    f"relation {k + 1} has {len(relation)} entries for {self.size} generators"
                )
            if not any(relation):
                raise InputParseError(f"relation {k + 1} is the zero vector")

    @property
    def size(self) -> int:
        return len(self.generators)

    def is_triangular(self) -> bool:
        """
        True for the pR shape: relation j reads p*c_j = sum over later generators
        for j = 1..q. Rows past the first q are extra identifications, as the
        gluing rows of a built cycle.
        """
        if len(self.relations) < self.size:
            return False
        for j, relation in enumerate(self.relations[:self.size]):
            if abs(relation[j]) != self.prime or any(relation[:j]):
                return False
        return True

    def invertibility_certificate(self) -> FrozenSet[int]:
        """
        Variables provably invertible modulo the binomial ideal of the relations.

        A variable is invertible once some relation equates a power of it with a
        monomial in variables already known to be invertible. When every variable
        is certified, the ideal is saturated and the group is finite.
        """
        invertible = set()
        changed = True
        while changed:
            changed = False
            for relation in self.relations:
                pending = [i for i, a in enumerate(relation) if a and i not in invertible]
                if len(pending) == 1:
                    invertible.add(pending[0])
                    changed = True
        return frozenset(invertible)

    def is_saturated(self) -> bool:
        return len(self.invertibility_certificate()) == self.size

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the presentation file format."""
        result = {
            'prime': self.prime,
            'generators': list(self.generators),
            'relations': [list(r) for r in self.relations],
        }
        if self.names:
            result['names'] = dict(self.names)
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Presentation':
        """Create a presentation from parsed file contents."""
        try:
            return cls(
                prime=int(data['prime']),
                generators=tuple(data['generators']),
                relations=tuple(tuple(r) for r in data.get('relations', [])),
                names=dict(data.get('names', {})),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InputParseError(f"malformed presentation: {e}")

    def digest(self) -> str:
        return canonical_digest(self.to_dict())


@dataclass(frozen=True)
class PBasisElement:
    """b_j = c_j - sum_t a_jt c_t, of order p^r_j."""
    pivot: int
    order_exponent: int
    tail: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(sorted((int(t), int(a)) for t, a in self.tail if a)))
        if self.order_exponent < 1:
            raise StructuralError(f"basis element x{self.pivot + 1} has order exponent {self.order_exponent}")

    def coefficient(self, t: int) -> int:
        return dict(self.tail).get(t, 0)

    def as_vector(self, q: int) -> List[int]:
        """Integer combination of the generators."""
        vector = [0] * q
        vector[self.pivot] = 1
        for t, a in self.tail:
            vector[t] -= a
        return vector

    def format(self, names: Sequence[str] = ()) -> str:
        def name(i: int) -> str:
            return names[i] if names else f"c{i + 1}"

        text = name(self.pivot)
        for t, a in sorted(self.tail, key=lambda item: -item[0]):
            text += f" - {name(t)}" if a == 1 else f" - {a}*{name(t)}"
        return text

    def to_dict(self, prime: int, names: Sequence[str] = ()) -> Dict[str, Any]:
        return {
            'pivot': self.pivot + 1,
            'order': prime ** self.order_exponent,
            'tail': {str(t + 1): a for t, a in self.tail},
            'text': self.format(names),
        }


@dataclass(frozen=True)
class GroupType:
    """Type (s_0, s_1, ..., s_n): free rank followed by Ulm invariants."""
    torsion_free_rank: int = 0
    ulm: Dict[int, int] = field(default_factory=dict)
    prime: Optional[int] = None

    def __post_init__(self):
        cleaned = {int(r): int(s) for r, s in self.ulm.items() if s}
        if any(r < 1 for r in cleaned) or any(s < 0 for s in cleaned.values()):
            raise StructuralError(f"invalid Ulm invariants {self.ulm}")
        if self.torsion_free_rank < 0:
            raise StructuralError("negative torsion-free rank")
        object.__setattr__(self, "ulm", dict(sorted(cleaned.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupType):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self) -> int:
        return hash(self.as_tuple())

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], prime: Optional[int] = None,
                       torsion_free_rank: int = 0) -> 'GroupType':
        ulm: Dict[int, int] = {}
        for r in exponents:
            ulm[r] = ulm.get(r, 0) + 1
        return cls(torsion_free_rank, ulm, prime)

    @property
    def exponent(self) -> int:
        """n, the largest r with s_r >= 1 (0 for no torsion)."""
        return max(self.ulm, default=0)

    @property
    def is_trivial(self) -> bool:
        return not self.torsion_free_rank and not self.ulm

    def as_tuple(self) -> Tuple[int, ...]:
        return (self.torsion_free_rank,) + tuple(self.ulm.get(r, 0) for r in range(1, self.exponent + 1))

    def exponents(self) -> List[int]:
        """Multiset of r, ascending."""
        return [r for r, s in self.ulm.items() for _ in range(s)]

    def order(self) -> Optional[int]:
        """Order of the torsion part; needs the prime."""
        if self.prime is None:
            return None
        result = 1
        for r, s in self.ulm.items():
            result *= self.prime ** (r * s)
        return result

    def __add__(self, other: 'GroupType') -> 'GroupType':
        if self.prime and other.prime and self.prime != other.prime:
            raise StructuralError(f"cannot add types at primes {self.prime} and {other.prime}")
        ulm = dict(self.ulm)
        for r, s in other.ulm.items():
            ulm[r] = ulm.get(r, 0) + s
        return GroupType(self.torsion_free_rank + other.torsion_free_rank, ulm, self.prime or other.prime)

    def describe(self) -> str:
        """Render as Z_9 + Z_27^2 + Z^s0."""
        parts = []
        for r, s in self.ulm.items():
            base = f"Z_{self.prime ** r}" if self.prime else f"Z_(p^{r})"
            parts.append(base if s == 1 else f"{base}^{s}")
        if self.torsion_free_rank:
            parts.append("Z" if self.torsion_free_rank == 1 else f"Z^{self.torsion_free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'prime': self.prime,
            'type': list(self.as_tuple()),
            'torsion_free_rank': self.torsion_free_rank,
            'ulm': {str(r): s for r, s in self.ulm.items()},
            'description': self.describe(),
        }


@dataclass(frozen=True)
class MixedType:
    """Free rank plus one p-primary type per prime."""
    torsion_free_rank: int
    components: Dict[int, GroupType] = field(default_factory=dict)

    def at(self, prime: int) -> GroupType:
        """The p-primary type, carrying the free rank."""
        component = self.components.get(prime, GroupType(prime=prime))
        return GroupType(self.torsion_free_rank, component.ulm, prime)

    @property
    def primes(self) -> List[int]:
        return sorted(self.components)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'torsion_free_rank': self.torsion_free_rank,
            'primes': {str(p): self.components[p].to_dict() for p in self.primes},
        }
