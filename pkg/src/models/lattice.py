"""
Data models for monomials, lattice binomials and term orders.
All values are immutable and hold arbitrary-precision Python integers.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Sequence, Tuple

from ..utils.errors import StructuralError


class Comparison(Enum):
    """Outcome of a monomial comparison."""
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _check_length(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise StructuralError(f"length mismatch: {len(a)} vs {len(b)}")


@dataclass(frozen=True)
class ExponentVector:
    """Exponent vector of a monomial x^a."""
    entries: Tuple[int, ...]

    def __post_init__(self):
        """Validate and freeze the entries."""
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if any(e < 0 for e in self.entries):
            raise StructuralError(f"negative exponent in {self.entries}")

    @classmethod
    def one(cls, q: int) -> "ExponentVector":
        """The monomial 1 in q variables."""
        return cls((0,) * q)

    @classmethod
    def power(cls, q: int, j: int, e: int) -> "ExponentVector":
        """The pure power x_j^e."""
        entries = [0] * q
        entries[j] = e
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def degree(self) -> int:
        return sum(self.entries)

    @property
    def is_one(self) -> bool:
        return not any(self.entries)

    def support(self) -> List[int]:
        return [i for i, e in enumerate(self.entries) if e]

    def divides(self, other: "ExponentVector") -> bool:
        """True iff x^self divides x^other."""
        _check_length(self.entries, other.entries)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def lcm(self, other: "ExponentVector") -> "ExponentVector":
        _check_length(self.entries, other.entries)
        return ExponentVector(tuple(max(a, b) for a, b in zip(self.entries, other.entries)))

    def scaled(self, k: int) -> "ExponentVector":
        return ExponentVector(tuple(k * e for e in self.entries))

    def format(self, names: Sequence[str] = ()) -> str:
        """Render as x1^3*x4 style text."""
        factors = []
        for i, e in enumerate(self.entries):
            if e:
                name = names[i] if names else f"x{i + 1}"
                factors.append(name if e == 1 else f"{name}^{e}")
        return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class LatticeBinomial:
    """
    Binomial x^{v+} - x^{v-} stored by its signed vector v.

    Disjoint supports hold by construction; v = 0 is the zero sentinel.
    """
    v: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(e) for e in self.v))

    @classmethod
    def zero(cls, q: int) -> "LatticeBinomial":
        return cls((0,) * q)

    @classmethod
    def from_sides(cls, positive: Sequence[int], negative: Sequence[int]) -> "LatticeBinomial":
        """Binomial x^positive - x^negative, common factors stripped."""
        _check_length(positive, negative)
        return cls(tuple(a - b for a, b in zip(positive, negative)))

    def __len__(self) -> int:
        return len(self.v)

    def __neg__(self) -> "LatticeBinomial":
        return LatticeBinomial(tuple(-e for e in self.v))

    @property
    def is_zero(self) -> bool:
        return not any(self.v)

    @property
    def positive(self) -> ExponentVector:
        """v+, the exponents of the first monomial."""
        return ExponentVector(tuple(e if e > 0 else 0 for e in self.v))

    @property
    def negative(self) -> ExponentVector:
        """v-, the exponents of the second monomial."""
        return ExponentVector(tuple(-e if e < 0 else 0 for e in self.v))

    def format(self, names: Sequence[str] = ()) -> str:
        if self.is_zero:
            return "0"
        return f"{self.positive.format(names)} - {self.negative.format(names)}"

    def to_pair(self) -> List[List[int]]:
        """Report form: [v+, v-]."""
        return [list(self.positive.entries), list(self.negative.entries)]


@dataclass(frozen=True)
class TermOrder:
    """
    Lexicographic order under a variable permutation.

    ranks[i] is the precedence rank of variable i (1 = smallest, q = largest).
    """
    ranks: Tuple[int, ...]
    scan: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise StructuralError(f"ranks {ranks} are not a permutation of 1..{len(ranks)}")
        object.__setattr__(self, "ranks", ranks)
        # variables from the largest rank downward
        object.__setattr__(self, "scan", tuple(sorted(range(len(ranks)), key=lambda i: -ranks[i])))

    @classmethod
    def identity(cls, q: int) -> "TermOrder":
        """x1 < x2 < ... < xq."""
        return cls(tuple(range(1, q + 1)))

    @classmethod
    def reverse(cls, q: int) -> "TermOrder":
        """xq < ... < x1."""
        return cls(tuple(range(q, 0, -1)))

    @classmethod
    def from_precedence(cls, precedence: Iterable[int]) -> "TermOrder":
        """Build from variable indices listed from smallest to largest."""
        precedence = list(precedence)
        ranks = [0] * len(precedence)
        for rank, var in enumerate(precedence, start=1):
            if not 0 <= var < len(precedence):
                raise StructuralError(f"variable index {var} out of range")
            ranks[var] = rank
        return cls(tuple(ranks))

    @property
    def size(self) -> int:
        return len(self.ranks)

    @property
    def precedence(self) -> Tuple[int, ...]:
        """Variables from smallest to largest."""
        return tuple(reversed(self.scan))

    def key(self, exponents: Sequence[int]) -> Tuple[int, ...]:
        """Sort key: tuples compare like monomials under this order."""
        return tuple(exponents[i] for i in self.scan)
