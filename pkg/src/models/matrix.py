"""
Integer matrices and Smith normal form results.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from sympy import factorint

from ..utils.errors import StructuralError


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix of arbitrary-precision integers, row-major."""
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.rows)
        if not rows or not rows[0]:
            raise StructuralError("matrix dimensions must be at least 1x1")
        if len({len(row) for row in rows}) != 1:
            raise StructuralError("matrix rows have different lengths")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise StructuralError(f"cannot multiply {self.shape} by {other.shape}")
        columns = list(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in columns)
            for row in self.rows
        ))


@dataclass(frozen=True)
class SNFResult:
    """U * A * V = D with D diagonal, d_i | d_(i+1), U and V unimodular."""
    diagonal: Tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    source: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def diagonal_matrix(self) -> IntMatrix:
        rows, cols = self.source.shape
        return IntMatrix(tuple(
            tuple(self.diagonal[i] if i == j and i < len(self.diagonal) else 0 for j in range(cols))
            for i in range(rows)
        ))

    def invariant_factors(self) -> List[int]:
        """Diagonal entries greater than 1."""
        return [d for d in self.diagonal if d > 1]

    def elementary_divisors(self) -> Dict[int, List[int]]:
        """Prime-power divisors by prime, each list ascending."""
        divisors: Dict[int, List[int]] = {}
        for d in self.invariant_factors():
            for prime, power in factorint(d).items():
                divisors.setdefault(int(prime), []).append(int(power))
        return {p: sorted(exps) for p, exps in sorted(divisors.items())}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'diagonal': list(self.diagonal),
            'invariant_factors': self.invariant_factors(),
            'elementary_divisors': {
                str(p): [p ** r for r in exps] for p, exps in self.elementary_divisors().items()
            },
            'rank': self.rank,
        }


def matrix_from_relations(relations: Sequence[Sequence[int]]) -> IntMatrix:
    """Relation matrix with one row per relation."""
    return IntMatrix(tuple(tuple(r) for r in relations))
