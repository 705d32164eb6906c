"""
Smith normal form over the integers, used as the independent oracle for
group types and as the source of free ranks and group exponents.
"""

import threading
from typing import Dict, List, Optional, Union

from sympy import Matrix

from ..models.matrix import IntMatrix, SNFResult, matrix_from_relations
from ..models.presentation import GroupType, MixedType, Presentation
from ..utils.errors import AbstError, StructuralError
from ..utils.logging import app_logger, performance_logger, timing_decorator


def integer_determinant(matrix: IntMatrix) -> int:
    """Exact determinant by sympy's fraction-free Bareiss elimination."""
    n, m = matrix.shape
    if n != m:
        raise StructuralError(f"determinant of a non-square {n}x{m} matrix")
    return int(Matrix(matrix.to_lists()).det(method="bareiss"))


def _swap_rows(a: List[List[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_columns(a: List[List[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: List[List[int]], target: int, source: int, factor: int) -> None:
    """row[target] += factor * row[source]"""
    a[target] = [x + factor * y for x, y in zip(a[target], a[source])]


def _add_column(a: List[List[int]], target: int, source: int, factor: int) -> None:
    for row in a:
        row[target] += factor * row[source]


def _select_pivot(a: List[List[int]], t: int):
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            value = abs(a[i][j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return best


@timing_decorator(performance_logger)
def smith_normal_form(matrix: IntMatrix) -> SNFResult:
    """
    Smith normal form with recorded unimodular transforms.

    The pivot is the smallest nonzero absolute value of the remaining
    submatrix, ties broken by row-major position. The result is certified
    (U*A*V = D and det U, det V = +-1) before it is returned.
    """
    rows, cols = matrix.shape
    a = matrix.to_lists()
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()

    for t in range(min(rows, cols)):
        while True:
            pivot = _select_pivot(a, t)
            if pivot is None:
                break
            _, i, j = pivot
            if i != t:
                _swap_rows(a, t, i)
                _swap_rows(u, t, i)
            if j != t:
                _swap_columns(a, t, j)
                _swap_columns(v, t, j)

            for i in range(t + 1, rows):
                factor = a[i][t] // a[t][t]
                if factor:
                    _add_row(a, i, t, -factor)
                    _add_row(u, i, t, -factor)
            for j in range(t + 1, cols):
                factor = a[t][j] // a[t][t]
                if factor:
                    _add_column(a, j, t, -factor)
                    _add_column(v, j, t, -factor)

            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if offender is not None:
                _add_row(a, t, offender, 1)
                _add_row(u, t, offender, 1)
                continue
            break

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diagonal = tuple(a[i][i] for i in range(min(rows, cols)))
    result = SNFResult(diagonal, IntMatrix(tuple(map(tuple, u))), IntMatrix(tuple(map(tuple, v))), matrix)
    _certify(result)
    return result


def _certify(result: SNFResult) -> None:
    if result.left @ result.source @ result.right != result.diagonal_matrix():
        raise AbstError("Smith normal form certification failed: U*A*V != D")
    if abs(integer_determinant(result.left)) != 1 or abs(integer_determinant(result.right)) != 1:
        raise AbstError("Smith normal form certification failed: transform is not unimodular")
    nonzero = [d for d in result.diagonal if d]
    if any(b % a for a, b in zip(nonzero, nonzero[1:])):
        raise AbstError(f"Smith normal form certification failed: divisor chain {result.diagonal}")


def _mixed_type(result: Optional[SNFResult], q: int) -> MixedType:
    if result is None:
        return MixedType(q, {})
    components = {
        p: GroupType.from_exponents(exps, prime=p)
        for p, exps in result.elementary_divisors().items()
    }
    return MixedType(q - result.rank, components)


def type_from_relation_matrix(matrix: IntMatrix, q: int,
                              prime: Optional[int] = None) -> Union[GroupType, MixedType]:
    """Type of Z^q modulo the row space of the matrix; one prime's type if requested."""
    if matrix.shape[1] != q:
        raise StructuralError(f"relation matrix has {matrix.shape[1]} columns for {q} generators")
    mixed = _mixed_type(smith_normal_form(matrix), q)
    return mixed.at(prime) if prime is not None else mixed


def type_of_presentation(presentation: Presentation, prime: Optional[int] = None) -> Union[GroupType, MixedType]:
    """Like type_from_relation_matrix; an empty relation list gives a free group."""
    if not presentation.relations:
        mixed = MixedType(presentation.size, {})
    else:
        mixed = type_from_relation_matrix(matrix_from_relations(presentation.relations), presentation.size)
    return mixed.at(prime) if prime is not None else mixed


class SNFOracle:
    """Caches Smith normal forms per presentation."""

    def __init__(self):
        self._cache: Dict[str, Optional[SNFResult]] = {}
        self._cache_lock = threading.Lock()

    def snf(self, presentation: Presentation) -> Optional[SNFResult]:
        """SNF of the relation matrix, None for an empty relation list."""
        key = presentation.digest()
        with self._cache_lock:
            if key in self._cache:
                return self._cache[key]
        result = None
        if presentation.relations:
            result = smith_normal_form(matrix_from_relations(presentation.relations))
        with self._cache_lock:
            self._cache[key] = result
        app_logger.debug(f"SNF diagonal {result.diagonal if result else ()} for {presentation.size} generators")
        return result

    def mixed_type(self, presentation: Presentation) -> MixedType:
        return _mixed_type(self.snf(presentation), presentation.size)

    def group_type(self, presentation: Presentation) -> GroupType:
        """Type at the presentation's own prime."""
        return self.mixed_type(presentation).at(presentation.prime)

    def exponent(self, presentation: Presentation) -> int:
        """Exponent of the torsion part (1 for none)."""
        result = self.snf(presentation)
        factors = result.invariant_factors() if result else []
        return factors[-1] if factors else 1
