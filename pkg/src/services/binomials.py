"""
Elementary binomial arithmetic: normalization, comparison, orientation,
S-vectors and reduction. Pure functions over immutable models.
"""

from typing import List, Sequence, Tuple, Union

from ..models.lattice import Comparison, ExponentVector, LatticeBinomial, TermOrder
from ..utils.errors import ReductionCapError, StructuralError

Monomial = Union[ExponentVector, Sequence[int]]

DEFAULT_REDUCTION_STEP_CAP = 1_000_000


def _entries(m: Monomial) -> Tuple[int, ...]:
    return m.entries if isinstance(m, ExponentVector) else tuple(m)


def _check_same_length(*vectors: Sequence[int]) -> None:
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise StructuralError(f"length mismatch: {sorted(lengths)}")


def normalize(u: Monomial, w: Monomial) -> LatticeBinomial:
    """x^u - x^w with the common monomial factor stripped."""
    u, w = _entries(u), _entries(w)
    _check_same_length(u, w)
    return LatticeBinomial(tuple(a - b for a, b in zip(u, w)))


def compare_monomials(order: TermOrder, m1: Monomial, m2: Monomial) -> Comparison:
    m1, m2 = _entries(m1), _entries(m2)
    _check_same_length(m1, m2, order.ranks)
    k1, k2 = order.key(m1), order.key(m2)
    if k1 < k2:
        return Comparison.LESS
    if k1 > k2:
        return Comparison.GREATER
    return Comparison.EQUAL


def _split(v: Sequence[int]) -> Tuple[List[int], List[int]]:
    return [e if e > 0 else 0 for e in v], [-e if e < 0 else 0 for e in v]


def _oriented_vector(order: TermOrder, v: Sequence[int]) -> Tuple[int, ...]:
    pos, neg = _split(v)
    if order.key(pos) < order.key(neg):
        return tuple(-e for e in v)
    return tuple(v)


def orient(order: TermOrder, b: LatticeBinomial) -> LatticeBinomial:
    """Return b or -b so that x^{v+} is the leading monomial."""
    _check_same_length(b.v, order.ranks)
    if b.is_zero:
        raise StructuralError("cannot orient the zero binomial")
    oriented = _oriented_vector(order, b.v)
    return b if oriented == b.v else LatticeBinomial(oriented)


def spair_vector(b1: LatticeBinomial, b2: LatticeBinomial, order: TermOrder) -> LatticeBinomial:
    """S-polynomial of two oriented binomials: the binomial of v1 - v2."""
    _check_same_length(b1.v, b2.v, order.ranks)
    v = tuple(a - b for a, b in zip(b1.v, b2.v))
    if not any(v):
        return LatticeBinomial(v)
    return LatticeBinomial(_oriented_vector(order, v))


def multiplicity(lead: Sequence[int], monomial: Sequence[int]) -> int:
    """Largest m with x^{m*lead} dividing x^monomial (0 if none)."""
    m = None
    for c, s in zip(lead, monomial):
        if c:
            k = s // c
            if k == 0:
                return 0
            m = k if m is None or k < m else m
    return m or 0


def reduce_binomial(b: LatticeBinomial,
                    G: Sequence[LatticeBinomial],
                    order: TermOrder,
                    step_cap: int = DEFAULT_REDUCTION_STEP_CAP,
                    single_step: bool = False) -> LatticeBinomial:
    """
    Normal form of b modulo the oriented binomials G.

    Each side is rewritten to its standard monomial on its own, dividing by
    the first element of G whose leading monomial fits and taking the largest
    multiple that fits unless single_step is set. The common factor is
    stripped once both sides are standard, so over a Groebner basis the
    result does not depend on the step size.
    """
    _check_same_length(b.v, order.ranks, *(g.v for g in G))
    if b.is_zero:
        return b
    rules = [(g.positive.entries, g.negative.entries) for g in G if not g.is_zero]
    steps = 0
    sides = []
    for side in _split(b.v):
        while True:
            for c, d in rules:
                m = multiplicity(c, side)
                if not m:
                    continue
                if single_step:
                    m = 1
                side = [s - m * ci + m * di for s, ci, di in zip(side, c, d)]
                break
            else:
                break
            steps += 1
            if steps > step_cap:
                raise ReductionCapError(f"reduction exceeded {step_cap} steps")
        sides.append(side)
    v = tuple(a - t for a, t in zip(*sides))
    if not any(v):
        return LatticeBinomial(v)
    return LatticeBinomial(_oriented_vector(order, v))
