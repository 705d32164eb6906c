"""
Buchberger's algorithm specialized to lattice binomials, with normal forms,
ideal membership, element orders and staircase counting.
"""

import heapq
from math import prod
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..config.settings import EngineConfig
from ..models.groebner import GroebnerBasis
from ..models.lattice import ExponentVector, LatticeBinomial, TermOrder
from ..utils.errors import (GroebnerCapError, NonFiniteGroupError, OrderCapError,
                            ReductionCapError, StaircaseCapError, StructuralError)
from ..utils.logging import performance_logger, pipeline_logger, timing_decorator
from .binomials import multiplicity, orient, reduce_binomial, spair_vector


class GroebnerEngine:
    """Reduced Groebner bases of binomial lattice ideals."""

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or EngineConfig()

    # -- Buchberger -------------------------------------------------------

    @timing_decorator(performance_logger)
    def buchberger_reduced(self, generators: Sequence[LatticeBinomial], order: TermOrder) -> GroebnerBasis:
        """
        Reduced Groebner basis of the ideal generated by the binomials.

        Pairs are taken by smallest lcm, ties by insertion index. Pairs with
        coprime leading monomials and pairs covered by the chain criterion
        are skipped.
        """
        q = order.size
        basis: List[LatticeBinomial] = []
        seen: Set[Tuple[int, ...]] = set()
        for g in generators:
            if len(g) != q:
                raise StructuralError(f"generator of length {len(g)} in {q} variables")
            if g.is_zero:
                raise StructuralError("zero binomial among generators")
            og = orient(order, g)
            if og.v not in seen:
                seen.add(og.v)
                basis.append(og)

        leads = [g.positive for g in basis]
        queue: List[Tuple[Tuple[int, ...], int, int]] = []
        pending: Set[Tuple[int, int]] = set()

        def push_pairs(n: int) -> None:
            for i in range(n):
                lcm = leads[i].lcm(leads[n])
                heapq.heappush(queue, (order.key(lcm.entries), i, n))
                pending.add((i, n))

        for n in range(1, len(basis)):
            push_pairs(n)

        steps = 0
        while queue:
            _, i, j = heapq.heappop(queue)
            pending.discard((i, j))
            steps += 1
            if steps > self.config.buchberger_step_cap:
                raise GroebnerCapError(f"Buchberger exceeded {self.config.buchberger_step_cap} pairs")
            if self._coprime(leads[i], leads[j]) or self._chain_skip(i, j, leads, pending):
                continue
            s = spair_vector(basis[i], basis[j], order)
            r = reduce_binomial(s, basis, order, self.config.reduction_step_cap)
            if not r.is_zero:
                basis.append(r)
                leads.append(r.positive)
                push_pairs(len(basis) - 1)

        elements = self._interreduce(basis, order)
        pipeline_logger.log_groebner(len(elements), steps, order.precedence)
        return GroebnerBasis(tuple(elements), order, True)

    @staticmethod
    def _coprime(a: ExponentVector, b: ExponentVector) -> bool:
        return not any(x and y for x, y in zip(a.entries, b.entries))

    @staticmethod
    def _chain_skip(i: int, j: int, leads: List[ExponentVector], pending: Set[Tuple[int, int]]) -> bool:
        lcm = leads[i].lcm(leads[j])
        for k in range(len(leads)):
            if k in (i, j) or not leads[k].divides(lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def _interreduce(self, basis: List[LatticeBinomial], order: TermOrder) -> List[LatticeBinomial]:
        # Stripping a common factor after a tail rewrite can lower a leading
        # monomial, so minimalization and tail reduction repeat to a fixed point.
        current = list(basis)
        while True:
            minimal = []
            for idx, g in enumerate(current):
                lead = g.positive
                redundant = False
                for jdx, h in enumerate(current):
                    if jdx == idx:
                        continue
                    other = h.positive
                    if other.divides(lead) and (other != lead or jdx < idx):
                        redundant = True
                        break
                if not redundant:
                    minimal.append(g)

            changed = len(minimal) != len(current)
            reduced = []
            for idx, g in enumerate(minimal):
                others = reduced + minimal[idx + 1:]
                r = reduce_binomial(g, others, order, self.config.reduction_step_cap)
                if r.is_zero:
                    changed = True
                    continue
                if r != g:
                    changed = True
                reduced.append(r)
            current = reduced
            if not changed:
                break
        return sorted(current, key=lambda g: order.key(g.positive.entries))

    # -- Normal forms and membership ---------------------------------------

    def normal_form_monomial(self, m: ExponentVector, G: GroebnerBasis) -> ExponentVector:
        """Unique standard monomial congruent to m, by maximal-multiplicity division."""
        if len(m) != G.order.size:
            raise StructuralError(f"monomial of length {len(m)} in {G.order.size} variables")
        rules = [(g.positive.entries, g.negative.entries) for g in G.elements]
        s = list(m.entries)
        steps = 0
        while True:
            for c, d in rules:
                k = multiplicity(c, s)
                if k:
                    s = [e - k * ci + k * di for e, ci, di in zip(s, c, d)]
                    break
            else:
                return ExponentVector(tuple(s))
            steps += 1
            if steps > self.config.reduction_step_cap:
                raise ReductionCapError(f"normal form exceeded {self.config.reduction_step_cap} steps")

    def contains_binomial(self, b: LatticeBinomial, G: GroebnerBasis) -> bool:
        return reduce_binomial(b, G.elements, G.order, self.config.reduction_step_cap).is_zero

    def element_order(self, j: int, G: GroebnerBasis, p: int, cap: Optional[int] = None) -> int:
        """Smallest p^k with NF(x_j^(p^k)) = 1."""
        cap = self.config.order_exponent_cap if cap is None else cap
        nf = self.normal_form_monomial(ExponentVector.power(G.order.size, j, 1), G)
        for k in range(cap + 1):
            if nf.is_one:
                return p ** k
            nf = self.normal_form_monomial(nf.scaled(p), G)
        raise OrderCapError(
            f"x{j + 1}^({p}^{cap}) is not 1: the presentation may not define a finite {p}-group"
        )

    def element_orders(self, G: GroebnerBasis, p: int, cap: Optional[int] = None) -> List[int]:
        return [self.element_order(j, G, p, cap) for j in range(G.order.size)]

    # -- Staircase ----------------------------------------------------------

    def standard_monomial_count(self, G: GroebnerBasis, cap: Optional[int] = None) -> int:
        """Number of monomials divisible by no leading monomial of G."""
        cap = self.config.staircase_cap if cap is None else cap
        q = G.order.size
        leads = [g.positive.entries for g in G.elements]
        bounds: List[Optional[int]] = [None] * q
        pure = True
        for lead in leads:
            support = [i for i, e in enumerate(lead) if e]
            if len(support) == 1:
                i = support[0]
                bounds[i] = lead[i] if bounds[i] is None else min(bounds[i], lead[i])
            else:
                pure = False
        missing = [i + 1 for i, b in enumerate(bounds) if b is None]
        if missing:
            raise NonFiniteGroupError(f"ideal is not zero-dimensional: no pure power of x{missing}")

        if pure:
            count = prod(bounds)
            if count > cap:
                raise StaircaseCapError(f"staircase of {count} monomials exceeds cap {cap}")
            return count
        return self._enumerate_staircase(leads, bounds, cap)

    @staticmethod
    def _enumerate_staircase(leads: List[Tuple[int, ...]], bounds: List[int], cap: int) -> int:
        q = len(bounds)
        # leads grouped by the last variable of their support
        by_last: Dict[int, List[Tuple[int, ...]]] = {i: [] for i in range(q)}
        for lead in leads:
            last = max(i for i, e in enumerate(lead) if e)
            by_last[last].append(lead)

        partial = [0] * q
        count = 0
        visited = 0

        def descend(i: int) -> None:
            nonlocal count, visited
            if i == q:
                count += 1
                return
            for e in range(bounds[i]):
                visited += 1
                if visited > cap:
                    raise StaircaseCapError(f"staircase enumeration exceeded {cap} lattice points")
                partial[i] = e
                if any(all(a <= b for a, b in zip(lead[:i + 1], partial[:i + 1])) for lead in by_last[i]):
                    break
                descend(i + 1)
            partial[i] = 0

        descend(0)
        return count
