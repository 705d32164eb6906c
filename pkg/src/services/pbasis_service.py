"""
p-basis pipeline: presentations to binomials, the variable-order search,
p-basis extraction, Ulm invariants and p-heights.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from ..config.settings import EngineConfig
from ..models.groebner import GroebnerBasis
from ..models.lattice import ExponentVector, LatticeBinomial, TermOrder
from ..models.presentation import GroupType, PBasisElement, Presentation
from ..models.report import StructureResult
from ..utils.errors import NonFiniteGroupError, ShapeSearchError, ShapeViolationError, StructuralError
from ..utils.logging import app_logger, performance_logger, pipeline_logger, timing_decorator
from .binomials import normalize
from .groebner_service import GroebnerEngine
from .snf_service import SNFOracle

Height = Union[int, float]


@dataclass(frozen=True)
class ShapeViolation:
    """Why a Groebner basis fails the p-basis shape."""
    pivot: int
    tail: Optional[int]
    reason: str


def relations_to_binomials(presentation: Presentation,
                           orders: Optional[Sequence[int]] = None) -> List[LatticeBinomial]:
    """
    One binomial per relation, in input order.

    With generator orders given, a relation whose generators all have the same
    order n is first rewritten as pivot = sum b_t c_t with 0 <= b_t < n, the
    pivot being the last generator with a coefficient prime to p.
    """
    binomials = []
    for relation in presentation.relations:
        if orders is not None:
            relation = _layer_normalized(relation, orders, presentation.prime)
        positive = [a if a > 0 else 0 for a in relation]
        negative = [-a if a < 0 else 0 for a in relation]
        binomials.append(normalize(positive, negative))
    return binomials


def _layer_normalized(relation: Sequence[int], orders: Sequence[int], p: int) -> Tuple[int, ...]:
    support = [i for i, a in enumerate(relation) if a]
    layer = {orders[i] for i in support}
    if len(layer) != 1:
        return tuple(relation)
    n = layer.pop()
    units = [i for i in support if relation[i] % p]
    if n <= 1 or not units:
        return tuple(relation)
    pivot = units[-1]
    inverse = pow(relation[pivot], -1, n)
    result = [0] * len(relation)
    result[pivot] = 1
    for t in support:
        if t != pivot:
            result[t] = -((-relation[t] * inverse) % n)
    return tuple(result)


def p_valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def shape_violation(G: GroebnerBasis, orders: Sequence[int], p: int) -> Optional[ShapeViolation]:
    """
    First element of G breaking the p-basis shape, or None.

    The shape: every leading monomial is x_j^(p^r); tails use only smaller
    variables; for r >= 1 every tail exponent is divisible by p^r.
    """
    ranks = G.order.ranks
    for g in G.elements:
        lead = g.positive
        support = lead.support()
        pivot = max(support, key=lambda i: ranks[i])
        if orders[pivot] == 1:
            continue
        if len(support) != 1:
            others = [i for i in support if i != pivot]
            return ShapeViolation(pivot, max(others, key=lambda i: ranks[i]),
                                  f"leading monomial {lead.format()} is not a pure power")
        e = lead[pivot]
        r = p_valuation(e, p)
        if p ** r != e:
            return ShapeViolation(pivot, None, f"leading exponent {e} of x{pivot + 1} is not a power of {p}")
        tail = g.negative
        for t in sorted(tail.support(), key=lambda i: -ranks[i]):
            if ranks[t] > ranks[pivot]:
                return ShapeViolation(pivot, t, f"tail variable x{t + 1} is larger than x{pivot + 1}")
            if r >= 1 and tail[t] % e:
                return ShapeViolation(pivot, t,
                                      f"tail exponent {tail[t]} on x{t + 1} not divisible by {e}")
    return None


def extract_pbasis(G: GroebnerBasis, orders: Sequence[int], p: int) -> List[PBasisElement]:
    """p-basis b_j = c_j - sum a_jt c_t read off a shape-conforming Groebner basis."""
    basis = []
    for g in G.elements:
        pure = G.pure_power(g)
        if pure is None:
            raise ShapeViolationError(f"{g.format()} has no pure-power leading monomial")
        j, e = pure
        if e == 1:
            continue
        r = p_valuation(e, p)
        if p ** r != e:
            raise ShapeViolationError(f"leading exponent {e} of x{j + 1} is not a power of {p}")
        tail = []
        for t in g.negative.support():
            exponent = g.negative[t]
            if exponent % e:
                raise ShapeViolationError(f"tail exponent {exponent} on x{t + 1} not divisible by {e}")
            tail.append((t, (exponent // e) % orders[t]))
        basis.append(PBasisElement(j, r, tuple(tail)))
    return sorted(basis, key=lambda b: b.pivot)


def ulm_type(basis: Sequence[PBasisElement], prime: Optional[int] = None) -> GroupType:
    """s_r = number of basis elements of order p^r."""
    return GroupType.from_exponents([b.order_exponent for b in basis], prime=prime)


def p_height(coords: Sequence[int], basis: Sequence[PBasisElement], p: int) -> Height:
    """Largest k with the element in p^k M; math.inf for zero."""
    valuations = []
    for c, b in zip(coords, basis):
        c %= p ** b.order_exponent
        if c:
            valuations.append(p_valuation(c, p))
    return min(valuations) if valuations else math.inf


class PBasisService:
    """Runs the p-basis pipeline on presentations."""

    def __init__(self, config: Optional[EngineConfig] = None,
                 engine: Optional[GroebnerEngine] = None,
                 oracle: Optional[SNFOracle] = None):
        self.config = config or EngineConfig()
        self.engine = engine or GroebnerEngine(self.config)
        self.oracle = oracle or SNFOracle()

    # -- Saturation and element orders --------------------------------------

    def ideal_generators(self, presentation: Presentation) -> Tuple[List[LatticeBinomial], bool]:
        """
        Binomials whose ideal is the lattice ideal of the relations.

        Without an invertibility certificate, x_j^e - 1 is added for each j,
        where e is the group exponent from the oracle.
        """
        binomials = relations_to_binomials(presentation)
        if presentation.is_saturated():
            return binomials, True
        mixed = self.oracle.mixed_type(presentation)
        if mixed.torsion_free_rank:
            raise NonFiniteGroupError(
                f"group has torsion-free rank {mixed.torsion_free_rank}; use the snf command"
            )
        foreign = [p for p in mixed.primes if p != presentation.prime]
        if foreign:
            raise NonFiniteGroupError(f"group is not a {presentation.prime}-group: torsion at primes {foreign}")
        e = self.oracle.exponent(presentation)
        q = presentation.size
        app_logger.info(f"No invertibility certificate; saturating with exponent {e}")
        extras = [LatticeBinomial(ExponentVector.power(q, j, e).entries) for j in range(q)]
        return binomials + extras, False

    def generator_orders(self, presentation: Presentation,
                         binomials: Sequence[LatticeBinomial]) -> List[int]:
        """Orders p^k of the generators, from a basis under x_q < ... < x_1."""
        G = self.engine.buchberger_reduced(binomials, TermOrder.reverse(presentation.size))
        return self.engine.element_orders(G, presentation.prime)

    @staticmethod
    def pipeline_generators(presentation: Presentation, orders: Sequence[int]) -> List[LatticeBinomial]:
        """
        Layer-normalized relations plus x_j^ord(c_j) - 1 for every j.

        The order binomials let a normalized row stand in for the original
        one, so the lattice ideal is unchanged.
        """
        q = presentation.size
        powers = [LatticeBinomial(ExponentVector.power(q, j, n).entries) for j, n in enumerate(orders)]
        return relations_to_binomials(presentation, orders) + powers

    # -- Order search --------------------------------------------------------

    @staticmethod
    def initial_precedence(orders: Sequence[int]) -> List[int]:
        """Descending order first, ties by index; trivial generators end up last."""
        return sorted(range(len(orders)), key=lambda i: (-orders[i], i))

    def find_pbasis_permutation(self, presentation: Presentation,
                                binomials: Optional[Sequence[LatticeBinomial]] = None,
                                orders: Optional[Sequence[int]] = None) -> Tuple[TermOrder, GroebnerBasis]:
        """
        Variable order whose reduced Groebner basis has the p-basis shape.

        Starts from the descending-order precedence and swaps equal-order
        variables named by shape violations, at most q^2 times. A violation
        across order classes ends the swapping; the splitting order is tried
        next, then every permutation within blocks of equal order.
        """
        if binomials is None:
            binomials, _ = self.ideal_generators(presentation)
        if orders is None:
            orders = self.generator_orders(presentation, binomials)
        p, q = presentation.prime, presentation.size

        precedence = self.initial_precedence(orders)
        seen = set()
        for _ in range(q * q + 1):
            order = TermOrder.from_precedence(precedence)
            G = self.engine.buchberger_reduced(binomials, order)
            violation = shape_violation(G, orders, p)
            if violation is None:
                return order, G
            pipeline_logger.log_shape_violation(violation.reason)
            seen.add(tuple(precedence))
            if violation.tail is None or orders[violation.tail] != orders[violation.pivot]:
                break
            a, b = precedence.index(violation.pivot), precedence.index(violation.tail)
            precedence[a], precedence[b] = precedence[b], precedence[a]
            pipeline_logger.log_swap(violation.pivot, violation.tail)
            if tuple(precedence) in seen:
                break

        precedence = self.splitting_precedence(presentation, binomials, orders)
        pipeline_logger.log_splitting(precedence)
        order = TermOrder.from_precedence(precedence)
        G = self.engine.buchberger_reduced(binomials, order)
        violation = shape_violation(G, orders, p)
        if violation is None:
            return order, G
        pipeline_logger.log_shape_violation(violation.reason)

        for order, G in self.enumerate_shape_permutations(presentation, binomials, orders):
            return order, G
        raise ShapeSearchError("no variable order gives a Groebner basis of p-basis shape")

    def splitting_precedence(self, presentation: Presentation,
                             binomials: Sequence[LatticeBinomial],
                             orders: Sequence[int]) -> List[int]:
        """
        Precedence built one variable at a time: next is the generator of
        largest order modulo the subgroup of those already placed.

        Each placed subgroup is then a direct summand of the next, which is
        what the p-basis shape reads off. Ties follow initial_precedence.
        """
        p, q = presentation.prime, presentation.size
        base = self.initial_precedence(orders)
        prefix: List[int] = []
        remaining = [i for i in base if orders[i] > 1]
        quotient_orders = list(orders)
        while remaining and max(quotient_orders[i] for i in remaining) > 1:
            pick = max(remaining, key=lambda i: (quotient_orders[i], -base.index(i)))
            prefix.append(pick)
            remaining.remove(pick)
            killed = list(binomials) + [LatticeBinomial(ExponentVector.power(q, s, 1).entries)
                                        for s in prefix]
            G = self.engine.buchberger_reduced(killed, TermOrder.reverse(q))
            quotient_orders = self.engine.element_orders(G, p)
        return prefix + [i for i in base if i not in prefix]

    def enumerate_shape_permutations(self, presentation: Presentation,
                                     binomials: Optional[Sequence[LatticeBinomial]] = None,
                                     orders: Optional[Sequence[int]] = None
                                     ) -> Iterator[Tuple[TermOrder, GroebnerBasis]]:
        """Every permutation within equal-order blocks whose basis has the shape."""
        if binomials is None:
            binomials, _ = self.ideal_generators(presentation)
        if orders is None:
            orders = self.generator_orders(presentation, binomials)
        base = self.initial_precedence(orders)
        blocks = [list(group) for order, group in itertools.groupby(base, key=lambda i: orders[i])
                  if order > 1]
        trivial = [i for i in base if orders[i] == 1]

        tried = 0
        for choice in itertools.product(*(itertools.permutations(block) for block in blocks)):
            tried += 1
            if tried > self.config.exhaustive_permutation_cap:
                raise ShapeSearchError(
                    f"exhaustive order search exceeded {self.config.exhaustive_permutation_cap} permutations"
                )
            precedence = [i for block in choice for i in block] + trivial
            order = TermOrder.from_precedence(precedence)
            G = self.engine.buchberger_reduced(binomials, order)
            if shape_violation(G, orders, presentation.prime) is None:
                yield order, G

    # -- Pipeline ------------------------------------------------------------

    @timing_decorator(performance_logger)
    def compute_structure(self, presentation: Presentation,
                          precedence: Optional[Sequence[int]] = None) -> StructureResult:
        """
        Groebner basis, p-basis and type of a finite p-group presentation.

        precedence (variables from smallest to largest) forces the order; its
        basis is then checked against the shape, not searched.
        """
        binomials, saturated = self.ideal_generators(presentation)
        orders = self.generator_orders(presentation, binomials)
        p = presentation.prime
        binomials = self.pipeline_generators(presentation, orders)

        if precedence is not None:
            if len(precedence) != presentation.size:
                raise StructuralError(f"permutation of {len(precedence)} variables for {presentation.size}")
            order = TermOrder.from_precedence(precedence)
            G = self.engine.buchberger_reduced(binomials, order)
            violation = shape_violation(G, orders, p)
            if violation is not None:
                raise ShapeViolationError(f"forced order rejected: {violation.reason}")
        else:
            order, G = self.find_pbasis_permutation(presentation, binomials, orders)

        basis = extract_pbasis(G, orders, p)
        return StructureResult(
            presentation=presentation,
            order=order,
            groebner=G,
            orders=tuple(orders),
            basis=tuple(basis),
            group_type=ulm_type(basis, p),
            saturated=saturated,
        )

    # -- Coordinates and heights ----------------------------------------------

    def coordinates(self, element: Sequence[int], structure: StructureResult) -> List[int]:
        """
        Coordinates of sum_j e_j c_j in the p-basis, each reduced modulo the
        order of its basis element.
        """
        q = structure.presentation.size
        if len(element) != q:
            raise StructuralError(f"element of length {len(element)} in {q} generators")
        monomial = ExponentVector(tuple(e % o for e, o in zip(element, structure.orders)))
        standard = self.engine.normal_form_monomial(monomial, structure.groebner)

        ranks = structure.order.ranks
        weights = list(standard.entries)
        by_pivot = {b.pivot: b for b in structure.basis}
        for j in sorted(by_pivot, key=lambda i: -ranks[i]):
            for t, a in by_pivot[j].tail:
                weights[t] += weights[j] * a
        return [weights[b.pivot] % structure.prime ** b.order_exponent for b in structure.basis]

    def height(self, element: Sequence[int], structure: StructureResult) -> Height:
        """p-height of an integer combination of the generators."""
        coords = self.coordinates(element, structure)
        return p_height(coords, structure.basis, structure.prime)
