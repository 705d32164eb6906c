"""
Presentations of building blocks and of deleted and block cycles.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import Integer, Poly, expand, rem, solve, symbols

from ..models.dedekind import BlockSpec, CycleKind, ModuleSpec, RingKind, RingModel, SigmaMode
from ..models.presentation import Presentation
from ..utils.errors import RingIdentityError, SpecError
from ..utils.logging import app_logger

# (arm, power): arm 0 is a itself, arms 1 and 2 are p1^k a and p2^k a
Generator = Tuple[int, int]


@lru_cache(maxsize=None)
def sigma_decomposition(p: int) -> Tuple[int, ...]:
    """
    Coefficients of sigma with p = p1 + p2^(p-1) sigma(p2) in Z[x]/(x^p - 1).

    Solved in Q[y]/((y+1)^p - 1) with y = p2; sigma of degree at most p-2
    makes the solution unique.
    """
    y = symbols("y")
    unknowns = symbols(f"s0:{max(p - 1, 1)}")
    sigma = sum(s * y ** k for k, s in enumerate(unknowns))
    modulus = expand((y + 1) ** p - 1)
    p1 = sum((y + 1) ** i for i in range(p))
    residue = rem(expand(y ** (p - 1) * sigma - (p - p1)), modulus, y)
    solution = solve(Poly(residue, y).all_coeffs(), unknowns, dict=True)
    if not solution:
        raise RingIdentityError(f"p - p1 is not divisible by p2^{p - 1} for p = {p}")
    values = [solution[0].get(s, Integer(0)) for s in unknowns]
    if not all(v.is_integer for v in values):
        raise RingIdentityError(f"sigma for p = {p} has non-integral coefficients {values}")
    coefficients = tuple(int(v) for v in values)
    verify_ring_identity(p, coefficients)
    return coefficients


def verify_ring_identity(p: int, sigma: Tuple[int, ...]) -> None:
    """p1 + p2^(p-1) sigma(p2) = p and p1 * p2 = 0 in Z[x]/(x^p - 1)."""
    x = symbols("x")
    modulus = x ** p - 1
    p1 = sum(x ** i for i in range(p))
    p2 = x - 1
    identity = p1 + p2 ** (p - 1) * sum(c * p2 ** k for k, c in enumerate(sigma)) - p
    if rem(expand(identity), modulus, x) != 0:
        raise RingIdentityError(f"p1 + p2^{p - 1} sigma(p2) != {p} for sigma = {list(sigma)}")
    if rem(expand(p1 * p2), modulus, x) != 0:
        raise RingIdentityError("p1 * p2 != 0")


def ring_model(kind: RingKind, p: int) -> RingModel:
    if kind is RingKind.ZCP:
        return RingModel(kind, p, sigma_decomposition(p))
    return RingModel(kind, p)


def _block_generators(block: BlockSpec) -> Dict[int, List[Generator]]:
    """Generators of one block grouped by layer k."""
    layers: Dict[int, List[Generator]] = {0: [(0, 0)]}
    for k in range(1, int(max(block.d1, block.d2))):
        layer = []
        if k < block.d1:
            layer.append((1, k))
        if k < block.d2:
            layer.append((2, k))
        layers[k] = layer
    return layers


def _generator_name(gen: Generator, block_index: int, m: int) -> str:
    arm, k = gen
    suffix = str(block_index + 1) if m > 1 else ""
    if arm == 0:
        return f"a{suffix}"
    power = f"p{arm}" if k == 1 else f"p{arm}^{k}"
    return f"{power}a{suffix}"


def _p_action(ring: RingModel, gen: Generator, block: BlockSpec,
              sigma_mode: SigmaMode) -> Dict[Generator, int]:
    """p * gen as a combination of generators of the same block."""
    arm, k = gen
    p = ring.prime
    terms: Dict[Generator, int] = {}

    def add(target: Generator, c: int) -> None:
        t_arm, t_k = target
        length = block.d1 if t_arm == 1 else block.d2
        if c and t_k < length:
            terms[target] = terms.get(target, 0) + c

    if ring.kind is RingKind.PULLBACK:
        if arm == 0:
            add((1, 1), 1)
            add((2, 1), 1)
        else:
            add((arm, k + 1), 1)
        return terms

    sigma = ring.sigma[:1] if sigma_mode is SigmaMode.CONSTANT else ring.sigma
    if arm in (0, 1):
        add((1, k + 1), 1)
    if arm in (0, 2):
        for i, c in enumerate(sigma):
            add((2, p - 1 + i + k), c)
    return terms


class PresentationBuilder:
    """Assembles block relations and gluing relations into one presentation."""

    def __init__(self, ring: RingModel, blocks: Tuple[BlockSpec, ...],
                 sigma_mode: SigmaMode = SigmaMode.FULL):
        for i, block in enumerate(blocks, start=1):
            if not block.is_finite:
                raise SpecError(f"block {i} has an infinite length; resolve infinite lengths first")
        self.ring = ring
        self.blocks = blocks
        self.sigma_mode = sigma_mode
        self.index: Dict[Tuple[int, Generator], int] = {}
        self.names: List[str] = []
        layers = [_block_generators(b) for b in blocks]
        depth = max(len(layer) for layer in layers)
        for k in range(depth):
            for i, block_layers in enumerate(layers):
                for gen in block_layers.get(k, []):
                    self.index[(i, gen)] = len(self.names)
                    self.names.append(_generator_name(gen, i, len(blocks)))
        self.relations: List[Tuple[int, ...]] = []

    @property
    def size(self) -> int:
        return len(self.names)

    def socle(self, block_index: int, arm: int) -> int:
        """Index of p_arm^(d-1) a_i, the left (arm 1) or right (arm 2) socle element."""
        block = self.blocks[block_index]
        length = int(block.d1 if arm == 1 else block.d2)
        if length < 2:
            raise SpecError(f"d({arm},{block_index + 1}) = {length} has no socle copy to glue")
        return self.index[(block_index, (arm, length - 1))]

    def add_block_relations(self) -> None:
        """p * g expressed in later generators, one relation per generator."""
        p = self.ring.prime
        rows: Dict[int, Tuple[int, ...]] = {}
        for (i, gen), column in self.index.items():
            row = [0] * self.size
            row[column] = p
            for target, c in _p_action(self.ring, gen, self.blocks[i], self.sigma_mode).items():
                row[self.index[(i, target)]] -= c
            rows[column] = tuple(row)
        self.relations.extend(rows[c] for c in sorted(rows))

    def add_identification(self, pivot: int, terms: Dict[int, int]) -> None:
        """pivot = sum c * generator, coefficients reduced mod p."""
        p = self.ring.prime
        row = [0] * self.size
        row[pivot] = 1
        for column, c in terms.items():
            row[column] -= c % p
        self.relations.append(tuple(row))

    def build(self, metadata: Optional[Dict] = None) -> Presentation:
        return Presentation(self.ring.prime, tuple(self.names), tuple(self.relations), metadata or {})


def build_block_presentation(ring: RingModel, spec: BlockSpec,
                             sigma_mode: SigmaMode = SigmaMode.FULL) -> Presentation:
    """Generators a, p1^k a, p2^k a and the p-action on each of them."""
    builder = PresentationBuilder(ring, (spec,), sigma_mode)
    builder.add_block_relations()
    return builder.build({'ring': ring.to_dict(), 'block': spec.to_dict()})


def connector_relations(spec: ModuleSpec) -> List[Tuple[int, Dict[Tuple[int, int], int]]]:
    """
    Gluing relations as (block, arm) socle positions: pivot -> {position: coefficient}.

    Deleted cycles identify the right copy of block i with the left copy of
    block i+1; block cycles add the closing relation through f(z).
    """
    p, m = spec.prime, spec.m
    relations = []
    for i in range(m - 1):
        relations.append(((i + 1, 1), {(i, 2): spec.glue[i]}))
    if spec.cycle is CycleKind.BLOCK:
        # lambda_0 p1^(d(1,1)-1) a_1 + sum_j lambda_j p1^(...) a_(j*period+1) + p2^(d(2,m)-1) a_m = 0
        inverse = pow(spec.f[0], -1, p)
        terms: Dict[Tuple[int, int], int] = {}
        for j, lam in enumerate(spec.f[1:], start=1):
            position = (j * spec.period, 1)
            terms[position] = terms.get(position, 0) - lam * inverse
        terms[(m - 1, 2)] = terms.get((m - 1, 2), 0) - inverse
        relations.append(((0, 1), terms))
    return relations


def build_cycle_presentation(spec: ModuleSpec, check_irreducible: bool = True) -> Presentation:
    """Block presentations of every block glued along their socle copies."""
    if not spec.is_finite:
        raise SpecError("spec has infinite lengths; resolve infinite lengths first")
    ring = ring_model(spec.ring.kind, spec.prime)
    builder = PresentationBuilder(ring, spec.blocks, spec.sigma_mode)
    builder.add_block_relations()
    for (pivot_block, pivot_arm), terms in connector_relations(spec):
        pivot = builder.socle(pivot_block, pivot_arm)
        builder.add_identification(pivot, {
            builder.socle(block, arm): c for (block, arm), c in terms.items()
        })
    if spec.cycle is CycleKind.BLOCK and check_irreducible:
        check_f_irreducible_power(spec)
    app_logger.debug(f"Built {spec.cycle.value} cycle with {builder.size} generators")
    return builder.build({'spec': spec.to_dict()})


def check_f_irreducible_power(spec: ModuleSpec) -> bool:
    """True iff f(z) is a power of one irreducible over F_p; warns otherwise."""
    z = symbols("z")
    f = z ** spec.l + sum(c * z ** j for j, c in enumerate(spec.f))
    _, factors = Poly(f, z, modulus=spec.prime).factor_list()
    if len(factors) != 1:
        app_logger.warning(
            f"f(z) = {f} is not a power of an irreducible mod {spec.prime}; the module may decompose"
        )
        return False
    return True
