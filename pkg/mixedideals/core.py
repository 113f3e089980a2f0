"""
Square-free monomials, monomial ideal arithmetic, Alexander duality and
mixed product specifications.

Variables are indexed 0..n+m-1: the first n are x1..xn, the last m are
y1..ym. A square-free monomial is its support, stored as an int bitmask.
"""

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .exceptions import (
    AmbientMismatch, CapExceeded, DegreeOutOfRange, InvalidAmbient,
    SupportOutsideVertices, UnsupportedIdeal, UsageError
)


# Widest ambient the bitmask encoding and the exhaustive oracle accept.
AMBIENT_CAP = 16


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def mask_indices(mask: int) -> Tuple[int, ...]:
    """Indices of the set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def mask_sort_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    return popcount(mask), mask_indices(mask)


class Block(str, Enum):
    X = 'x'
    Y = 'y'


@dataclass(frozen=True)
class Ambient:
    """Polynomial ring K[x1..xn, y1..ym]."""
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise InvalidAmbient(f"Block sizes must be >= 0, got n={self.n}, m={self.m}")
        if self.n + self.m < 1:
            raise InvalidAmbient("Ambient needs at least one variable")
        if self.n + self.m > AMBIENT_CAP:
            raise CapExceeded(f"n+m={self.n + self.m} exceeds the cap of {AMBIENT_CAP} variables")

    @property
    def size(self) -> int:
        return self.n + self.m

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @property
    def x_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def y_mask(self) -> int:
        return self.full_mask ^ self.x_mask

    def block_size(self, block: Block) -> int:
        return self.n if block == Block.X else self.m

    def block_offset(self, block: Block) -> int:
        return 0 if block == Block.X else self.n

    def variable_name(self, index: int) -> str:
        if index < self.n:
            return f"x{index + 1}"
        return f"y{index - self.n + 1}"

    def swapped(self) -> 'Ambient':
        return Ambient(self.m, self.n)


@dataclass(frozen=True)
class SqFreeMonomial:
    ambient: Ambient
    mask: int

    def __post_init__(self):
        if self.mask & ~self.ambient.full_mask:
            raise SupportOutsideVertices(
                f"Monomial support {bin(self.mask)} exceeds {self.ambient.size} variables")

    @classmethod
    def from_indices(cls, ambient: Ambient, indices: Iterable[int]) -> 'SqFreeMonomial':
        return cls(ambient, indices_mask(indices))

    @property
    def support(self) -> Tuple[int, ...]:
        return mask_indices(self.mask)

    @property
    def degree(self) -> int:
        return popcount(self.mask)

    @property
    def x_degree(self) -> int:
        return popcount(self.mask & self.ambient.x_mask)

    @property
    def y_degree(self) -> int:
        return popcount(self.mask & self.ambient.y_mask)

    def divides(self, other: 'SqFreeMonomial') -> bool:
        return self.mask & other.mask == self.mask

    def __str__(self) -> str:
        return format_monomial(self)


def format_monomial(u: SqFreeMonomial) -> str:
    """x1x2y1 notation; the unit prints as 1."""
    if not u.mask:
        return '1'
    return ''.join(u.ambient.variable_name(i) for i in u.support)


def format_mask(ambient: Ambient, mask: int) -> str:
    return format_monomial(SqFreeMonomial(ambient, mask))


def format_prime(ambient: Ambient, variables: FrozenSet[int]) -> str:
    return '(' + ', '.join(ambient.variable_name(i) for i in sorted(variables)) + ')'


def minimalize(masks: Iterable[int]) -> FrozenSet[int]:
    """Keep the inclusion-minimal supports."""
    kept: List[int] = []
    for mask in sorted(set(masks), key=popcount):
        if not any(g & mask == g for g in kept):
            kept.append(mask)
    return frozenset(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """Square-free monomial ideal given by its minimal generators.

    Empty gens is the zero ideal; gens == {0} is the unit ideal.
    """
    ambient: Ambient
    gens: FrozenSet[int]

    def __post_init__(self):
        full = self.ambient.full_mask
        for g in self.gens:
            if g & ~full:
                raise SupportOutsideVertices(
                    f"Generator {bin(g)} exceeds {self.ambient.size} variables")
        for a, b in combinations(self.gens, 2):
            if a & b == a or a & b == b:
                raise UnsupportedIdeal(
                    f"Generators {format_mask(self.ambient, a)} and "
                    f"{format_mask(self.ambient, b)} are comparable")

    @classmethod
    def from_masks(cls, ambient: Ambient, masks: Iterable[int]) -> 'MonomialIdeal':
        return cls(ambient, minimalize(masks))

    @classmethod
    def zero(cls, ambient: Ambient) -> 'MonomialIdeal':
        return cls(ambient, frozenset())

    @classmethod
    def unit(cls, ambient: Ambient) -> 'MonomialIdeal':
        return cls(ambient, frozenset({0}))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return 0 in self.gens

    @property
    def generators(self) -> List[SqFreeMonomial]:
        return [SqFreeMonomial(self.ambient, g) for g in sorted(self.gens, key=mask_sort_key)]

    @property
    def support_mask(self) -> int:
        mask = 0
        for g in self.gens:
            mask |= g
        return mask

    def __str__(self) -> str:
        if self.is_zero:
            return '(0)'
        return '(' + ', '.join(str(u) for u in self.generators) + ')'


def require_proper_nonzero(a: MonomialIdeal, op: str):
    if a.is_zero or a.is_unit:
        kind = 'zero' if a.is_zero else 'unit'
        raise UnsupportedIdeal(f"{op} is undefined on the {kind} ideal")


def _same_ambient(a: MonomialIdeal, b: MonomialIdeal, op: str):
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"{op}: {a.ambient} vs {b.ambient}")


def veronese_ideal(ambient: Ambient, block: Block, k: int) -> MonomialIdeal:
    """I_k (block X) or J_k (block Y): every square-free degree-k monomial of the block."""
    size = ambient.block_size(block)
    if k < 0 or k > size:
        raise DegreeOutOfRange(f"Degree {k} outside 0..{size} for the {block.value}-block")
    offset = ambient.block_offset(block)
    masks = (indices_mask(offset + i for i in combo) for combo in combinations(range(size), k))
    return MonomialIdeal(ambient, frozenset(masks))


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _same_ambient(a, b, 'ideal_sum')
    return MonomialIdeal.from_masks(a.ambient, a.gens | b.gens)


def ideal_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Product taken in the square-free sense.

    Overlapping supports contribute their union (the square-free part of the
    true product), so the result is the radical of a*b. On disjoint variable
    blocks, as for I_k * J_l, this is the exact product.
    """
    _same_ambient(a, b, 'ideal_product')
    return MonomialIdeal.from_masks(a.ambient, (g | h for g in a.gens for h in b.gens))


def ideal_intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _same_ambient(a, b, 'ideal_intersect')
    # square-free lcm is the support union
    return MonomialIdeal.from_masks(a.ambient, (g | h for g in a.gens for h in b.gens))


def contains_monomial(a: MonomialIdeal, u: SqFreeMonomial) -> bool:
    return any(g & u.mask == g for g in a.gens)


def alexander_dual(a: MonomialIdeal, vertices) -> MonomialIdeal:
    """Intersection of the primes (x_j : j in supp g) over the generators g.

    `vertices` is a bitmask or an iterable of variable indices; every
    generator must be supported inside it.
    """
    require_proper_nonzero(a, 'alexander_dual')
    vmask = vertices if isinstance(vertices, int) else indices_mask(vertices)
    outside = a.support_mask & ~vmask
    if outside:
        names = ', '.join(a.ambient.variable_name(i) for i in mask_indices(outside))
        raise SupportOutsideVertices(f"Generators use {names}, outside the vertex set")

    # minimal transversals of the generator supports
    current = frozenset({0})
    for g in sorted(a.gens, key=mask_sort_key):
        bits = [1 << i for i in mask_indices(g)]
        current = minimalize(h if h & g else h | bit for h in current for bit in bits)
    return MonomialIdeal(a.ambient, current)


def minimal_primes(a: MonomialIdeal) -> List[FrozenSet[int]]:
    """Variable sets of the minimal primes, smallest first."""
    require_proper_nonzero(a, 'minimal_primes')
    dual = alexander_dual(a, a.ambient.full_mask)
    return [frozenset(mask_indices(g)) for g in sorted(dual.gens, key=mask_sort_key)]


def height(a: MonomialIdeal) -> int:
    return min(len(p) for p in minimal_primes(a))


def krull_dim(a: MonomialIdeal) -> int:
    return a.ambient.size - height(a)


# =============================================================================
# Mixed product specifications
# =============================================================================

Term = Tuple[int, int]


@dataclass(frozen=True)
class MixedProductSpec:
    """Symbolic sum of I_k * J_l over its terms (k, l)."""
    ambient: Ambient
    terms: Tuple[Term, ...]

    @property
    def is_canonical(self) -> bool:
        terms = list(self.terms)
        if not terms or terms != sorted(terms):
            return False
        if (0, 0) in terms and len(terms) > 1:
            return False
        for a, b in combinations(terms, 2):
            if _dominates(a, b) or _dominates(b, a):
                return False
        return True

    @property
    def is_unit(self) -> bool:
        return (0, 0) in self.terms

    def key(self) -> str:
        """Stable text key, e.g. '2,2:1,2+2,1'."""
        return f"{self.ambient.n},{self.ambient.m}:{format_terms(self.terms)}"

    def __str__(self) -> str:
        parts = []
        for k, l in self.terms:
            piece = (f"I_{k}" if k else '') + (f"J_{l}" if l else '')
            parts.append(piece or 'S')
        return ' + '.join(parts)


def _dominates(small: Term, big: Term) -> bool:
    """I_{big} J_{big} is inside I_{small} J_{small}."""
    return small != big and small[0] <= big[0] and small[1] <= big[1]


def format_terms(terms: Sequence[Term]) -> str:
    return '+'.join(f"{k},{l}" for k, l in terms)


def parse_terms(text: str) -> List[Term]:
    """'1,2+2,1' -> [(1, 2), (2, 1)]."""
    terms = []
    for chunk in text.split('+'):
        parts = chunk.strip().split(',')
        if len(parts) != 2:
            raise UsageError('--terms', f"expected 'k,l' pairs joined by '+', got {chunk.strip()!r}")
        try:
            terms.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError('--terms', f"degrees must be integers, got {chunk.strip()!r}")
    return terms


def _check_term_bounds(ambient: Ambient, terms: Sequence[Term]):
    for k, l in terms:
        if not 0 <= k <= ambient.n:
            raise DegreeOutOfRange(f"x-degree {k} outside 0..{ambient.n}")
        if not 0 <= l <= ambient.m:
            raise DegreeOutOfRange(f"y-degree {l} outside 0..{ambient.m}")


def canonicalize_spec(raw: MixedProductSpec) -> MixedProductSpec:
    if not raw.terms:
        raise UnsupportedIdeal("A mixed product spec needs at least one term")
    _check_term_bounds(raw.ambient, raw.terms)
    distinct = set(raw.terms)
    kept = [t for t in distinct if not any(_dominates(o, t) for o in distinct)]
    return MixedProductSpec(raw.ambient, tuple(sorted(kept)))


def realize_spec(spec: MixedProductSpec) -> MonomialIdeal:
    _check_term_bounds(spec.ambient, spec.terms)
    ambient = spec.ambient
    result = MonomialIdeal.zero(ambient)
    for k, l in spec.terms:
        term = ideal_product(veronese_ideal(ambient, Block.X, k), veronese_ideal(ambient, Block.Y, l))
        result = ideal_sum(result, term)
    return result


def swap_blocks(spec: MixedProductSpec) -> MixedProductSpec:
    """Exchange the roles of the x- and y-blocks."""
    return MixedProductSpec(spec.ambient.swapped(), tuple(sorted((l, k) for k, l in spec.terms)))


# =============================================================================
# Generator text
# =============================================================================

_VARIABLE = re.compile(r'([xy])(\d+)')


def parse_monomial(ambient: Ambient, text: str, flag: str = '--gens') -> SqFreeMonomial:
    text = text.strip()
    if text == '1':
        return SqFreeMonomial(ambient, 0)
    pos = 0
    mask = 0
    while pos < len(text):
        match = _VARIABLE.match(text, pos)
        if not match:
            raise UsageError(flag, f"cannot read a variable at {text[pos:]!r}")
        block = Block(match.group(1))
        number = int(match.group(2))
        if not 1 <= number <= ambient.block_size(block):
            raise UsageError(flag, f"{match.group(0)} is not a variable of ambient (n={ambient.n}, m={ambient.m})")
        bit = 1 << (ambient.block_offset(block) + number - 1)
        if mask & bit:
            raise UsageError(flag, f"{match.group(0)} repeated in {text!r}; only square-free monomials are supported")
        mask |= bit
        pos = match.end()
    if not text:
        raise UsageError(flag, "empty monomial")
    return SqFreeMonomial(ambient, mask)


def parse_generators(ambient: Ambient, text: str, flag: str = '--gens') -> MonomialIdeal:
    """'x1x2,y1y2' -> minimalized ideal."""
    masks = [parse_monomial(ambient, chunk, flag).mask for chunk in text.split(',') if chunk.strip()]
    if not masks:
        raise UsageError(flag, "no generators given")
    return MonomialIdeal.from_masks(ambient, masks)
