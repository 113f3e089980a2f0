"""
Stanley-Reisner complexes, vertex restrictions and reduced simplicial
homology ranks over Q or GF(p).

Ranks are exact: sympy DomainMatrix over ZZ with fraction-free row
reduction for characteristic zero, modular elimination over GF(p).
"""

import sys
from dataclasses import dataclass
from typing import Dict, FrozenSet, List

from sympy import GF, ZZ, isprime
from sympy.polys.matrices import DomainMatrix

from . import settings
from .core import MonomialIdeal, alexander_dual, mask_indices, mask_sort_key, popcount
from .exceptions import InvalidField, UnsupportedIdeal, VerticesOutsideComplex, VoidComplex


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 means Q, otherwise GF(p)."""
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise InvalidField(f"GF({self.characteristic}) is not a field: {self.characteristic} is not prime")

    @classmethod
    def rationals(cls) -> 'FieldSpec':
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> 'FieldSpec':
        # characteristic 0 is reserved for Q
        if p < 2:
            raise InvalidField(f"GF({p}) is not a field: the characteristic must be a prime >= 2")
        return cls(p)

    @property
    def label(self) -> str:
        return 'q' if self.characteristic == 0 else f"gf{self.characteristic}"

    def __str__(self) -> str:
        return self.label


def parse_field(text: str) -> FieldSpec:
    """'q' -> Q, 'gf<p>' -> GF(p)."""
    value = text.strip().lower()
    if value in ('q', 'qq'):
        return FieldSpec.rationals()
    if value.startswith('gf') and value[2:].isdigit():
        return FieldSpec.prime(int(value[2:]))
    raise InvalidField(f"Unknown field {text!r}; use 'q' or 'gf<p>' with p prime")


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex given by its facets over a vertex bitmask.

    No facets is the void complex; facets == {0} is the complex {∅}.
    """
    vertices: int
    facets: FrozenSet[int]

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int:
        if self.is_void:
            return -2
        return max(popcount(f) for f in self.facets) - 1

    def faces(self) -> List[int]:
        """Every face, sorted by (size, vertex tuple)."""
        seen = set()
        for facet in self.facets:
            sub = facet
            while True:
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & facet
        return sorted(seen, key=mask_sort_key)

    def f_vector(self) -> Dict[int, int]:
        """Face counts by dimension, the empty face at -1."""
        counts: Dict[int, int] = {}
        for face in self.faces():
            d = popcount(face) - 1
            counts[d] = counts.get(d, 0) + 1
        return counts


def full_simplex(vertices: int) -> SimplicialComplex:
    return SimplicialComplex(vertices, frozenset({vertices}))


def stanley_reisner(a: MonomialIdeal) -> SimplicialComplex:
    """Faces are the supports of monomials outside the ideal.

    Facets are the complements of the minimal primes.
    """
    if a.is_unit:
        raise UnsupportedIdeal("The unit ideal has the void Stanley-Reisner complex")
    full = a.ambient.full_mask
    if a.is_zero:
        return full_simplex(full)
    dual = alexander_dual(a, full)
    return SimplicialComplex(full, frozenset(full & ~p for p in dual.gens))


def restrict(d: SimplicialComplex, w: int) -> SimplicialComplex:
    if w & ~d.vertices:
        raise VerticesOutsideComplex(f"Vertices {mask_indices(w & ~d.vertices)} are not in the complex")
    if d.is_void:
        return SimplicialComplex(w, frozenset())
    return SimplicialComplex(w, minimalize_facets(f & w for f in d.facets))


def minimalize_facets(faces) -> FrozenSet[int]:
    """Keep the inclusion-maximal sets."""
    kept: List[int] = []
    for face in sorted(set(faces), key=popcount, reverse=True):
        if not any(face & k == face for k in kept):
            kept.append(face)
    return frozenset(kept)


def _boundary_rows(faces_lo: List[int], faces_hi: List[int]) -> List[List[int]]:
    """Matrix of d: C_hi -> C_lo in the sorted face bases."""
    row_of = {face: r for r, face in enumerate(faces_lo)}
    rows = [[0] * len(faces_hi) for _ in faces_lo]
    for c, face in enumerate(faces_hi):
        for pos, v in enumerate(mask_indices(face)):
            rows[row_of[face & ~(1 << v)]][c] = -1 if pos % 2 else 1
    return rows


def matrix_rank(rows: List[List[int]], field: FieldSpec) -> int:
    if not rows or not rows[0]:
        return 0
    shape = (len(rows), len(rows[0]))
    dm = DomainMatrix([[ZZ(v) for v in row] for row in rows], shape, ZZ)
    if field.characteristic == 0:
        _, _, pivots = dm.rref_den()
        return len(pivots)
    return dm.convert_to(GF(field.characteristic)).rank()


def reduced_homology_ranks(d: SimplicialComplex, field: FieldSpec) -> Dict[int, int]:
    """h̃_i(d; field) for every i in -1..dim(d)."""
    if d.is_void:
        raise VoidComplex("Reduced homology is not defined on the void complex")
    dim = d.dimension
    if dim == -1:
        return {-1: 1}
    apex = d.vertices
    for facet in d.facets:
        apex &= facet
    if apex:
        # a cone (a simplex included) is acyclic
        return {i: 0 for i in range(-1, dim + 1)}

    by_dim: Dict[int, List[int]] = {i: [] for i in range(-1, dim + 1)}
    for face in d.faces():
        by_dim[popcount(face) - 1].append(face)

    # ranks[i] = rank of d_i : C_i -> C_{i-1}
    ranks = {-1: 0, dim + 1: 0}
    for i in range(0, dim + 1):
        ranks[i] = matrix_rank(_boundary_rows(by_dim[i - 1], by_dim[i]), field)
    result = {i: len(by_dim[i]) - ranks[i] - ranks[i + 1] for i in range(-1, dim + 1)}
    if settings.DEBUG:
        print(f"[HOCHSTER] {sorted(d.facets)} over {field}: {result}", file=sys.stderr)
    return result
