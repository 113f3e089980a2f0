"""
Brute-force oracle: graded Betti numbers from Hochster's formula and the
invariants read off them.
"""

import sys
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from . import settings
from .core import Ambient, MonomialIdeal, alexander_dual, height, krull_dim, popcount, require_proper_nonzero
from .exceptions import AmbientMismatch, TeraiMismatch
from .homology import FieldSpec, reduced_homology_ranks, restrict, stanley_reisner


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers of S/I: (i, j) -> beta_{i,j}, zero entries omitted."""
    ambient: Ambient
    entries: Dict[Tuple[int, int], int]
    multigraded: Optional[Dict[Tuple[int, int], int]] = dc_field(default=None, compare=False, repr=False)

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def triples(self) -> List[Tuple[int, int, int]]:
        return [(i, j, self.entries[(i, j)]) for i, j in sorted(self.entries)]

    def total(self, i: int) -> int:
        return sum(rank for (hi, _), rank in self.entries.items() if hi == i)


class Method(str, Enum):
    FORMULA = 'formula'
    ORACLE = 'oracle'


@dataclass(frozen=True)
class InvariantReport:
    dim: int
    depth: int
    pd: int
    reg_of_ideal: int
    reg_of_quotient: int
    cm: bool
    height: int
    method: Method
    field: Optional[FieldSpec] = None
    case: Optional[str] = None


COMPARED_INVARIANTS = ('dim', 'depth', 'pd', 'reg_of_ideal', 'reg_of_quotient', 'cm', 'height')


def multigraded_betti(a: MonomialIdeal, field: FieldSpec) -> Dict[Tuple[int, int], int]:
    """beta_{i,W}(S/I) = h̃_{|W|-i-1}(Δ|_W) for every vertex subset W (bitmask)."""
    require_proper_nonzero(a, 'hochster_betti')
    delta = stanley_reisner(a)
    result: Dict[Tuple[int, int], int] = {}
    for w in range(a.ambient.full_mask + 1):
        size = popcount(w)
        for d, rank in reduced_homology_ranks(restrict(delta, w), field).items():
            if rank:
                result[(size - d - 1, w)] = rank
    return result


def hochster_betti(a: MonomialIdeal, field: FieldSpec) -> BettiTable:
    multi = multigraded_betti(a, field)
    entries: Dict[Tuple[int, int], int] = {}
    for (i, w), rank in multi.items():
        key = (i, popcount(w))
        entries[key] = entries.get(key, 0) + rank
    return BettiTable(a.ambient, entries, multi)


def betti_stats(b: BettiTable) -> Tuple[int, int]:
    """(pd, reg) of the quotient."""
    pd = max(i for i, _ in b.entries)
    reg = max(j - i for i, j in b.entries)
    return pd, reg


def betti_product(b1: BettiTable, b2: BettiTable) -> BettiTable:
    """Product of graded Poincaré polynomials.

    Equals the table of S/(I+J) when I and J live in disjoint variables.
    """
    if b1.ambient != b2.ambient:
        raise AmbientMismatch(f"betti_product: {b1.ambient} vs {b2.ambient}")
    entries: Dict[Tuple[int, int], int] = {}
    for (i1, j1), r1 in b1.entries.items():
        for (i2, j2), r2 in b2.entries.items():
            key = (i1 + i2, j1 + j2)
            entries[key] = entries.get(key, 0) + r1 * r2
    return BettiTable(b1.ambient, entries)


@dataclass(frozen=True)
class OracleAnalysis:
    """Oracle report plus the tables it was read from."""
    report: InvariantReport
    table: BettiTable
    dual: MonomialIdeal
    dual_table: BettiTable


def oracle_analysis(a: MonomialIdeal, field: FieldSpec) -> OracleAnalysis:
    require_proper_nonzero(a, 'oracle_report')
    size = a.ambient.size
    table = hochster_betti(a, field)
    pd, reg_quotient = betti_stats(table)
    dim = krull_dim(a)
    depth = size - pd
    report = InvariantReport(
        dim=dim,
        depth=depth,
        pd=pd,
        reg_of_ideal=reg_quotient + 1,
        reg_of_quotient=reg_quotient,
        cm=dim == depth,
        height=height(a),
        method=Method.ORACLE,
        field=field,
    )

    dual = alexander_dual(a, a.ambient.full_mask)
    dual_table = hochster_betti(dual, field)
    dual_pd, _ = betti_stats(dual_table)
    if dual_pd != report.reg_of_ideal:
        raise TeraiMismatch(
            f"reg({a}) = {report.reg_of_ideal} but pd(S/{dual}) = {dual_pd} over {field}",
            reg=report.reg_of_ideal, dual_pd=dual_pd,
        )
    if settings.VERBOSE or settings.DEBUG:
        print(f"[ORACLE] {a} over {field}: pd={pd} reg={report.reg_of_ideal} dim={dim}", file=sys.stderr)
    return OracleAnalysis(report, table, dual, dual_table)


def oracle_report(a: MonomialIdeal, field: FieldSpec) -> InvariantReport:
    return oracle_analysis(a, field).report


def is_linear_table(a: MonomialIdeal, table: BettiTable) -> bool:
    """Generators in one degree d and reg(I) = d, read from a's Betti table."""
    degrees = {popcount(g) for g in a.gens}
    if len(degrees) != 1:
        return False
    _, reg_quotient = betti_stats(table)
    return reg_quotient + 1 == degrees.pop()


def has_linear_resolution(a: MonomialIdeal, field: FieldSpec) -> bool:
    require_proper_nonzero(a, 'has_linear_resolution')
    return is_linear_table(a, hochster_betti(a, field))
