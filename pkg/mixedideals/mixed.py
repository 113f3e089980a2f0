"""
Closed-form invariants of mixed product ideals I_qJ_r + I_sJ_t, and the
explicit syzygy and Koszul-cycle witnesses behind the regularity and depth
statements.

Every formula takes a canonical MixedProductSpec with one or two terms.
Shapes with q = 0 or t = 0 are dispatched to their own branches; the
q = 0, t >= 1 shape is evaluated by swapping the variable blocks.
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

from .core import Ambient, MixedProductSpec, SqFreeMonomial, indices_mask, swap_blocks
from .exceptions import EmptyBlock, UnsupportedIdeal, UnsupportedShape
from .invariants import InvariantReport, Method


class Shape(str, Enum):
    VERONESE_X = 'veronese_x'                  # I_k
    VERONESE_Y = 'veronese_y'                  # J_r
    PRODUCT = 'product'                        # I_qJ_r, q,r >= 1
    VERONESE_SUM = 'veronese_sum'              # J_r + I_s
    PRODUCT_PLUS_X = 'product_plus_veronese'   # I_qJ_r + I_s, q >= 1
    PRODUCT_PLUS_Y = 'veronese_plus_product'   # J_r + I_sJ_t, t >= 1
    TWO_PRODUCTS = 'two_products'              # I_qJ_r + I_sJ_t, q,t >= 1

    @property
    def cm_case(self) -> int:
        """Which Cohen-Macaulay classification case covers the shape."""
        return {
            Shape.VERONESE_X: 1, Shape.VERONESE_Y: 1, Shape.VERONESE_SUM: 1,
            Shape.PRODUCT: 2,
            Shape.PRODUCT_PLUS_X: 3, Shape.PRODUCT_PLUS_Y: 3,
            Shape.TWO_PRODUCTS: 4,
        }[self]


def classify_shape(spec: MixedProductSpec) -> Shape:
    if spec.is_unit:
        raise UnsupportedIdeal("Formulas are undefined on the unit ideal")
    if not spec.terms:
        raise UnsupportedIdeal("Formulas are undefined on the zero ideal")
    if not spec.is_canonical:
        raise UnsupportedShape(f"{spec.key()} is not canonical; run canonicalize_spec first")
    if len(spec.terms) > 2:
        raise UnsupportedShape(f"{spec.key()}: no formula for {len(spec.terms)} terms")

    if len(spec.terms) == 1:
        (k, l), = spec.terms
        if l == 0:
            return Shape.VERONESE_X
        if k == 0:
            return Shape.VERONESE_Y
        return Shape.PRODUCT

    (q, r), (s, t) = spec.terms
    if q == 0 and t == 0:
        return Shape.VERONESE_SUM
    if t == 0:
        return Shape.PRODUCT_PLUS_X
    if q == 0:
        return Shape.PRODUCT_PLUS_Y
    return Shape.TWO_PRODUCTS


def reg_formula(spec: MixedProductSpec) -> int:
    """Regularity of the ideal."""
    shape = classify_shape(spec)
    if shape == Shape.VERONESE_X:
        return spec.terms[0][0]
    if shape == Shape.VERONESE_Y:
        return spec.terms[0][1]
    if shape == Shape.PRODUCT:
        q, r = spec.terms[0]
        return q + r
    # covers q = 0 and t = 0, where it agrees with reg(I_s + J_r) = r + s - 1
    (_, r), (s, _) = spec.terms
    return r + s - 1


def dim_formula(spec: MixedProductSpec) -> int:
    """Krull dimension of the quotient."""
    shape = classify_shape(spec)
    n, m = spec.ambient.n, spec.ambient.m
    if shape == Shape.VERONESE_X:
        return m + spec.terms[0][0] - 1
    if shape == Shape.VERONESE_Y:
        return n + spec.terms[0][1] - 1
    if shape == Shape.PRODUCT:
        q, r = spec.terms[0]
        return n + m - min(n - q + 1, m - r + 1)
    if shape == Shape.PRODUCT_PLUS_Y:
        return dim_formula(swap_blocks(spec))

    (q, r), (s, t) = spec.terms
    if shape == Shape.VERONESE_SUM:
        return r + s - 2
    if shape == Shape.PRODUCT_PLUS_X:
        return n + m - min(n - q + 1, n + m - (r + s) + 2)
    return n + m - min(n - q + 1, m - t + 1, n + m - (r + s) + 2)


def depth_formula(spec: MixedProductSpec) -> int:
    """Depth of the quotient."""
    shape = classify_shape(spec)
    n, m = spec.ambient.n, spec.ambient.m
    if shape == Shape.VERONESE_X:
        return m + spec.terms[0][0] - 1
    if shape == Shape.VERONESE_Y:
        return n + spec.terms[0][1] - 1
    if shape == Shape.PRODUCT:
        q, r = spec.terms[0]
        return q + r - 1
    if shape == Shape.PRODUCT_PLUS_Y:
        return depth_formula(swap_blocks(spec))

    (q, r), (s, t) = spec.terms
    if shape == Shape.VERONESE_SUM:
        return r + s - 2
    if shape == Shape.PRODUCT_PLUS_X:
        return q + r - 1
    return min(q + r, s + t) - 1


def cm_classify(spec: MixedProductSpec) -> Tuple[bool, Shape]:
    shape = classify_shape(spec)
    n, m = spec.ambient.n, spec.ambient.m
    if shape in (Shape.VERONESE_X, Shape.VERONESE_Y, Shape.VERONESE_SUM):
        return True, shape
    if shape == Shape.PRODUCT:
        q, r = spec.terms[0]
        return (q == n and r == m), shape
    if shape == Shape.PRODUCT_PLUS_Y:
        cm, _ = cm_classify(swap_blocks(spec))
        return cm, shape

    (q, r), (s, t) = spec.terms
    if shape == Shape.PRODUCT_PLUS_X:
        return (s == q + 1 and r == m), shape
    return (r == m and s == n and t == m - 1 and q == n - 1), shape


def formula_report(spec: MixedProductSpec) -> InvariantReport:
    size = spec.ambient.size
    reg = reg_formula(spec)
    dim = dim_formula(spec)
    depth = depth_formula(spec)
    cm, shape = cm_classify(spec)
    return InvariantReport(
        dim=dim,
        depth=depth,
        pd=size - depth,
        reg_of_ideal=reg,
        reg_of_quotient=reg - 1,
        cm=cm,
        height=size - dim,
        method=Method.FORMULA,
        field=None,
        case=shape.value,
    )


def _single_reg(ambient: Ambient, k: int, l: int) -> int:
    return reg_formula(MixedProductSpec(ambient, ((k, l),)))


def _single_depth(ambient: Ambient, k: int, l: int) -> int:
    return depth_formula(MixedProductSpec(ambient, ((k, l),)))


def sequence_bounds(spec: MixedProductSpec) -> Tuple[int, int]:
    """(reg upper bound, depth lower bound) for A + B from
    0 -> S/(A ∩ B) -> S/A ⊕ S/B -> S/(A + B) -> 0, where A ∩ B = I_sJ_r.
    """
    classify_shape(spec)
    if len(spec.terms) != 2:
        raise UnsupportedShape(f"{spec.key()}: sequence bounds need two terms")
    ambient = spec.ambient
    (q, r), (s, t) = spec.terms
    reg_upper = max(_single_reg(ambient, s, r) - 1, _single_reg(ambient, q, r), _single_reg(ambient, s, t))
    depth_lower = min(_single_depth(ambient, s, r) - 1, _single_depth(ambient, q, r), _single_depth(ambient, s, t))
    return reg_upper, depth_lower


# =============================================================================
# Witnesses
# =============================================================================

@dataclass(frozen=True)
class SyzygyWitness:
    """f = cofactor_u * e_u - cofactor_v * e_v, a first syzygy of I_qJ_r + I_sJ_t."""
    u: SqFreeMonomial
    v: SqFreeMonomial
    cofactor_u: SqFreeMonomial
    cofactor_v: SqFreeMonomial
    internal_degree: int


def syzygy_witness(spec: MixedProductSpec) -> SyzygyWitness:
    classify_shape(spec)
    if len(spec.terms) != 2:
        raise UnsupportedShape(f"{spec.key()}: the syzygy witness needs two terms")
    ambient = spec.ambient
    (q, r), (s, t) = spec.terms
    y0 = ambient.n

    def block_prefix(x_count: int, y_count: int) -> int:
        return indices_mask(range(x_count)) | indices_mask(range(y0, y0 + y_count))

    u = block_prefix(q, r)
    v = block_prefix(s, t)
    return SyzygyWitness(
        u=SqFreeMonomial(ambient, u),
        v=SqFreeMonomial(ambient, v),
        cofactor_u=SqFreeMonomial(ambient, v & ~u),
        cofactor_v=SqFreeMonomial(ambient, u & ~v),
        internal_degree=bin(u | v).count('1'),
    )


def verify_syzygy_witness(w: SyzygyWitness) -> bool:
    u, v = w.u.mask, w.v.mask
    cu, cv = w.cofactor_u.mask, w.cofactor_v.mask
    # square-free products: disjoint supports whose unions agree
    products_agree = not (cu & u) and not (cv & v) and (cu | u) == (cv | v)
    complementary = cu == v & ~u and cv == u & ~v
    return products_agree and complementary and w.internal_degree == bin(u | v).count('1')


@dataclass(frozen=True)
class KoszulSummand:
    sign: int
    coefficient: SqFreeMonomial
    omitted_y_index: int   # 1-based k: f_k is left out


@dataclass(frozen=True)
class KoszulCycleWitness:
    """z = sum_k sign_k * y_k * (e_1 ∧ ... ∧ e_n) ∧ (∧_{j≠k} f_j) over K(S; x, y) ⊗ S/I_1J_1."""
    ambient: Ambient
    summands: Tuple[KoszulSummand, ...]


def koszul_cycle_witness(ambient: Ambient) -> KoszulCycleWitness:
    if ambient.n == 0 or ambient.m == 0:
        raise EmptyBlock(f"The Koszul cycle needs n, m >= 1, got n={ambient.n}, m={ambient.m}")
    summands = tuple(
        KoszulSummand(
            sign=1 if k % 2 else -1,
            coefficient=SqFreeMonomial.from_indices(ambient, [ambient.n + k - 1]),
            omitted_y_index=k,
        )
        for k in range(1, ambient.m + 1)
    )
    return KoszulCycleWitness(ambient, summands)


def verify_koszul_cycle(w: KoszulCycleWitness) -> bool:
    """True iff every term of ∂z has its coefficient in I_1J_1 or cancels.

    Koszul basis elements are wedges of e_1..e_n, f_1..f_m in that order;
    generator g_i maps to variable i (x's first, then y's).
    """
    ambient = w.ambient
    n = ambient.n
    # (remaining wedge, coefficient as a variable multiset) -> integer coefficient
    boundary: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
    for summand in w.summands:
        omitted = n + summand.omitted_y_index - 1
        wedge = tuple(i for i in range(ambient.size) if i != omitted)
        coefficient = Counter(summand.coefficient.support)
        for pos, g in enumerate(wedge):
            term_sign = summand.sign * (-1 if pos % 2 else 1)
            monomial = coefficient.copy()
            monomial[g] += 1
            key = (wedge[:pos] + wedge[pos + 1:], tuple(sorted(monomial.elements())))
            boundary[key] = boundary.get(key, 0) + term_sign

    for (_, monomial), value in boundary.items():
        if value == 0:
            continue
        variables = set(monomial)
        in_ideal = any(i < n for i in variables) and any(i >= n for i in variables)
        if not in_ideal:
            return False
    return True
