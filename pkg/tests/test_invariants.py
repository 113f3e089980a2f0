import unittest

from hypothesis import given

from mixedideals.core import Ambient, Block, MixedProductSpec, MonomialIdeal, indices_mask, realize_spec, veronese_ideal
from mixedideals.exceptions import AmbientMismatch, UnsupportedIdeal
from mixedideals.homology import FieldSpec
from mixedideals.invariants import (
    BettiTable, Method, betti_product, betti_stats, has_linear_resolution, hochster_betti,
    multigraded_betti, oracle_analysis, oracle_report,
)
from strategies import ORACLE_SETTINGS, proper_ideals

Q = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)


def product(n, m, q, r):
    return realize_spec(MixedProductSpec(Ambient(n, m), ((q, r),)))


class TestHochster(unittest.TestCase):
    def test_veronese_table(self):
        table = hochster_betti(veronese_ideal(Ambient(3, 0), Block.X, 2), Q)
        self.assertEqual(table.entries, {(0, 0): 1, (1, 2): 3, (2, 3): 2})
        self.assertEqual(table.triples(), [(0, 0, 1), (1, 2, 3), (2, 3, 2)])
        self.assertEqual(table.total(1), 3)
        self.assertEqual(betti_stats(table), (2, 1))

    def test_principal_ideal(self):
        ideal = product(1, 1, 1, 1)
        self.assertEqual(hochster_betti(ideal, GF2).entries, {(0, 0): 1, (1, 2): 1})
        self.assertEqual(multigraded_betti(ideal, Q), {(0, 0): 1, (1, 0b11): 1})

    def test_rejects_zero_and_unit(self):
        a = Ambient(2, 0)
        for ideal in (MonomialIdeal.zero(a), MonomialIdeal.unit(a)):
            with self.assertRaises(UnsupportedIdeal):
                hochster_betti(ideal, Q)
            with self.assertRaises(UnsupportedIdeal):
                oracle_report(ideal, Q)

    def test_projective_plane_ideal(self):
        # minimal non-faces of the six-vertex real projective plane
        triples = [(1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 5),
                   (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6), (4, 5, 6)]
        ideal = MonomialIdeal.from_masks(Ambient(6, 0), [indices_mask(v - 1 for v in t) for t in triples])
        over_q, over_gf2 = hochster_betti(ideal, Q), hochster_betti(ideal, GF2)
        self.assertEqual(over_q.get(4, 6), 0)
        self.assertEqual(over_gf2.get(4, 6), 1)
        self.assertEqual(over_gf2.get(3, 6), 1)
        self.assertNotEqual(over_q, over_gf2)

    def test_betti_product_of_disjoint_veroneses(self):
        for n in range(1, 3):
            for m in range(1, 3):
                for q in range(1, n + 1):
                    for r in range(1, m + 1):
                        a = Ambient(n, m)
                        i_q, j_r = veronese_ideal(a, Block.X, q), veronese_ideal(a, Block.Y, r)
                        both = realize_spec(MixedProductSpec(a, ((0, r), (q, 0))))
                        self.assertEqual(hochster_betti(both, Q),
                                         betti_product(hochster_betti(i_q, Q), hochster_betti(j_r, Q)))
                        _, reg_sum = betti_stats(hochster_betti(both, Q))
                        self.assertEqual(reg_sum + 1, q + r - 1)

    def test_betti_product_needs_one_ambient(self):
        t1 = BettiTable(Ambient(1, 0), {(0, 0): 1})
        t2 = BettiTable(Ambient(0, 1), {(0, 0): 1})
        with self.assertRaises(AmbientMismatch):
            betti_product(t1, t2)

    @given(proper_ideals())
    @ORACLE_SETTINGS
    def test_low_degrees_read_the_generators(self, ideal):
        table = hochster_betti(ideal, GF2)
        size = ideal.ambient.size
        self.assertEqual(table.get(0, 0), 1)
        for j in range(1, size + 1):
            self.assertEqual(table.get(0, j), 0, j)
            expected = sum(1 for u in ideal.generators if u.degree == j)
            self.assertEqual(table.get(1, j), expected, j)


class TestOracle(unittest.TestCase):
    def test_veronese_report(self):
        report = oracle_report(veronese_ideal(Ambient(3, 0), Block.X, 2), Q)
        self.assertEqual(
            (report.dim, report.depth, report.pd, report.reg_of_ideal, report.reg_of_quotient, report.cm, report.height),
            (1, 1, 2, 2, 1, True, 2),
        )
        self.assertEqual(report.method, Method.ORACLE)
        self.assertEqual(report.field, Q)

    def test_veronese_baseline(self):
        for n in range(1, 6):
            a = Ambient(n, 0)
            for k in range(1, n + 1):
                report = oracle_report(veronese_ideal(a, Block.X, k), GF2)
                self.assertEqual(report.reg_of_ideal, k)
                self.assertEqual(report.pd, n - k + 1)
                self.assertEqual(report.dim, k - 1)
                self.assertTrue(report.cm)

    def test_analysis_carries_the_dual(self):
        analysis = oracle_analysis(product(2, 2, 1, 1), Q)
        self.assertEqual(analysis.dual.gens, frozenset({0b0011, 0b1100}))
        self.assertEqual(betti_stats(analysis.dual_table)[0], analysis.report.reg_of_ideal)

    def test_linear_resolution(self):
        self.assertTrue(has_linear_resolution(veronese_ideal(Ambient(3, 0), Block.X, 2), Q))
        # (x1x2, y1): mixed degrees
        a = Ambient(2, 1)
        self.assertFalse(has_linear_resolution(MonomialIdeal(a, frozenset({0b011, 0b100})), Q))
        # (x1y1, x2y2): one degree, but reg 3
        b = Ambient(2, 2)
        self.assertFalse(has_linear_resolution(MonomialIdeal(b, frozenset({0b0101, 0b1010})), Q))

    @given(proper_ideals())
    @ORACLE_SETTINGS
    def test_terai_holds(self, ideal):
        analysis = oracle_analysis(ideal, GF2)
        self.assertEqual(betti_stats(analysis.dual_table)[0], analysis.report.reg_of_ideal)
        self.assertGreaterEqual(analysis.report.dim, analysis.report.depth)


class TestFieldIndependence(unittest.TestCase):
    def test_mixed_product_tables(self):
        for n, m in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)]:
            a = Ambient(n, m)
            for q in range(n + 1):
                for r in range(m + 1):
                    if (q, r) == (0, 0):
                        continue
                    ideal = realize_spec(MixedProductSpec(a, ((q, r),)))
                    reference = hochster_betti(ideal, Q)
                    with self.subTest(n=n, m=m, q=q, r=r):
                        self.assertEqual(hochster_betti(ideal, GF2), reference)
                        self.assertEqual(hochster_betti(ideal, GF3), reference)


if __name__ == "__main__":
    unittest.main()
