import dataclasses
import json
import unittest

from mixedideals.core import Ambient, Block, MixedProductSpec, MonomialIdeal, minimal_primes, alexander_dual, realize_spec, veronese_ideal
from mixedideals.harness import Mismatch, SweepConfig, WitnessFailure, run_sweep
from mixedideals.homology import FieldSpec
from mixedideals.invariants import hochster_betti, oracle_report
from mixedideals.mixed import formula_report, koszul_cycle_witness, syzygy_witness
from mixedideals.report import (
    InvariantDocument, document_to_dict, dual_to_dict, render_betti_table, render_dual,
    render_invariants, render_koszul, render_sweep, render_syzygy, report_from_json,
    report_to_json, sweep_report_from_json, sweep_report_to_json,
)

GF2 = FieldSpec.prime(2)


class TestInvariantDocuments(unittest.TestCase):
    def setUp(self):
        self.spec = MixedProductSpec(Ambient(2, 2), ((1, 2), (2, 1)))
        self.doc = InvariantDocument(
            ambient=self.spec.ambient,
            field=GF2,
            terms=self.spec.terms,
            formula=formula_report(self.spec),
            oracle=oracle_report(realize_spec(self.spec), GF2),
            betti=tuple(hochster_betti(realize_spec(self.spec), GF2).triples()),
        )

    def test_schema(self):
        data = document_to_dict(self.doc)
        self.assertEqual(list(data), ['ambient', 'ideal', 'field', 'formula', 'oracle', 'betti'])
        self.assertEqual(data['ambient'], {'n': 2, 'm': 2})
        self.assertEqual(data['ideal'], [[1, 2], [2, 1]])
        self.assertEqual(data['field'], 'gf2')
        self.assertEqual(data['formula'], {
            'dim': 2, 'depth': 2, 'pd': 2, 'reg_ideal': 3, 'reg_quotient': 2,
            'cm': True, 'height': 2, 'case': 'two_products',
        })
        self.assertIsNone(data['oracle']['case'])
        self.assertEqual(data['betti'], sorted(data['betti']))

    def test_json_round_trip(self):
        self.assertEqual(report_from_json(report_to_json(self.doc)), self.doc)

    def test_generators_round_trip(self):
        ideal = MonomialIdeal(Ambient(1, 1), frozenset({0b11}))
        doc = InvariantDocument(Ambient(1, 1), GF2, generators=('x1y1',), oracle=oracle_report(ideal, GF2))
        data = json.loads(report_to_json(doc))
        self.assertNotIn('ideal', data)
        self.assertNotIn('formula', data)
        self.assertEqual(report_from_json(report_to_json(doc)), doc)

    def test_agreement(self):
        self.assertTrue(self.doc.agrees)
        broken = dataclasses.replace(self.doc, oracle=dataclasses.replace(self.doc.oracle, depth=1))
        self.assertFalse(broken.agrees)
        self.assertIn('!', render_invariants(broken, str(self.spec)))
        self.assertNotIn('!', render_invariants(self.doc, str(self.spec)))

    def test_table_rendering(self):
        text = render_invariants(self.doc, str(self.spec))
        self.assertIn('ideal:   I_1J_2 + I_2J_1', text)
        self.assertIn('case:    two_products', text)
        self.assertIn('cm             yes      yes', text)


class TestTextRenderers(unittest.TestCase):
    def test_betti_table_layout(self):
        table = hochster_betti(veronese_ideal(Ambient(3, 0), Block.X, 2), GF2)
        self.assertEqual(render_betti_table(table), '\n'.join([
            '       0 1 2',
            'total: 1 3 2',
            '    0: 1 . .',
            '    1: . 3 2',
        ]))

    def test_dual(self):
        ideal = realize_spec(MixedProductSpec(Ambient(1, 1), ((1, 1),)))
        dual = alexander_dual(ideal, ideal.ambient.full_mask)
        primes = minimal_primes(ideal)
        self.assertIn('dual:   (x1, y1)', render_dual(ideal, dual, primes))
        self.assertEqual(dual_to_dict(ideal, dual, primes)['minimal_primes'], [['x1'], ['y1']])

    def test_witnesses(self):
        w = syzygy_witness(MixedProductSpec(Ambient(2, 2), ((1, 2), (2, 1))))
        self.assertEqual(render_syzygy(w, True), 'syzygy: x2*e[x1y1y2] - y2*e[x1x2y1]  degree 4  verified')
        k = koszul_cycle_witness(Ambient(1, 2))
        self.assertEqual(render_koszul(k, True), 'koszul: + y1*e1^f2 - y2*e1^f1  verified')


class TestSweepDocuments(unittest.TestCase):
    def test_round_trip(self):
        report = run_sweep(SweepConfig(1, 1, (FieldSpec.rationals(), GF2)))
        report.elapsed = 1.25
        self.assertEqual(sweep_report_from_json(sweep_report_to_json(report)), report)

    def test_round_trip_with_failures(self):
        report = run_sweep(SweepConfig(0, 1, (GF2,), include_witness_checks=False))
        report.mismatches.append(Mismatch('0,1:0,1', 'gf2', 'dim', 0, 1))
        report.mismatches.append(Mismatch('0,1:0,1', 'gf2', 'betti_field_independence', '0,0:1', '0,0:1 1,1:1'))
        report.witness_failures.append(WitnessFailure('koszul', '1,1'))
        report.elapsed = 0.5
        decoded = sweep_report_from_json(sweep_report_to_json(report))
        self.assertEqual(decoded, report)
        self.assertFalse(decoded.passed)
        text = render_sweep(decoded)
        self.assertIn('mismatches:       2', text)
        self.assertIn('witness koszul failed: 1,1', text)


if __name__ == "__main__":
    unittest.main()
