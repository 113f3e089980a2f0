import dataclasses
import unittest

from mixedideals.core import Ambient, MixedProductSpec
from mixedideals.exceptions import CapExceeded, InvalidAmbient, InvalidJobs
from mixedideals.harness import (
    EAGON_REINER, TERAI, SweepConfig, UnitResult, _compare, enumerate_specs, run_sweep, run_unit,
)
from mixedideals.homology import FieldSpec
from mixedideals.report import sweep_to_dict

Q = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)


def spec(n, m, *terms):
    return MixedProductSpec(Ambient(n, m), tuple(terms))


def without_elapsed(report):
    data = sweep_to_dict(report)
    data.pop('elapsed')
    return data


class TestEnumeration(unittest.TestCase):
    def test_trivial_bounds(self):
        self.assertEqual(enumerate_specs(0, 0), [])
        self.assertEqual(enumerate_specs(1, 0), [spec(1, 0, (1, 0))])

    def test_contains_both_shapes(self):
        specs = enumerate_specs(1, 1)
        self.assertIn(spec(1, 1, (1, 1)), specs)
        self.assertIn(spec(1, 1, (0, 1), (1, 0)), specs)
        self.assertEqual(len(specs), 6)

    def test_canonical_and_ordered(self):
        specs = enumerate_specs(3, 2)
        self.assertTrue(all(s.is_canonical and len(s.terms) in (1, 2) for s in specs))
        self.assertEqual(len({s.key() for s in specs}), len(specs))
        self.assertEqual(specs, enumerate_specs(3, 2))
        ambients = [(s.ambient.n, s.ambient.m) for s in specs]
        self.assertEqual(ambients, sorted(ambients))

    def test_limits(self):
        with self.assertRaises(CapExceeded):
            enumerate_specs(9, 8)
        with self.assertRaises(InvalidAmbient):
            enumerate_specs(-1, 2)


class TestSweepConfig(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(CapExceeded):
            SweepConfig(10, 10)
        with self.assertRaises(InvalidJobs):
            SweepConfig(1, 1, jobs=0)
        self.assertEqual(SweepConfig(1, 1, [Q]).fields, (Q,))

    def test_repeated_fields_collapse(self):
        cfg = SweepConfig(1, 1, (GF2, Q, GF2, Q))
        self.assertEqual(cfg.fields, (GF2, Q))
        self.assertEqual(run_sweep(cfg).cases_run, 2 * len(enumerate_specs(1, 1)))


class TestSweep(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.small = run_sweep(SweepConfig(2, 2, (Q, GF2, GF3)))

    def test_empty_sweep(self):
        report = run_sweep(SweepConfig(0, 0, (Q,)))
        self.assertEqual(report.cases_run, 0)
        self.assertTrue(report.passed)

    def test_small_sweep_passes(self):
        report = run_sweep(SweepConfig(1, 1, (Q,)))
        self.assertGreaterEqual(report.cases_run, 4)
        self.assertEqual(report.mismatches, [])
        self.assertEqual(report.witness_failures, [])

    def test_counts_units_per_field(self):
        self.assertEqual(self.small.cases_run, 3 * len(enumerate_specs(2, 2)))
        self.assertTrue(self.small.passed)
        self.assertEqual(self.small.witness_failures, [])
        self.assertEqual(self.small.duality_failures,
                         {'terai': 0, 'eagon_reiner': 0, 'betti_field_independence': 0})

    def test_cm_census_matches_prediction(self):
        self.assertTrue(self.small.cm_census)
        for label, bucket in self.small.cm_census.items():
            self.assertEqual(bucket['predicted'], bucket['oracle'], label)
        self.assertIn('2,2:1,2+2,1', self.small.cm_census['two_products']['oracle'])

    def test_deterministic(self):
        cfg = SweepConfig(2, 1, (Q, GF2))
        self.assertEqual(without_elapsed(run_sweep(cfg)), without_elapsed(run_sweep(cfg)))

    def test_parallel_matches_serial(self):
        serial = without_elapsed(run_sweep(SweepConfig(2, 1, (GF2,))))
        parallel = without_elapsed(run_sweep(SweepConfig(2, 1, (GF2,), jobs=2)))
        serial['config'].pop('jobs')
        parallel['config'].pop('jobs')
        self.assertEqual(serial, parallel)

    def test_without_witness_checks(self):
        report = run_sweep(SweepConfig(1, 1, (Q,), include_witness_checks=False))
        self.assertTrue(report.passed)
        self.assertEqual(report.witness_failures, [])


class TestCompare(unittest.TestCase):
    def test_reports_every_difference(self):
        result = run_unit((spec(2, 2, (1, 2), (2, 1)), Q))
        self.assertEqual(_compare(result), [])

        wrong = dataclasses.replace(result.oracle, dim=5, cm=False)
        found = _compare(dataclasses.replace(result, oracle=wrong))
        self.assertEqual([(x.invariant, x.formula_value, x.oracle_value) for x in found], [
            ('dim', 2, 5),
            ('cm', True, False),
            (EAGON_REINER, False, True),
        ])

    def test_records_terai_failures(self):
        formula = run_unit((spec(1, 1, (1, 1)), Q)).formula
        result = UnitResult(spec(1, 1, (1, 1)), Q, formula=formula, oracle=None, terai=(2, 3))
        found = _compare(result)
        self.assertEqual([(x.spec, x.field, x.invariant, x.formula_value, x.oracle_value) for x in found], [
            ('1,1:1,1', 'q', TERAI, 2, 3),
        ])


if __name__ == "__main__":
    unittest.main()
