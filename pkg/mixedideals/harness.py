"""
Exhaustive formula-vs-oracle sweep over mixed product ideals.

One work unit per (spec, field). Units run in order, or fanned out to a
process pool with --jobs; results are merged in enumeration order so the
report does not depend on the schedule.
"""

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import settings
from .core import AMBIENT_CAP, Ambient, MixedProductSpec, realize_spec
from .exceptions import CapExceeded, InvalidAmbient, InvalidJobs, TeraiMismatch
from .homology import FieldSpec
from .invariants import COMPARED_INVARIANTS, InvariantReport, is_linear_table, oracle_analysis
from .mixed import (
    classify_shape, formula_report, koszul_cycle_witness, syzygy_witness,
    verify_koszul_cycle, verify_syzygy_witness,
)

# Invariant names used for the duality checks in Mismatch records
TERAI = 'terai'
EAGON_REINER = 'eagon_reiner'
FIELD_INDEPENDENCE = 'betti_field_independence'
DUALITY_CHECKS = (TERAI, EAGON_REINER, FIELD_INDEPENDENCE)


@dataclass(frozen=True)
class SweepConfig:
    max_n: int
    max_m: int
    fields: Tuple[FieldSpec, ...] = (FieldSpec(0),)
    include_witness_checks: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.max_n < 0 or self.max_m < 0:
            raise InvalidAmbient(f"Sweep bounds must be >= 0, got max_n={self.max_n}, max_m={self.max_m}")
        if self.max_n + self.max_m > AMBIENT_CAP:
            raise CapExceeded(f"max_n + max_m = {self.max_n + self.max_m} exceeds the cap of {AMBIENT_CAP}")
        if self.jobs < 1:
            raise InvalidJobs(f"jobs must be >= 1, got {self.jobs}")
        object.__setattr__(self, 'fields', tuple(dict.fromkeys(self.fields)))


@dataclass(frozen=True)
class Mismatch:
    spec: str
    field: str
    invariant: str
    formula_value: Any
    oracle_value: Any


@dataclass(frozen=True)
class WitnessFailure:
    kind: str      # 'syzygy', 'koszul' or 'koszul_tor'
    subject: str   # spec key or ambient 'n,m'


@dataclass
class SweepReport:
    config: SweepConfig
    cases_run: int = 0
    mismatches: List[Mismatch] = dc_field(default_factory=list)
    witness_failures: List[WitnessFailure] = dc_field(default_factory=list)
    # shape label -> {'predicted': [keys], 'oracle': [keys]}
    cm_census: Dict[str, Dict[str, List[str]]] = dc_field(default_factory=dict)
    duality_failures: Dict[str, int] = dc_field(default_factory=lambda: {name: 0 for name in DUALITY_CHECKS})
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches


def enumerate_specs(max_n: int, max_m: int) -> List[MixedProductSpec]:
    """All canonical one- and two-term specs for every ambient within the bounds.

    Ambients in (n, m) order; within an ambient single terms come first,
    then pairs (q,r),(s,t) with q < s and t < r.
    """
    if max_n < 0 or max_m < 0:
        raise InvalidAmbient(f"Bounds must be >= 0, got max_n={max_n}, max_m={max_m}")
    if max_n + max_m > AMBIENT_CAP:
        raise CapExceeded(f"max_n + max_m = {max_n + max_m} exceeds the cap of {AMBIENT_CAP}")

    specs: List[MixedProductSpec] = []
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            if n + m == 0:
                continue
            ambient = Ambient(n, m)
            for k in range(n + 1):
                for l in range(m + 1):
                    if (k, l) != (0, 0):
                        specs.append(MixedProductSpec(ambient, ((k, l),)))
            for q in range(n + 1):
                for s in range(q + 1, n + 1):
                    for t in range(m + 1):
                        for r in range(t + 1, m + 1):
                            specs.append(MixedProductSpec(ambient, ((q, r), (s, t))))
    return sorted(specs, key=_spec_order)


def _spec_order(spec: MixedProductSpec) -> Tuple:
    return (spec.ambient.n, spec.ambient.m, len(spec.terms), spec.terms)


@dataclass(frozen=True)
class UnitResult:
    """Outcome of one (spec, field) work unit."""
    spec: MixedProductSpec
    field: FieldSpec
    formula: InvariantReport
    oracle: Optional[InvariantReport]
    betti: Tuple[Tuple[int, int, int], ...] = ()
    dual_linear: Optional[bool] = None
    terai: Optional[Tuple[int, int]] = None   # (reg, pd of dual) when they differ


def run_unit(unit: Tuple[MixedProductSpec, FieldSpec]) -> UnitResult:
    """Formula and oracle for one spec over one field. Module-level so it pickles."""
    spec, field = unit
    formula = formula_report(spec)
    ideal = realize_spec(spec)
    try:
        analysis = oracle_analysis(ideal, field)
    except TeraiMismatch as e:
        return UnitResult(spec, field, formula, None, terai=(e.reg, e.dual_pd))
    return UnitResult(
        spec=spec,
        field=field,
        formula=formula,
        oracle=analysis.report,
        betti=tuple(analysis.table.triples()),
        dual_linear=is_linear_table(analysis.dual, analysis.dual_table),
    )


def _run_units(units: Sequence[Tuple[MixedProductSpec, FieldSpec]], jobs: int) -> List[UnitResult]:
    if jobs == 1 or len(units) < 2:
        return [run_unit(u) for u in units]
    if settings.VERBOSE or settings.DEBUG:
        print(f"[SWEEP] Fanning {len(units)} units out to {jobs} workers", file=sys.stderr)
    chunksize = max(1, len(units) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_unit, units, chunksize=chunksize))


def _compare(result: UnitResult) -> List[Mismatch]:
    key, label = result.spec.key(), result.field.label
    if result.oracle is None:
        reg, dual_pd = result.terai
        return [Mismatch(key, label, TERAI, reg, dual_pd)]
    found = []
    for name in COMPARED_INVARIANTS:
        expected = getattr(result.formula, name)
        actual = getattr(result.oracle, name)
        if expected != actual:
            found.append(Mismatch(key, label, name, expected, actual))
    if result.oracle.cm != result.dual_linear:
        found.append(Mismatch(key, label, EAGON_REINER, result.oracle.cm, result.dual_linear))
    return found


def _betti_text(triples: Sequence[Tuple[int, int, int]]) -> str:
    return ' '.join(f"{i},{j}:{rank}" for i, j, rank in triples)


def run_sweep(cfg: SweepConfig) -> SweepReport:
    started = time.perf_counter()
    report = SweepReport(config=cfg)
    specs = enumerate_specs(cfg.max_n, cfg.max_m)
    units = [(spec, f) for spec in specs for f in cfg.fields]
    if settings.VERBOSE or settings.DEBUG:
        print(f"[SWEEP] {len(specs)} specs x {len(cfg.fields)} fields", file=sys.stderr)

    results = _run_units(units, cfg.jobs)
    report.cases_run = len(results)

    reference: Dict[str, UnitResult] = {}
    for result in results:
        key = result.spec.key()
        found = _compare(result)
        report.mismatches.extend(found)
        for mismatch in found:
            if mismatch.invariant in report.duality_failures:
                report.duality_failures[mismatch.invariant] += 1

        if result.oracle is None:
            continue
        first = reference.setdefault(key, result)
        if first is result:
            _census(report, result)
            if cfg.include_witness_checks:
                _check_tor(report, result)
        elif first.oracle is not None and first.betti != result.betti:
            report.mismatches.append(Mismatch(
                key, result.field.label, FIELD_INDEPENDENCE,
                _betti_text(first.betti), _betti_text(result.betti),
            ))
            report.duality_failures[FIELD_INDEPENDENCE] += 1

    if cfg.include_witness_checks:
        _check_witnesses(report, specs)

    for bucket in report.cm_census.values():
        bucket['predicted'].sort()
        bucket['oracle'].sort()
    report.elapsed = time.perf_counter() - started
    return report


def _census(report: SweepReport, result: UnitResult):
    bucket = report.cm_census.setdefault(classify_shape(result.spec).value, {'predicted': [], 'oracle': []})
    if result.formula.cm:
        bucket['predicted'].append(result.spec.key())
    if result.oracle.cm:
        bucket['oracle'].append(result.spec.key())


def _check_tor(report: SweepReport, result: UnitResult):
    """Tor_{n+m-1}(K, S/I_1J_1) is nonzero."""
    ambient = result.spec.ambient
    if result.spec.terms != ((1, 1),):
        return
    top = ambient.size - 1
    if not any(i == top and rank for i, _, rank in result.betti):
        report.witness_failures.append(WitnessFailure('koszul_tor', f"{ambient.n},{ambient.m}"))


def _check_witnesses(report: SweepReport, specs: Sequence[MixedProductSpec]):
    ambients = []
    for spec in specs:
        if len(spec.terms) == 2 and not verify_syzygy_witness(syzygy_witness(spec)):
            report.witness_failures.append(WitnessFailure('syzygy', spec.key()))
        if spec.ambient not in ambients:
            ambients.append(spec.ambient)
    for ambient in ambients:
        if ambient.n and ambient.m and not verify_koszul_cycle(koszul_cycle_witness(ambient)):
            report.witness_failures.append(WitnessFailure('koszul', f"{ambient.n},{ambient.m}"))
    if settings.VERBOSE or settings.DEBUG:
        print(f"[SWEEP] Witness checks: {len(report.witness_failures)} failures", file=sys.stderr)
