"""
Report encoding: stable JSON documents and aligned plain-text tables.

Invariant document keys: ambient {n, m}, ideal [[k, l], ...] (or generators
[...] for an explicit ideal), field, formula/oracle blocks, optional betti
[[i, j, rank], ...].
"""

import json
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from .core import Ambient, MonomialIdeal, Term, format_prime, mask_sort_key
from .harness import Mismatch, SweepConfig, SweepReport, WitnessFailure
from .homology import FieldSpec, parse_field
from .invariants import BettiTable, InvariantReport, Method
from .mixed import KoszulCycleWitness, SyzygyWitness

_BLOCK_KEYS = ('dim', 'depth', 'pd', 'reg_ideal', 'reg_quotient', 'cm', 'height', 'case')
_ATTRIBUTE = {'reg_ideal': 'reg_of_ideal', 'reg_quotient': 'reg_of_quotient'}


@dataclass(frozen=True)
class InvariantDocument:
    """One `invariants` or `betti` result as it is written out."""
    ambient: Ambient
    field: FieldSpec
    terms: Optional[Tuple[Term, ...]] = None
    generators: Optional[Tuple[str, ...]] = None
    formula: Optional[InvariantReport] = None
    oracle: Optional[InvariantReport] = None
    betti: Optional[Tuple[Tuple[int, int, int], ...]] = None

    @property
    def agrees(self) -> bool:
        """Formula and oracle match on every shared key (vacuous with one side)."""
        if self.formula is None or self.oracle is None:
            return True
        return all(_block_value(self.formula, k) == _block_value(self.oracle, k) for k in _BLOCK_KEYS if k != 'case')


def _block_value(report: InvariantReport, key: str) -> Any:
    return getattr(report, _ATTRIBUTE.get(key, key))


def report_block(report: InvariantReport) -> Dict[str, Any]:
    return {key: _block_value(report, key) for key in _BLOCK_KEYS}


def _report_from_block(block: Dict[str, Any], method: Method, field: Optional[FieldSpec]) -> InvariantReport:
    values = {_ATTRIBUTE.get(key, key): block.get(key) for key in _BLOCK_KEYS}
    return InvariantReport(method=method, field=field, **values)


def document_to_dict(doc: InvariantDocument) -> Dict[str, Any]:
    data: Dict[str, Any] = {'ambient': {'n': doc.ambient.n, 'm': doc.ambient.m}}
    if doc.terms is not None:
        data['ideal'] = [[k, l] for k, l in doc.terms]
    if doc.generators is not None:
        data['generators'] = list(doc.generators)
    data['field'] = doc.field.label
    if doc.formula is not None:
        data['formula'] = report_block(doc.formula)
    if doc.oracle is not None:
        data['oracle'] = report_block(doc.oracle)
    if doc.betti is not None:
        data['betti'] = [list(t) for t in sorted(doc.betti)]
    return data


def report_to_json(doc: InvariantDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2, ensure_ascii=False)


def report_from_json(text: str) -> InvariantDocument:
    data = json.loads(text)
    ambient = Ambient(data['ambient']['n'], data['ambient']['m'])
    field = parse_field(data['field'])
    terms = tuple((k, l) for k, l in data['ideal']) if 'ideal' in data else None
    generators = tuple(data['generators']) if 'generators' in data else None
    formula = _report_from_block(data['formula'], Method.FORMULA, None) if 'formula' in data else None
    oracle = _report_from_block(data['oracle'], Method.ORACLE, field) if 'oracle' in data else None
    betti = tuple((i, j, r) for i, j, r in data['betti']) if 'betti' in data else None
    return InvariantDocument(ambient, field, terms, generators, formula, oracle, betti)


# =============================================================================
# Sweep reports
# =============================================================================

def sweep_to_dict(report: SweepReport) -> Dict[str, Any]:
    cfg = report.config
    return {
        'config': {
            'max_n': cfg.max_n,
            'max_m': cfg.max_m,
            'fields': [f.label for f in cfg.fields],
            'include_witness_checks': cfg.include_witness_checks,
            'jobs': cfg.jobs,
        },
        'passed': report.passed,
        'cases_run': report.cases_run,
        'mismatches': [
            {'spec': x.spec, 'field': x.field, 'invariant': x.invariant,
             'formula': x.formula_value, 'oracle': x.oracle_value}
            for x in report.mismatches
        ],
        'witness_failures': [{'kind': w.kind, 'subject': w.subject} for w in report.witness_failures],
        'cm_census': report.cm_census,
        'duality_failures': report.duality_failures,
        'elapsed': round(report.elapsed, 3),
    }


def sweep_report_to_json(report: SweepReport) -> str:
    return json.dumps(sweep_to_dict(report), indent=2, ensure_ascii=False)


def sweep_report_from_json(text: str) -> SweepReport:
    data = json.loads(text)
    c = data['config']
    cfg = SweepConfig(
        max_n=c['max_n'],
        max_m=c['max_m'],
        fields=tuple(parse_field(f) for f in c['fields']),
        include_witness_checks=c['include_witness_checks'],
        jobs=c['jobs'],
    )
    return SweepReport(
        config=cfg,
        cases_run=data['cases_run'],
        mismatches=[
            Mismatch(x['spec'], x['field'], x['invariant'], x['formula'], x['oracle'])
            for x in data['mismatches']
        ],
        witness_failures=[WitnessFailure(w['kind'], w['subject']) for w in data['witness_failures']],
        cm_census=data['cm_census'],
        duality_failures=data['duality_failures'],
        elapsed=data['elapsed'],
    )


# =============================================================================
# Plain-text tables
# =============================================================================

def _fmt(value: Any) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    return str(value)


def render_invariants(doc: InvariantDocument, ideal_text: str) -> str:
    lines = [
        f"ambient: n={doc.ambient.n} m={doc.ambient.m}",
        f"ideal:   {ideal_text}",
        f"field:   {doc.field.label}",
    ]
    case = doc.formula.case if doc.formula is not None else None
    if case:
        lines.append(f"case:    {case}")
    lines.append('')

    columns = [name for name, block in (('FORMULA', doc.formula), ('ORACLE', doc.oracle)) if block is not None]
    lines.append(f"{'INVARIANT':<14}" + ''.join(f" {c:<8}" for c in columns))
    for key in _BLOCK_KEYS:
        if key == 'case':
            continue
        cells = [_fmt(_block_value(b, key)) for b in (doc.formula, doc.oracle) if b is not None]
        flag = '  !' if len(set(cells)) > 1 else ''
        lines.append(f"{key:<14}" + ''.join(f" {c:<8}" for c in cells).rstrip() + flag)
    return '\n'.join(lines)


def render_betti_table(table: BettiTable) -> str:
    """Columns are homological degrees i, rows j - i; '.' marks zero."""
    if not table.entries:
        return 'total:'
    max_i = max(i for i, _ in table.entries)
    max_row = max(j - i for i, j in table.entries)
    header = [''] + [str(i) for i in range(max_i + 1)]
    rows = [['total:'] + [str(table.total(i)) for i in range(max_i + 1)]]
    for row in range(max_row + 1):
        cells = [str(table.get(i, i + row)) for i in range(max_i + 1)]
        rows.append([f"{row}:"] + [c if c != '0' else '.' for c in cells])

    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
    out = []
    for r in [header] + rows:
        out.append(' '.join(cell.rjust(widths[c]) for c, cell in enumerate(r)).rstrip())
    return '\n'.join(out)


def render_multigraded(ambient: Ambient, multi: Dict[Tuple[int, int], int]) -> str:
    lines = [f"{'I':<3} {'W':<24} RANK"]
    for i, w in sorted(multi, key=lambda k: (k[0], mask_sort_key(k[1]))):
        names = ''.join(ambient.variable_name(v) for v in range(ambient.size) if w >> v & 1) or '1'
        lines.append(f"{i:<3} {names:<24} {multi[(i, w)]}")
    return '\n'.join(lines)


def render_dual(ideal: MonomialIdeal, dual: MonomialIdeal, primes: Sequence[frozenset]) -> str:
    lines = [f"ideal:  {ideal}", f"dual:   {dual}", "minimal primes:"]
    lines.extend(f"  {format_prime(ideal.ambient, p)}" for p in primes)
    return '\n'.join(lines)


def dual_to_dict(ideal: MonomialIdeal, dual: MonomialIdeal, primes: Sequence[frozenset]) -> Dict[str, Any]:
    ambient = ideal.ambient
    return {
        'ambient': {'n': ambient.n, 'm': ambient.m},
        'generators': [str(u) for u in ideal.generators],
        'dual': [str(u) for u in dual.generators],
        'minimal_primes': [[ambient.variable_name(i) for i in sorted(p)] for p in primes],
    }


def render_syzygy(w: SyzygyWitness, ok: bool) -> str:
    return (f"syzygy: {w.cofactor_u}*e[{w.u}] - {w.cofactor_v}*e[{w.v}]"
            f"  degree {w.internal_degree}  {'verified' if ok else 'FAILED'}")


def render_koszul(w: KoszulCycleWitness, ok: bool) -> str:
    n = w.ambient.n
    x_wedge = '^'.join(f"e{i}" for i in range(1, n + 1))
    parts = []
    for s in w.summands:
        f_wedge = '^'.join(f"f{j}" for j in range(1, w.ambient.m + 1) if j != s.omitted_y_index)
        wedge = x_wedge + (f"^{f_wedge}" if f_wedge else '')
        parts.append(f"{'+' if s.sign > 0 else '-'} {s.coefficient}*{wedge}")
    return f"koszul: {' '.join(parts)}  {'verified' if ok else 'FAILED'}"


def witness_to_dict(syzygy: Optional[Tuple[SyzygyWitness, bool]],
                    koszul: Optional[Tuple[KoszulCycleWitness, bool]]) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    if syzygy is not None:
        w, ok = syzygy
        data['syzygy'] = {
            'u': str(w.u), 'v': str(w.v),
            'cofactor_u': str(w.cofactor_u), 'cofactor_v': str(w.cofactor_v),
            'internal_degree': w.internal_degree, 'verified': ok,
        }
    if koszul is not None:
        w, ok = koszul
        data['koszul'] = {
            'summands': [[s.sign, str(s.coefficient), s.omitted_y_index] for s in w.summands],
            'verified': ok,
        }
    return data


def render_sweep(report: SweepReport) -> str:
    lines = [
        f"cases run:        {report.cases_run}",
        f"mismatches:       {len(report.mismatches)}",
        f"witness failures: {len(report.witness_failures)}",
        f"elapsed:          {report.elapsed:.2f}s",
    ]
    if report.mismatches:
        lines.append('')
        lines.append(f"{'SPEC':<20} {'FIELD':<6} {'INVARIANT':<26} {'FORMULA':<10} ORACLE")
        for x in report.mismatches:
            lines.append(f"{x.spec:<20} {x.field:<6} {x.invariant:<26} {_fmt(x.formula_value):<10} {_fmt(x.oracle_value)}")
    for w in report.witness_failures:
        lines.append(f"witness {w.kind} failed: {w.subject}")
    if report.cm_census:
        lines.append('')
        lines.append(f"{'CASE':<24} {'CM PREDICTED':>12} {'CM ORACLE':>10}")
        for label in sorted(report.cm_census):
            bucket = report.cm_census[label]
            lines.append(f"{label:<24} {len(bucket['predicted']):>12} {len(bucket['oracle']):>10}")
    return '\n'.join(lines)
