"""
mixedideals entry point: python -m mixedideals
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from . import settings
from .cli import field_from_flag, fields_from_flag, parse_args
from .config import load_settings
from .core import (
    Ambient, MixedProductSpec, MonomialIdeal, alexander_dual, canonicalize_spec,
    minimal_primes, parse_generators, parse_terms, realize_spec,
)
from .exceptions import ConfigError, IdealError, InvalidField, UsageError
from .harness import SweepConfig, run_sweep
from .homology import FieldSpec, parse_field
from .invariants import hochster_betti, oracle_report
from .mixed import (
    formula_report, koszul_cycle_witness, syzygy_witness,
    verify_koszul_cycle, verify_syzygy_witness,
)
from .report import (
    InvariantDocument, document_to_dict, dual_to_dict, render_betti_table, render_dual,
    render_invariants, render_koszul, render_multigraded, render_sweep, render_syzygy,
    sweep_report_to_json, witness_to_dict,
)


def main(argv=None):
    """Main entry point."""
    args = parse_args(argv)
    try:
        cfg = load_settings()
        if args.command == 'invariants':
            code = cmd_invariants(args, cfg)
        elif args.command == 'betti':
            code = cmd_betti(args, cfg)
        elif args.command == 'sweep':
            code = cmd_sweep(args, cfg)
        elif args.command == 'witness':
            code = cmd_witness(args, cfg)
        elif args.command == 'dual':
            code = cmd_dual(args, cfg)
        else:
            code = 2
    except UsageError as e:
        print(f"Usage error: {e}", file=sys.stderr)
        if settings.DEBUG: raise
        sys.exit(2)
    except IdealError as e:
        print(f"Error: {e}", file=sys.stderr)
        if settings.DEBUG: raise
        sys.exit(1)
    except Exception as e:
        print(f"Unexpected error: {e}", file=sys.stderr)
        if settings.DEBUG: raise
        sys.exit(1)
    sys.exit(code)


# =============================================================================
# Helpers
# =============================================================================

def _output_format(args, cfg: Dict[str, Any]) -> str:
    """--format wins; a bare --out writes JSON; otherwise the configured format."""
    if args.format:
        return args.format
    if args.out:
        return 'json'
    return cfg['format']


def _emit(text: str, out: Optional[str]):
    if not out:
        print(text)
        return
    Path(out).write_text(text + '\n', encoding='utf-8')
    if settings.VERBOSE or settings.DEBUG:
        print(f"[CLI] Wrote {out}", file=sys.stderr)


def _field(args, cfg: Dict[str, Any]) -> FieldSpec:
    if args.field:
        return field_from_flag(args.field)
    try:
        return parse_field(cfg['field'])
    except InvalidField as e:
        raise ConfigError(f"field: {e}")


def _target(args) -> Tuple[Ambient, Optional[MixedProductSpec], MonomialIdeal]:
    """Ambient, canonical spec (None for --gens) and the ideal named on the command line."""
    gens = getattr(args, 'gens', None)
    if args.terms and gens:
        raise UsageError('--gens', 'give either --terms or --gens, not both')
    if not args.terms and not gens:
        raise UsageError('--terms', 'required (or --gens)')
    ambient = Ambient(args.n, args.m)
    if gens:
        return ambient, None, parse_generators(ambient, gens)
    spec = canonicalize_spec(MixedProductSpec(ambient, tuple(parse_terms(args.terms))))
    if settings.VERBOSE or settings.DEBUG:
        print(f"[CLI] Canonical spec {spec.key()}: {spec}", file=sys.stderr)
    return ambient, spec, realize_spec(spec)


# =============================================================================
# Commands
# =============================================================================

def cmd_invariants(args, cfg: Dict[str, Any]) -> int:
    ambient, spec, ideal = _target(args)
    field = _field(args, cfg)
    method = args.method or cfg['method']
    if spec is None and method != 'oracle':
        if args.method == 'formula':
            raise UsageError('--method', 'the closed formulas need --terms')
        if settings.VERBOSE or settings.DEBUG:
            print("[CLI] Explicit generators: oracle only", file=sys.stderr)
        method = 'oracle'

    doc = InvariantDocument(
        ambient=ambient,
        field=field,
        terms=spec.terms if spec is not None else None,
        generators=tuple(str(u) for u in ideal.generators) if spec is None else None,
        formula=formula_report(spec) if method in ('formula', 'both') else None,
        oracle=oracle_report(ideal, field) if method in ('oracle', 'both') else None,
    )
    if _output_format(args, cfg) == 'json':
        _emit(json.dumps(document_to_dict(doc), indent=2, ensure_ascii=False), args.out)
    else:
        _emit(render_invariants(doc, str(spec) if spec is not None else str(ideal)), args.out)
    if not doc.agrees:
        print("Error: formula and oracle disagree", file=sys.stderr)
        return 1
    return 0


def cmd_betti(args, cfg: Dict[str, Any]) -> int:
    ambient, spec, ideal = _target(args)
    field = _field(args, cfg)
    table = hochster_betti(ideal, field)

    if _output_format(args, cfg) == 'json':
        doc = InvariantDocument(
            ambient=ambient,
            field=field,
            terms=spec.terms if spec is not None else None,
            generators=tuple(str(u) for u in ideal.generators) if spec is None else None,
            betti=tuple(table.triples()),
        )
        data = document_to_dict(doc)
        if args.multigraded:
            data['multigraded'] = [
                [i, ''.join(ambient.variable_name(v) for v in range(ambient.size) if w >> v & 1) or '1', rank]
                for (i, w), rank in sorted(table.multigraded.items())
            ]
        _emit(json.dumps(data, indent=2, ensure_ascii=False), args.out)
    else:
        text = render_betti_table(table)
        if args.multigraded:
            text += '\n\n' + render_multigraded(ambient, table.multigraded)
        _emit(text, args.out)
    return 0


def cmd_sweep(args, cfg: Dict[str, Any]) -> int:
    if args.fields:
        fields = fields_from_flag(args.fields)
    else:
        try:
            fields = [parse_field(label) for label in cfg['fields']]
        except InvalidField as e:
            raise ConfigError(f"fields: {e}")
    jobs = args.jobs if args.jobs is not None else cfg['jobs']
    if jobs < 1:
        raise UsageError('--jobs', f"must be at least 1, got {jobs}")

    sweep_cfg = SweepConfig(
        max_n=args.max_n if args.max_n is not None else cfg['max_n'],
        max_m=args.max_m if args.max_m is not None else cfg['max_m'],
        fields=tuple(fields),
        include_witness_checks=cfg['witness_checks'] and not args.no_witness,
        jobs=jobs,
    )
    report = run_sweep(sweep_cfg)

    if _output_format(args, cfg) == 'json':
        _emit(sweep_report_to_json(report), args.out)
    else:
        _emit(render_sweep(report), args.out)

    ok = report.passed and not report.witness_failures
    if not settings.QUIET:
        verdict = 'passed' if ok else 'FAILED'
        print(f"[SWEEP] {verdict}: {report.cases_run} cases, {len(report.mismatches)} mismatches, "
              f"{len(report.witness_failures)} witness failures in {report.elapsed:.2f}s", file=sys.stderr)
    return 0 if ok else 1


def cmd_witness(args, cfg: Dict[str, Any]) -> int:
    ambient = Ambient(args.n, args.m)
    syzygy = None
    if args.terms:
        spec = canonicalize_spec(MixedProductSpec(ambient, tuple(parse_terms(args.terms))))
        w = syzygy_witness(spec)
        syzygy = (w, verify_syzygy_witness(w))
    koszul = None
    if not args.terms or (ambient.n and ambient.m):
        k = koszul_cycle_witness(ambient)
        koszul = (k, verify_koszul_cycle(k))

    if _output_format(args, cfg) == 'json':
        _emit(json.dumps(witness_to_dict(syzygy, koszul), indent=2, ensure_ascii=False), args.out)
    else:
        lines = []
        if syzygy is not None:
            lines.append(render_syzygy(*syzygy))
        if koszul is not None:
            lines.append(render_koszul(*koszul))
        _emit('\n'.join(lines), args.out)

    verdicts = [pair[1] for pair in (syzygy, koszul) if pair is not None]
    return 0 if all(verdicts) else 1


def cmd_dual(args, cfg: Dict[str, Any]) -> int:
    ambient, _, ideal = _target(args)
    dual = alexander_dual(ideal, ambient.full_mask)
    primes = minimal_primes(ideal)
    if _output_format(args, cfg) == 'json':
        _emit(json.dumps(dual_to_dict(ideal, dual, primes), indent=2, ensure_ascii=False), args.out)
    else:
        _emit(render_dual(ideal, dual, primes), args.out)
    return 0


if __name__ == '__main__':
    main()
