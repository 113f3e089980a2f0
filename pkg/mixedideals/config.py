"""
Layered configuration: System → User → Project mixedideals.yaml, then
command-line flags.

Files use a small YAML subset: `key: value` at the top level, scalars,
flow lists `[a, b]`, block lists of `- item` lines and `#` comments.
Key suffixes choose the merge strategy (see _merge_dicts).
"""

import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from . import settings
from .exceptions import ConfigError

CONFIG_FILE = 'mixedideals.yaml'
CONFIG_DIR = '.mixedideals'

DEFAULTS: Dict[str, Any] = {
    'field': 'q',
    'fields': ['q'],
    'format': 'table',
    'method': 'both',
    'jobs': 1,
    'max_n': 3,
    'max_m': 3,
    'witness_checks': True,
}

_CHOICES = {
    'format': ('table', 'json'),
    'method': ('formula', 'oracle', 'both'),
}


def get_layer_config_paths(project_root: Optional[Path] = None) -> List[Tuple[str, Optional[Path]]]:
    """
    Config file per layer, in merge order; None where the file is absent.
    System: $MIXEDIDEALS_HOME or the package's parent directory.
    """
    home = os.environ.get('MIXEDIDEALS_HOME')
    if not home:
        home = str(Path(__file__).parent.parent)
    if project_root is None:
        project_root = Path.cwd()

    layers = [
        ('System', Path(home) / CONFIG_FILE),
        ('User', Path.home() / CONFIG_DIR / CONFIG_FILE),
        ('Project', project_root / CONFIG_DIR / CONFIG_FILE),
    ]
    return [(name, path if path.is_file() else None) for name, path in layers]


def _parse_scalar(text: str) -> Any:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in ('"', "'"):
        return text[1:-1]
    lowered = text.lower()
    if lowered in ('true', 'yes', 'on'):
        return True
    if lowered in ('false', 'no', 'off'):
        return False
    if lowered in ('null', '~', ''):
        return None
    try:
        return int(text)
    except ValueError:
        return text


def _strip_comment(line: str) -> str:
    quote = None
    for i, c in enumerate(line):
        if c in ('"', "'"):
            if quote is None:
                quote = c
            elif c == quote:
                quote = None
        elif c == '#' and quote is None:
            return line[:i].rstrip()
    return line.rstrip()


def parse_config(text: str, source: str = '<string>') -> Dict[str, Any]:
    result: Dict[str, Any] = {}
    open_list: Optional[str] = None
    for line_num, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        stripped = line.strip()
        indented = line[0] in (' ', '\t')

        if stripped.startswith('- ') or stripped == '-':
            if open_list is None or not indented:
                raise ConfigError("List item without a parent key", source, line_num)
            result[open_list].append(_parse_scalar(stripped[1:]))
            continue
        if indented:
            raise ConfigError("Only top-level keys are supported", source, line_num)
        if ':' not in stripped:
            raise ConfigError(f"Expected 'key: value', got: {stripped}", source, line_num)

        key, _, value = stripped.partition(':')
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError("Empty key", source, line_num)
        open_list = None
        if not value:
            result[key] = []
            open_list = key
        elif value.startswith('['):
            if not value.endswith(']'):
                raise ConfigError(f"Unclosed flow list for '{key}'", source, line_num)
            inner = value[1:-1].strip()
            result[key] = [_parse_scalar(item) for item in inner.split(',')] if inner else []
        else:
            result[key] = _parse_scalar(value)
    return result


def load_config_file(config_file: Path) -> Dict[str, Any]:
    if not config_file.exists():
        return {}
    try:
        return parse_config(config_file.read_text(), str(config_file))
    except ConfigError:
        raise
    except OSError as e:
        raise ConfigError(f"Cannot read: {e}", str(config_file))


def _merge_dicts(base: Dict[str, Any], overlay: Dict[str, Any], layer_name: str) -> Dict[str, Any]:
    """
    Merge overlay into base by key suffix:
    none/'!' overwrite, '?' set if missing, '~' update if present,
    '+' append to list, '-' remove from list.
    """
    result = base.copy()
    for raw_key, value in overlay.items():
        strategy = ''
        key = raw_key
        if raw_key.endswith(('+', '-', '!', '?', '~')):
            strategy = raw_key[-1]
            key = raw_key[:-1]

        if strategy == '?':
            if key not in result:
                result[key] = value
        elif strategy == '~':
            if key in result:
                result[key] = value
        elif strategy == '+':
            current = result.get(key, [])
            extra = value if isinstance(value, list) else [value]
            result[key] = (current if isinstance(current, list) else [current]) + extra
        elif strategy == '-':
            if isinstance(result.get(key), list):
                drop = value if isinstance(value, list) else [value]
                result[key] = [item for item in result[key] if item not in drop]
            else:
                result.pop(key, None)
        else:
            if settings.DEBUG and key in result and result[key] != value:
                print(f"[CONFIG] {layer_name} overwrites '{key}': {result[key]} → {value}", file=sys.stderr)
            result[key] = value
    return result


def _validate(cfg: Dict[str, Any]) -> Dict[str, Any]:
    for key in list(cfg):
        if key not in DEFAULTS:
            if settings.VERBOSE or settings.DEBUG:
                print(f"[CONFIG] Ignoring unknown key '{key}'", file=sys.stderr)
            cfg.pop(key)
    # a removed key falls back to its default
    for key, value in DEFAULTS.items():
        cfg.setdefault(key, list(value) if isinstance(value, list) else value)

    for key in ('jobs', 'max_n', 'max_m'):
        value = cfg[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ConfigError(f"'{key}' must be a non-negative integer, got {value!r}")
    if cfg['jobs'] < 1:
        raise ConfigError("'jobs' must be at least 1")
    if not isinstance(cfg['witness_checks'], bool):
        raise ConfigError(f"'witness_checks' must be true or false, got {cfg['witness_checks']!r}")
    if isinstance(cfg['fields'], str):
        cfg['fields'] = [cfg['fields']]
    cfg['fields'] = [str(f) for f in cfg['fields']]
    cfg['field'] = str(cfg['field'])
    for key, choices in _CHOICES.items():
        if cfg[key] not in choices:
            raise ConfigError(f"'{key}' must be one of {', '.join(choices)}, got {cfg[key]!r}")
    return cfg


def load_settings(project_root: Optional[Path] = None) -> Dict[str, Any]:
    """Defaults merged with every existing layer."""
    result = dict(DEFAULTS)
    for layer_name, path in get_layer_config_paths(project_root):
        if path is None:
            continue
        if settings.VERBOSE or settings.DEBUG:
            print(f"[CONFIG] Loading {layer_name}: {path}", file=sys.stderr)
        result = _merge_dicts(result, load_config_file(path), layer_name)
    return _validate(result)
