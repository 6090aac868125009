"""
Report emission: a TSV table (header row, '#' config lines first) and a
JSON document with the full structure, both embedding the resolved
configuration. Output is byte-identical for identical inputs.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

from utils.helpers import RNG_ALGORITHM

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '.6f'


def format_value(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    return str(value).replace('\t', ' ').replace('\n', ' ')


def report_config(settings: Optional[Dict[str, Any]] = None, **extra: Any) -> Dict[str, Any]:
    """Resolved configuration embedded in every report"""
    config: Dict[str, Any] = {'rng': RNG_ALGORITHM}
    if settings:
        config.update(settings)
    config.update({key: value for key, value in extra.items() if value is not None})
    return config


class ReportWriter:
    """Writes <name>.tsv and <name>.json into a report directory"""

    def __init__(self, report_dir: str = 'reports'):
        self.report_dir = report_dir
        os.makedirs(self.report_dir, exist_ok=True)

    def path_for(self, name: str, suffix: str) -> str:
        return os.path.join(self.report_dir, f"{name}.{suffix}")

    def write_tsv(self, name: str, columns: Sequence[str], rows: Sequence[Dict[str, Any]],
                  config: Optional[Dict[str, Any]] = None) -> str:
        path = self.path_for(name, 'tsv')
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            for key in sorted(config or {}):
                handle.write(f"# {key}: {format_value(config[key])}\n")
            handle.write('\t'.join(columns) + '\n')
            for row in rows:
                handle.write('\t'.join(format_value(row.get(column)) for column in columns) + '\n')
        logger.debug("Wrote %d rows to %s", len(rows), path)
        return path

    def write_json(self, name: str, payload: Dict[str, Any], config: Optional[Dict[str, Any]] = None) -> str:
        path = self.path_for(name, 'json')
        document = {'config': config or {}, **payload}
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(document, handle, ensure_ascii=False, indent=2, sort_keys=True)
            handle.write('\n')
        return path

    def write(self, name: str, columns: Sequence[str], rows: Sequence[Dict[str, Any]],
              payload: Dict[str, Any], config: Optional[Dict[str, Any]] = None) -> List[str]:
        return [self.write_tsv(name, columns, rows, config), self.write_json(name, payload, config)]
