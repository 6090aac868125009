"""
JSONL pool files and decode outputs

Pool record, one per line:
    {"id": "s1", "source": "...", "reference": "...", "samples": [...], "beam": [...]}
reference and beam are optional. Decode output records are
DecodeResult.to_dict() in input order.
"""

import json
import logging
import os
from typing import Any, Callable, Dict, Iterator, List, Sequence, Tuple

from mbr.pool import DecodeResult, SamplePool

logger = logging.getLogger(__name__)


class PoolFormatError(ValueError):
    """A malformed record; `line` is 1-based (0 for whole-file errors)"""

    def __init__(self, message: str, line: int = 0, path: str = ''):
        self.line = line
        self.path = path
        location = f"{path}:{line}: " if line else (f"{path}: " if path else '')
        super().__init__(f"{location}{message}")


def _ensure_parent(path: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def _records(path: str) -> Iterator[Tuple[int, Dict[str, Any]]]:
    with open(path, 'r', encoding='utf-8') as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise PoolFormatError(f"invalid JSON ({e.msg})", line_number, path) from e
            if not isinstance(record, dict):
                raise PoolFormatError("record is not an object", line_number, path)
            yield line_number, record


def _parse_pool(record: Dict[str, Any], line_number: int, path: str) -> SamplePool:
    if 'id' not in record:
        raise PoolFormatError("missing 'id'", line_number, path)
    samples = record.get('samples')
    if not isinstance(samples, list) or not samples:
        raise PoolFormatError(f"record '{record['id']}' needs a nonempty 'samples' list", line_number, path)
    if any(not isinstance(s, str) for s in samples):
        raise PoolFormatError(f"record '{record['id']}' has non-string samples", line_number, path)
    beam = record.get('beam')
    if beam is not None and not isinstance(beam, list):
        raise PoolFormatError(f"record '{record['id']}' has a non-list 'beam'", line_number, path)
    reference = record.get('reference')
    if reference is not None and not isinstance(reference, str):
        raise PoolFormatError(f"record '{record['id']}' has a non-string 'reference'", line_number, path)
    return SamplePool.from_dict(record)


class PoolFile:
    """A JSONL file of sample pools with unique ids"""

    def __init__(self, path: str):
        self.path = path

    def __iter__(self) -> Iterator[SamplePool]:
        seen = set()
        for line_number, record in _records(self.path):
            pool = _parse_pool(record, line_number, self.path)
            if pool.id in seen:
                raise PoolFormatError(f"duplicate id '{pool.id}'", line_number, self.path)
            seen.add(pool.id)
            yield pool

    def read(self) -> List[SamplePool]:
        pools = list(self)
        if not pools:
            raise PoolFormatError("no records", path=self.path)
        logger.debug("Read %d pools from %s", len(pools), self.path)
        return pools

    def write(self, pools: Sequence[SamplePool]):
        ids = [pool.id for pool in pools]
        if len(set(ids)) != len(ids):
            raise ValueError("Pool ids must be unique within a file")
        _write_jsonl(self.path, pools, lambda pool: pool.to_dict())


def _write_jsonl(path: str, items, to_record: Callable[[Any], Dict[str, Any]]):
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8') as handle:
        for item in items:
            handle.write(json.dumps(to_record(item), ensure_ascii=False) + '\n')


def write_decode_results(path: str, results: Sequence[DecodeResult]):
    _write_jsonl(path, results, lambda result: result.to_dict())


def read_decode_results(path: str) -> List[DecodeResult]:
    results = []
    for line_number, record in _records(path):
        try:
            results.append(DecodeResult.from_dict(record))
        except (KeyError, TypeError, ValueError) as e:
            raise PoolFormatError(f"malformed decode result ({e})", line_number, path) from e
    if not results:
        raise PoolFormatError("no records", path=path)
    return results


def write_selections(path: str, results: Sequence[DecodeResult]):
    """One selected translation per line (newlines inside a selection become spaces)"""
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8') as handle:
        for result in results:
            handle.write(result.selected_text.replace('\r', ' ').replace('\n', ' ') + '\n')
