"""
Plain-text corpora: line files, aligned source/target pairs or two-column
TSV, and 0/1 provenance tag sidecars
"""

import os
from typing import List, Optional, Sequence

from noise.corpus import ParallelCorpus


def _ensure_parent(path: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def read_lines(path: str) -> List[str]:
    """Lines without their terminators; only \\n separates lines"""
    with open(path, 'r', encoding='utf-8', newline='') as handle:
        content = handle.read()
    if not content:
        return []
    lines = content.split('\n')
    if lines[-1] == '':
        lines.pop()
    return [line[:-1] if line.endswith('\r') else line for line in lines]


def write_lines(path: str, lines: Sequence[str]):
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        for line in lines:
            handle.write(line + '\n')


def read_tags(path: str) -> List[int]:
    tags = []
    for line_number, line in enumerate(read_lines(path), start=1):
        if line.strip() not in ('0', '1'):
            raise ValueError(f"{path}:{line_number}: tag must be 0 or 1, got {line!r}")
        tags.append(int(line))
    return tags


def write_tags(path: str, corpus: ParallelCorpus):
    write_lines(path, [str(tag) for tag in corpus.tags()])


def read_parallel(source_path: str, target_path: Optional[str] = None, tags_path: Optional[str] = None) -> ParallelCorpus:
    """
    Read a parallel corpus

    With target_path, source_path and target_path are aligned line files;
    without it, source_path is a TSV of source<TAB>target lines.
    """
    if target_path:
        sources = read_lines(source_path)
        targets = read_lines(target_path)
        if len(sources) != len(targets):
            raise ValueError(f"Line count mismatch: {source_path} has {len(sources)} lines, "
                             f"{target_path} has {len(targets)}")
        pairs = list(zip(sources, targets))
    else:
        pairs = []
        for line_number, line in enumerate(read_lines(source_path), start=1):
            fields = line.split('\t')
            if len(fields) != 2:
                raise ValueError(f"{source_path}:{line_number}: expected 2 tab-separated fields, got {len(fields)}")
            pairs.append((fields[0], fields[1]))

    tags = read_tags(tags_path) if tags_path else None
    return ParallelCorpus(pairs=tuple(pairs), provenance=tuple(tags) if tags is not None else None)


def write_parallel(corpus: ParallelCorpus, source_path: str, target_path: Optional[str] = None,
                   tags_path: Optional[str] = None):
    if target_path:
        write_lines(source_path, corpus.sources)
        write_lines(target_path, corpus.targets)
    else:
        for line_number, (source, target) in enumerate(corpus.pairs, start=1):
            if '\t' in source or '\t' in target:
                raise ValueError(f"Pair {line_number} contains a tab and cannot be written as TSV")
        write_lines(source_path, [f"{source}\t{target}" for source, target in corpus.pairs])
    if tags_path:
        write_tags(tags_path, corpus)
