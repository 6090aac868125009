"""File formats: pool records, decode outputs, parallel corpora and reports"""

from storage.pool_file import PoolFile, PoolFormatError, read_decode_results, write_decode_results, write_selections
from storage.corpus_files import read_lines, write_lines, read_parallel, write_parallel, read_tags, write_tags
from storage.reports import ReportWriter, format_value, report_config

__all__ = [
    'PoolFile', 'PoolFormatError', 'read_decode_results', 'write_decode_results', 'write_selections',
    'read_lines', 'write_lines', 'read_parallel', 'write_parallel', 'read_tags', 'write_tags',
    'ReportWriter', 'format_value', 'report_config',
]
