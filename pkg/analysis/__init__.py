"""Diagnostics for length bias, token-frequency bias, hallucinations and copies"""

from analysis.lengths import LengthTable, length_stats
from analysis.frequency import (
    FrequencyTable, build_frequency_table, token_probability_by_bucket, bucket_curve, BUCKET_SCHEMES
)
from analysis.pathology import PathologyReport, is_hallucination, is_copy, copy_overlap, pathology_report

__all__ = [
    'LengthTable', 'length_stats', 'FrequencyTable', 'build_frequency_table',
    'token_probability_by_bucket', 'bucket_curve', 'BUCKET_SCHEMES', 'PathologyReport',
    'is_hallucination', 'is_copy', 'copy_overlap', 'pathology_report',
]
