"""The MBR decision rule over sample pools"""

from mbr.pool import SamplePool, UtilityMatrix, DecodeResult, CurvePoint, CurveReport
from mbr.decoder import GridError, utility_matrix, expected_utilities, decode, decode_curve

__all__ = [
    'SamplePool', 'UtilityMatrix', 'DecodeResult', 'CurvePoint', 'CurveReport',
    'GridError', 'utility_matrix', 'expected_utilities', 'decode', 'decode_curve',
]
