class UndefinedMetricError(ValueError):
    """Raised when a metric is undefined for its inputs (e.g. empty reference)"""
