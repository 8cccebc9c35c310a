# bispectral/schemas/__init__.py
from bispectral.schemas.report import ComparisonSummary, Report, ReportStatus, ResidualEntry

__all__ = ["ComparisonSummary", "Report", "ReportStatus", "ResidualEntry"]
