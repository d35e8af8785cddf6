"""I/O operations for gdsp-solver."""

from .instance_handler import InstanceHandler
from .report_writer import ReportWriter

__all__ = [
    "InstanceHandler",
    "ReportWriter",
]
