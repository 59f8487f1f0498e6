"""
报告模型与输出格式
"""

from .models import DetectorBatchReport, EvaluationReport, FamilyTable, GallagherMatrixReport
from .response import OUTPUT_FORMATS, ReportEnvelope, ReportWriter

__all__ = [
    "DetectorBatchReport",
    "EvaluationReport",
    "FamilyTable",
    "GallagherMatrixReport",
    "OUTPUT_FORMATS",
    "ReportEnvelope",
    "ReportWriter",
]
