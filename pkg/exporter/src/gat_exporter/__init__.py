"""Produce attention-triple JSON documents, synthetically or from a toy
trained graph-attention model."""

from .config import ExportConfig, ExporterError, InvalidConfig, TrainingFailure
from .document import build_document, document_bytes
from .synthetic import export_synthetic
from .training import export_trained

__version__ = "0.1.0"
