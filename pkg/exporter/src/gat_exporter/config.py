"""Export configuration and exporter-specific errors."""

from __future__ import annotations

from dataclasses import dataclass

SOURCES = ("synthetic", "toy_train")


class ExporterError(Exception):
    pass


class InvalidConfig(ExporterError):
    pass


class TrainingFailure(ExporterError):
    """Training produced a non-finite loss."""


@dataclass(frozen=True)
class ExportConfig:
    source: str
    n: int
    d: int
    seed: int
    epochs: int = 1
    snapshot_every: int = 1

    def __post_init__(self):
        if self.source not in SOURCES:
            raise InvalidConfig(f"source must be one of {SOURCES}, got {self.source!r}")
        if self.n < 1:
            raise InvalidConfig(f"node count must be >= 1, got {self.n}")
        if self.d < 1:
            raise InvalidConfig(f"feature dimension must be >= 1, got {self.d}")
        if self.epochs < 1:
            raise InvalidConfig(f"epochs must be >= 1, got {self.epochs}")
        if self.snapshot_every < 1:
            raise InvalidConfig(f"snapshot interval must be >= 1, got {self.snapshot_every}")
