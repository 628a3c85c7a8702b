"""Adapter configuration."""

from dataclasses import dataclass

MODES = ("stub", "real")

# real-mode defaults; greedy decoding, checkpoints must be available locally
DEFAULT_CLASSIFIER_MODEL = "monologg/bert-base-cased-goemotions-original"
DEFAULT_GENERATOR_MODEL = "t5-small"


@dataclass(frozen=True)
class AdapterConfig:
    mode: str = "stub"
    classifier_model: str = DEFAULT_CLASSIFIER_MODEL
    generator_model: str = DEFAULT_GENERATOR_MODEL
    epochs: int = 3
    batch_size: int = 6
    max_length: int = 128

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        for field in ("epochs", "batch_size", "max_length"):
            if getattr(self, field) < 1:
                raise ValueError(f"{field} must be >= 1")
