"""Model adapter for the emogradient gateways: HTTP wire protocols over
stub or checkpoint-backed backends, plus a toy fine-tuning recipe."""

from .config import AdapterConfig
from .finetune import InvalidDatasetError, finetune
from .service import create_app
from .stub import stub_generate, stub_scores

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "InvalidDatasetError",
    "create_app",
    "finetune",
    "stub_generate",
    "stub_scores",
]
