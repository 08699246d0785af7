"""Coefficient synthesis, noise injection and receiver budgets."""

from .xampling import synthesize
from .noise import add_noise, noise_variance
from .budgets import (
    ResourceRow,
    dynamic_range,
    dynamic_range_floor,
    prototype_adc,
    prototype_resource_tables,
    resource_reduction,
    snr_loss_db,
)
from .tensor_io import export_tensor_text, read_tensor, write_tensor

__all__ = [
    "synthesize",
    "add_noise",
    "noise_variance",
    "ResourceRow",
    "dynamic_range",
    "dynamic_range_floor",
    "prototype_adc",
    "prototype_resource_tables",
    "resource_reduction",
    "snr_loss_db",
    "export_tensor_text",
    "read_tensor",
    "write_tensor",
]
