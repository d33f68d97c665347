"""Upstream adapter: tabular data -> cross-validated explanations -> interchange JSON."""

from .adapter import (
    AdapterConfig,
    CLASSIFIERS,
    explain_cross_validated,
    prune_by_mutual_information,
    to_json,
)
from .shapley import kernel_attributions
from .tabular import Dataset, load_table, load_table_file

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "CLASSIFIERS",
    "Dataset",
    "explain_cross_validated",
    "kernel_attributions",
    "load_table",
    "load_table_file",
    "prune_by_mutual_information",
    "to_json",
]
