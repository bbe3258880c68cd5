"""Standalone reader for smlmbench dataset directories.

Exposes a single entry point, read_dataset, which verifies manifest
digests and returns padded masked sequences per split. Uses only the
standard library and shares no code with the dataset writer.
"""

from .reader import (
    IntegrityError,
    LoadedSplit,
    LocalizationRow,
    Manifest,
    PaddedSample,
    ReaderError,
    SchemaError,
    SPLIT_NAMES,
    SUPPORTED_FORMAT_VERSION,
    read_dataset,
    split_range,
)

__version__ = "0.1.0"

__all__ = [
    "IntegrityError",
    "LoadedSplit",
    "LocalizationRow",
    "Manifest",
    "PaddedSample",
    "ReaderError",
    "SchemaError",
    "SPLIT_NAMES",
    "SUPPORTED_FORMAT_VERSION",
    "read_dataset",
    "split_range",
]
