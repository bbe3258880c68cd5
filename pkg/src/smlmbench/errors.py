"""Exception types shared across the package."""

__all__ = [
    "ExcludedRegimeError",
    "DatasetError",
    "DatasetIntegrityError",
    "DatasetFormatError",
    "DatasetVersionError",
    "GenerationError",
    "PredictionsError",
]


class ExcludedRegimeError(ValueError):
    """Raised for parameter combinations the simulator refuses to run.

    High emitter density together with short dark times keeps several
    emitters lit in nearly every frame, so the detection filter would
    discard essentially the whole acquisition.
    """


class DatasetError(Exception):
    """Base class for dataset generation and loading failures."""


class DatasetIntegrityError(DatasetError):
    """A stored file does not match the digest recorded in the manifest."""


class DatasetFormatError(DatasetError):
    """A manifest or CSV record is malformed (reported with file and line)."""


class DatasetVersionError(DatasetError):
    """The manifest declares a format version this reader does not support."""


class GenerationError(DatasetError):
    """Dataset generation could not satisfy its own output contract."""


class PredictionsError(DatasetError):
    """A predictions file does not line up with the dataset split."""
