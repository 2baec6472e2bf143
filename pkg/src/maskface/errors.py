"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Tensor dimensions do not satisfy an operation's contract."""


class ParameterError(ValueError):
    """A hyperparameter or option is outside its legal range."""


class ContractError(RuntimeError):
    """An API precondition was violated (wrong call order, missing state)."""


class NumericError(ArithmeticError):
    """A forward operation produced non-finite values (debug mode only)."""


class DatasetError(RuntimeError):
    """Problem with the on-disk dataset layout."""


class EmptyDatasetError(DatasetError):
    """No class survived scanning/filtering."""


class SplitError(DatasetError):
    """A class cannot be split into train and validation parts."""


class ImageFormatError(ValueError):
    """Malformed image file; `offset` is the byte position of the problem."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class ConfigError(ValueError):
    """Bad key, value, or invariant in a run configuration."""


class CheckpointError(RuntimeError):
    """Base class for checkpoint format failures."""


class BadMagicError(CheckpointError):
    """File does not start with the checkpoint magic."""


class VersionError(CheckpointError):
    """Checkpoint format version is not supported."""


class CrcError(CheckpointError):
    """Trailing CRC32 does not match the file contents."""


class TruncatedError(CheckpointError):
    """File ends before the declared contents do."""


class LoadError(CheckpointError):
    """A tensor map cannot be applied to a model."""
