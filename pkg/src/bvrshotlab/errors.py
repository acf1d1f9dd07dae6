"""Exception types shared across the package."""


class ShotlabError(Exception):
    """Base class for all package errors."""


class SpecificationError(ShotlabError):
    """A variable specification is malformed (bad bounds, bad kind)."""


class DecodeError(ShotlabError):
    """A design row cannot be decoded into a scenario case."""


class DomainError(ShotlabError):
    """An argument is outside the physical domain of a function."""


class GeometryError(ShotlabError):
    """Degenerate geometry (e.g. coincident positions)."""


class DataError(ShotlabError):
    """Malformed or inconsistent data arrays."""


class SizeError(ShotlabError):
    """A dataset is too small for the requested operation."""


class StrategyError(ShotlabError):
    """A resampling strategy cannot be applied to the given data."""


class ConfigurationError(ShotlabError):
    """Invalid experiment or model configuration."""


class ConvergenceError(ShotlabError):
    """An iterative solver failed to converge within its budget."""


class TrainingError(ShotlabError):
    """Model training failed (divergence, degenerate labels)."""


class SequencingError(ShotlabError):
    """An operation was called before its inputs were resolved."""


class StageError(ShotlabError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage
