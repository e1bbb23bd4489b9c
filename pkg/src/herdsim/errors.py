"""Exception types shared across the package."""


class HerdsimError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(HerdsimError):
    """Invalid configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class NumericFailure(HerdsimError):
    """Non-finite drift, diffusion or state encountered during integration."""

    def __init__(self, t, message):
        self.t = t
        super().__init__(f"at t={t!r}: {message}")


class AbsorbingStateError(HerdsimError):
    """Every transition channel has zero rate; the jump process is stuck."""


class DegenerateHistogramError(HerdsimError):
    """Histogram input has no spread (all samples identical)."""


class UndefinedMoodError(HerdsimError):
    """Mood is undefined when there are no chartists at all."""
