"""Exception hierarchy shared across the simulator and control plane."""


class ConfigError(Exception):
    """Invalid cell, slice, UE, or scenario configuration."""


class ValidationError(Exception):
    """A control-plane command failed validation; state is unchanged."""


class DuplicateSliceId(ValidationError):
    pass


class UnknownSliceId(ValidationError):
    pass


class UnknownRnti(ValidationError):
    pass


class ShareSumExceeded(ValidationError):
    """Accepting the command would push the share sum above 100% in some direction."""


class SliceNonEmpty(ValidationError):
    """Delete refused while UEs are still bound to the slice."""


class InvariantViolation(Exception):
    """A per-TTI audit check failed; the simulation aborts."""
