"""Discrete-event simulator of a slicing-enabled private 4G/5G cell.

The package models the radio resource grid of a single cell, a two-level
sliced PRB scheduler (inter-slice quota partitioning, intra-slice round
robin), a programmable slicing control plane (slice CRUD, UE relocation,
autoscaling, REST northbound), and three traffic applications: a
closed-loop path-controlled robot, an event-driven uplink command source,
and a downlink video stream with a playout-buffer stall model.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DuplicateSliceId,
    InvariantViolation,
    ShareSumExceeded,
    SliceNonEmpty,
    UnknownRnti,
    UnknownSliceId,
    ValidationError,
)

__all__ = [
    "__version__",
    "ConfigError",
    "DuplicateSliceId",
    "InvariantViolation",
    "ShareSumExceeded",
    "SliceNonEmpty",
    "UnknownRnti",
    "UnknownSliceId",
    "ValidationError",
]
