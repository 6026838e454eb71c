from .cell import CELL_PRESETS, CellConfig, derive_prb_count
from .slicedef import Direction, RbAvailability, SliceDescriptor
from .ue import Packet, PacketFifo, UeContext
from .scheduler import (
    DeficitAccount,
    GrantRun,
    SchedulerState,
    TtiAllocation,
    allocate_tti,
    slice_prb_quota,
)
from .transport import Delivery, LinkImpairment, transport_step

__all__ = [
    "CELL_PRESETS",
    "CellConfig",
    "derive_prb_count",
    "Direction",
    "RbAvailability",
    "SliceDescriptor",
    "Packet",
    "PacketFifo",
    "UeContext",
    "DeficitAccount",
    "GrantRun",
    "SchedulerState",
    "TtiAllocation",
    "allocate_tti",
    "slice_prb_quota",
    "Delivery",
    "LinkImpairment",
    "transport_step",
]
