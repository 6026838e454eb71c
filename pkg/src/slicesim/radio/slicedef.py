"""Slice descriptors and the canonical inter-slice settlement ordering."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from ..errors import ConfigError


class Direction(str, Enum):
    DL = "dl"
    UL = "ul"


class RbAvailability(str, Enum):
    """Resource-block availability class.

    High-availability slices settle their quota first, win remainder-PRB
    ties, and never have quota lent away while they are backlogged; low
    availability slices settle afterwards and their unused quota is
    lendable.
    """

    HIGH = "high"
    LOW = "low"


@dataclass(frozen=True)
class SliceDescriptor:
    slice_id: int
    label: str
    dl_share: float
    ul_share: float
    priority: int = 0
    rb_availability: RbAvailability = RbAvailability.LOW

    def __post_init__(self):
        if self.slice_id < 0:
            raise ConfigError(f"slice_id must be non-negative, got {self.slice_id}")
        for name, share in (("dl_share", self.dl_share), ("ul_share", self.ul_share)):
            if not 0.0 <= share <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {share}")

    def share(self, direction: Direction) -> float:
        return self.dl_share if direction == Direction.DL else self.ul_share

    def settlement_key(self) -> tuple[int, int, int]:
        """Sort key: high availability first, then descending priority, then id."""
        avail = 0 if self.rb_availability == RbAvailability.HIGH else 1
        return (avail, -self.priority, self.slice_id)

    def with_shares(self, dl_share: float, ul_share: float) -> "SliceDescriptor":
        return replace(self, dl_share=dl_share, ul_share=ul_share)

    def to_dict(self) -> dict:
        return {
            "slice_id": self.slice_id,
            "label": self.label,
            "dl_share": self.dl_share,
            "ul_share": self.ul_share,
            "priority": self.priority,
            "rb_availability": self.rb_availability.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SliceDescriptor":
        try:
            availability = RbAvailability(data.get("rb_availability", "low"))
        except ValueError:
            raise ConfigError(
                f"rb_availability must be 'high' or 'low', got {data.get('rb_availability')!r}"
            ) from None
        if "share" in data and ("dl_share" in data or "ul_share" in data):
            raise ConfigError("give either 'share' or dl_share/ul_share, not both")
        if "share" in data:
            dl = ul = float(data["share"])
        else:
            try:
                dl = float(data["dl_share"])
                ul = float(data["ul_share"])
            except KeyError as missing:
                raise ConfigError(f"slice definition missing {missing}") from None
        try:
            return cls(
                slice_id=int(data["slice_id"]),
                label=str(data.get("label", f"slice-{data['slice_id']}")),
                dl_share=dl,
                ul_share=ul,
                priority=int(data.get("priority", 0)),
                rb_availability=availability,
            )
        except KeyError as missing:
            raise ConfigError(f"slice definition missing {missing}") from None
