"""Cell-level radio configuration: resource grid geometry and link rates.

The PHY is abstracted to a fixed bits-per-PRB-per-TTI rate keyed by the
UE's CQI index; the default table is linear from 40 bits (CQI 1) to 600
bits (CQI 15), which peaks at ~30 Mbps on a 50-PRB grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import ConfigError

#: CQI index -> achievable bits per PRB per TTI.
DEFAULT_CQI_BITS: dict[int, int] = {cqi: 40 * cqi for cqi in range(1, 16)}

#: Named (bandwidth_hz, subcarrier_spacing_hz) numerology presets.
CELL_PRESETS: dict[str, tuple[float, float]] = {
    "lte10": (10e6, 15e3),  # 10 MHz carrier, 15 kHz SCS -> 50 PRBs
    "nr80": (80e6, 30e3),  # 80 MHz carrier, 30 kHz SCS -> 200 PRBs
}


def derive_prb_count(bandwidth_hz: float, subcarrier_spacing_hz: float) -> int:
    """Number of 12-subcarrier PRBs fitting in 90% of the carrier bandwidth."""
    if bandwidth_hz <= 0 or subcarrier_spacing_hz <= 0:
        raise ConfigError(
            f"bandwidth and subcarrier spacing must be positive, got "
            f"{bandwidth_hz} Hz / {subcarrier_spacing_hz} Hz"
        )
    prb_hz = 12.0 * subcarrier_spacing_hz
    if prb_hz > 0.9 * bandwidth_hz:
        raise ConfigError(
            f"one PRB ({prb_hz:.0f} Hz) does not fit in 90% of {bandwidth_hz:.0f} Hz"
        )
    count = math.floor(0.9 * bandwidth_hz / prb_hz)
    if count < 1:
        raise ConfigError("derived PRB count is below 1")
    return count


@dataclass(frozen=True)
class CellConfig:
    """Static cell parameters shared by both link directions."""

    bandwidth_hz: float
    subcarrier_spacing_hz: float
    prb_count: int = 0  # 0 means "derive from bandwidth/SCS"
    tti_s: float = 1e-3
    cqi_bits: dict[int, int] = field(default_factory=lambda: dict(DEFAULT_CQI_BITS))

    def __post_init__(self):
        if self.prb_count == 0:
            derived = derive_prb_count(self.bandwidth_hz, self.subcarrier_spacing_hz)
            object.__setattr__(self, "prb_count", derived)
        if self.prb_count < 1:
            raise ConfigError(f"prb_count must be >= 1, got {self.prb_count}")
        if self.tti_s <= 0:
            raise ConfigError(f"tti_s must be positive, got {self.tti_s}")
        table = self.cqi_bits
        if sorted(table) != list(range(1, 16)):
            raise ConfigError("cqi_bits must map every CQI index 1..15")
        values = [table[c] for c in range(1, 16)]
        if any(v < 0 for v in values):
            raise ConfigError("cqi_bits values must be non-negative")
        if any(b < a for a, b in zip(values, values[1:])):
            raise ConfigError("cqi_bits must be non-decreasing in CQI index")

    @classmethod
    def from_preset(cls, name: str, **overrides) -> "CellConfig":
        try:
            bandwidth_hz, scs_hz = CELL_PRESETS[name]
        except KeyError:
            raise ConfigError(
                f"unknown cell preset {name!r}; known: {sorted(CELL_PRESETS)}"
            ) from None
        return cls(bandwidth_hz=bandwidth_hz, subcarrier_spacing_hz=scs_hz, **overrides)

    def bits_per_prb(self, cqi: int) -> int:
        if cqi not in self.cqi_bits:
            raise ConfigError(f"CQI index must be 1..15, got {cqi}")
        return self.cqi_bits[cqi]
