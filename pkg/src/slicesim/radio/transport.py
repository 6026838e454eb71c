"""Drains granted bits through UE queues and produces timed deliveries.

A packet is delivered one TTI plus a fixed processing delay after the TTI
in which its last bit drains. With loss probability p the whole packet's
TTI of service is invalidated: its bytes return to the queue head and it
becomes eligible again after ``retransmit_delay_ttis``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cell import CellConfig
from .scheduler import TtiAllocation
from .ue import Packet, UeContext


@dataclass(frozen=True)
class LinkImpairment:
    loss_p: float = 0.0
    processing_delay_s: float = 1e-3
    retransmit_delay_ttis: int = 8

    def __post_init__(self):
        if not 0.0 <= self.loss_p <= 1.0:
            raise ValueError(f"loss_p must be in [0, 1], got {self.loss_p}")
        if self.processing_delay_s < 0:
            raise ValueError("processing_delay_s must be non-negative")
        if self.retransmit_delay_ttis < 1:
            raise ValueError("retransmit_delay_ttis must be >= 1")


@dataclass(frozen=True)
class Delivery:
    packet: Packet
    t_delivery: float

    @property
    def delay_s(self) -> float:
        return self.t_delivery - self.packet.t_enqueue


def transport_step(
    cell: CellConfig,
    allocation: TtiAllocation,
    ues: dict[int, UeContext],
    link: LinkImpairment,
    rng: random.Random,
) -> list[Delivery]:
    """Apply one TTI's allocation to the UE queues; return completed deliveries."""
    t_delivery = (allocation.tti_index + 1) * cell.tti_s + link.processing_delay_s
    deliveries: list[Delivery] = []
    bits_by_rnti = allocation.bits_by_rnti()
    for rnti in sorted(bits_by_rnti):
        fifo = ues[rnti].queue(allocation.direction)
        for packet in fifo.drain(bits_by_rnti[rnti]):
            if link.loss_p > 0.0 and rng.random() < link.loss_p:
                fifo.hold_for_retransmit(
                    packet, allocation.tti_index + link.retransmit_delay_ttis
                )
            else:
                fifo.mark_delivered(packet)
                deliveries.append(Delivery(packet=packet, t_delivery=t_delivery))
    return deliveries
