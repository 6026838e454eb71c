"""UE state: identity, slice binding, channel quality, and packet queues.

Queues are packet FIFOs drained bit-exactly by the transport layer. A
packet lost at its TTI of service moves to a holding area and re-enters
the *head* of the queue once its retransmission delay elapses, so FIFO
order is preserved and held bytes are invisible to the scheduler.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..errors import ConfigError
from .slicedef import Direction


@dataclass
class Packet:
    rnti: int
    direction: Direction
    app: str
    seq: int
    size_bytes: int
    t_enqueue: float
    meta: dict = field(default_factory=dict)
    remaining_bits: int = field(init=False)

    def __post_init__(self):
        self.remaining_bits = self.size_bytes * 8


class PacketFifo:
    """Per-UE, per-direction packet queue with retransmission holding."""

    def __init__(self):
        self._queue: deque[Packet] = deque()
        self._held: deque[tuple[int, Packet]] = deque()  # (release_tti, packet)
        self._next_seq = 0
        # Full-size byte accounting for the queue-conservation audit.
        self.enqueued_bytes = 0
        self.delivered_bytes = 0

    def new_seq(self) -> int:
        seq = self._next_seq
        self._next_seq += 1
        return seq

    def enqueue(self, packet: Packet) -> None:
        self._queue.append(packet)
        self.enqueued_bytes += packet.size_bytes

    @property
    def pending_bits(self) -> int:
        return sum(p.remaining_bits for p in self._queue)

    @property
    def pending_bytes(self) -> int:
        return -(-self.pending_bits // 8)

    @property
    def queued_full_bytes(self) -> int:
        return sum(p.size_bytes for p in self._queue)

    @property
    def held_full_bytes(self) -> int:
        return sum(p.size_bytes for _, p in self._held)

    def release_due(self, tti_index: int) -> None:
        """Re-queue held packets whose retransmission delay has elapsed.

        Released packets go to the queue head, oldest loss first.
        """
        due = [p for release, p in self._held if release <= tti_index]
        if not due:
            return
        self._held = deque(
            (release, p) for release, p in self._held if release > tti_index
        )
        self._queue.extendleft(reversed(due))

    def hold_for_retransmit(self, packet: Packet, release_tti: int) -> None:
        packet.remaining_bits = packet.size_bytes * 8
        self._held.append((release_tti, packet))

    def drain(self, bits: int) -> list[Packet]:
        """Drain up to `bits` from head-of-line packets; return completed ones."""
        completed: list[Packet] = []
        while bits > 0 and self._queue:
            head = self._queue[0]
            if head.remaining_bits > bits:
                head.remaining_bits -= bits
                break
            bits -= head.remaining_bits
            head.remaining_bits = 0
            completed.append(self._queue.popleft())
        return completed

    def mark_delivered(self, packet: Packet) -> None:
        self.delivered_bytes += packet.size_bytes


@dataclass
class UeContext:
    rnti: int
    imsi: str
    slice_id: int | None
    cqi_dl: int = 15
    cqi_ul: int = 15
    control_priority_flag: bool = False
    queues: dict[Direction, PacketFifo] = field(
        default_factory=lambda: {Direction.DL: PacketFifo(), Direction.UL: PacketFifo()}
    )

    def __post_init__(self):
        if not 0 <= self.rnti <= 0xFFFF:
            raise ConfigError(f"rnti must fit in 16 bits, got {self.rnti}")
        for cqi in (self.cqi_dl, self.cqi_ul):
            if not 1 <= cqi <= 15:
                raise ConfigError(f"CQI must be in 1..15, got {cqi}")

    def cqi(self, direction: Direction) -> int:
        return self.cqi_dl if direction == Direction.DL else self.cqi_ul

    def queue(self, direction: Direction) -> PacketFifo:
        return self.queues[direction]

    @property
    def dl_queue_bytes(self) -> int:
        return self.queues[Direction.DL].pending_bytes

    @property
    def ul_queue_bytes(self) -> int:
        return self.queues[Direction.UL].pending_bytes

    def summary(self) -> dict:
        return {
            "rnti": self.rnti,
            "imsi": self.imsi,
            "slice_id": self.slice_id,
            "cqi_dl": self.cqi_dl,
            "cqi_ul": self.cqi_ul,
            "dl_queue_bytes": self.dl_queue_bytes,
            "ul_queue_bytes": self.ul_queue_bytes,
        }
