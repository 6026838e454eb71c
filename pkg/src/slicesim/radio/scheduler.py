"""Two-level per-TTI scheduler: inter-slice quota split, intra-slice round robin.

Level 1 (``slice_prb_quota``) turns fractional shares into integer PRB
quotas with a deficit carryover so the long-run average quota converges
exactly to share x prb_count. Level 2 (``allocate_tti``) serves each
slice's backlogged UEs round-robin one PRB at a time from a persistent
cursor, then re-offers PRBs left unused by idle slices to backlogged
slices (work conservation). A backlogged slice's own quota is never lent
away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cell import CellConfig
from .slicedef import Direction, SliceDescriptor
from .ue import UeContext

# Fractional remainders below this are treated as exact-integer entitlements
# so float dust never earns a remainder PRB.
_REMAINDER_EPS = 1e-9


@dataclass
class DeficitAccount:
    """Fractional PRBs owed to a slice; stays in (-1, +1) after settlement."""

    carryover: float = 0.0


@dataclass
class SliceSchedState:
    deficit: DeficitAccount = field(default_factory=DeficitAccount)
    # Per service class: rnti to serve next (None = start at lowest rnti).
    cursors: dict[int, int | None] = field(default_factory=dict)


class SchedulerState:
    """Persistent per-direction scheduler state across TTIs."""

    def __init__(self):
        self._per_slice: dict[int, SliceSchedState] = {}

    def slice_state(self, slice_id: int) -> SliceSchedState:
        state = self._per_slice.get(slice_id)
        if state is None:
            state = SliceSchedState()
            self._per_slice[slice_id] = state
        return state

    def drop_slice(self, slice_id: int) -> None:
        self._per_slice.pop(slice_id, None)

    def carryovers(self) -> dict[int, float]:
        return {sid: st.deficit.carryover for sid, st in self._per_slice.items()}


@dataclass(frozen=True)
class GrantRun:
    """A run of consecutive PRBs granted to one UE within one slice."""

    prb_start: int
    n_prbs: int
    slice_id: int
    rnti: int
    bits_per_prb: int

    @property
    def bits(self) -> int:
        return self.n_prbs * self.bits_per_prb


@dataclass
class TtiAllocation:
    tti_index: int
    direction: Direction
    prb_count: int
    runs: list[GrantRun]

    @property
    def granted_prbs(self) -> int:
        return sum(run.n_prbs for run in self.runs)

    def per_prb_grants(self) -> list[tuple[int, int, int, int]]:
        """Expand runs to (prb_index, slice_id, rnti, bits_served) tuples."""
        grants = []
        for run in self.runs:
            for i in range(run.n_prbs):
                grants.append(
                    (run.prb_start + i, run.slice_id, run.rnti, run.bits_per_prb)
                )
        return grants

    def bits_by_rnti(self) -> dict[int, int]:
        bits: dict[int, int] = {}
        for run in self.runs:
            bits[run.rnti] = bits.get(run.rnti, 0) + run.bits
        return bits

    def prbs_by_slice(self) -> dict[int, int]:
        prbs: dict[int, int] = {}
        for run in self.runs:
            prbs[run.slice_id] = prbs.get(run.slice_id, 0) + run.n_prbs
        return prbs


def slice_prb_quota(
    slices: Sequence[SliceDescriptor],
    prb_count: int,
    state: SchedulerState,
    direction: Direction,
) -> dict[int, int]:
    """Settle this TTI's integer PRB quota per slice.

    Entitlement = share x prb_count + carryover. Quotas start at
    floor(entitlement); PRBs left over from flooring go one each to the
    slices with the largest fractional remainder (ties: high availability,
    then priority, then id) and are charged to the carryover. PRBs left
    over because shares sum below 1 are handed out round the settlement
    order without being charged, so carryover stays within (-1, +1).
    """
    order = sorted(slices, key=SliceDescriptor.settlement_key)
    quotas: dict[int, int] = {}
    remainders: list[tuple[float, tuple[int, int, int], SliceDescriptor]] = []
    entitlements: dict[int, float] = {}
    for desc in order:
        account = state.slice_state(desc.slice_id).deficit
        entitlement = desc.share(direction) * prb_count + account.carryover
        quota = math.floor(entitlement)
        remainder = entitlement - quota
        if remainder > 1.0 - _REMAINDER_EPS:
            # Float dust pushed an exact-integer entitlement just below it.
            quota += 1
            remainder = 0.0
        entitlements[desc.slice_id] = entitlement
        quotas[desc.slice_id] = quota
        if remainder > _REMAINDER_EPS:
            remainders.append((remainder, desc.settlement_key(), desc))
    leftover = prb_count - sum(quotas.values())
    remainders.sort(key=lambda item: (-item[0], item[1]))
    for _, _, desc in remainders:
        if leftover <= 0:
            break
        quotas[desc.slice_id] += 1
        leftover -= 1
    # Charged settlement: at most one remainder PRB per slice, so the
    # carryover is bounded by (-1, +1).
    for desc in order:
        account = state.slice_state(desc.slice_id).deficit
        account.carryover = entitlements[desc.slice_id] - quotas[desc.slice_id]
    # Spare capacity from unallocated share is not charged against anyone.
    while leftover > 0 and order:
        for desc in order:
            if leftover <= 0:
                break
            quotas[desc.slice_id] += 1
            leftover -= 1
    return quotas


def _next_member_after(members: Sequence[int], rnti: int) -> int:
    """Smallest member rnti strictly after `rnti`, wrapping cyclically."""
    for m in members:
        if m > rnti:
            return m
    return members[0]


class _SliceServer:
    """Serves one slice's backlog round-robin, coalescing grants into runs."""

    def __init__(
        self,
        desc: SliceDescriptor,
        members: Sequence[UeContext],
        sched: SliceSchedState,
        cell: CellConfig,
        direction: Direction,
        classifier: Callable[[UeContext], int],
    ):
        self.desc = desc
        self.sched = sched
        self.classes: dict[int, list[int]] = {}
        self.bits_per_prb: dict[int, int] = {}
        self.pending: dict[int, int] = {}
        for ue in sorted(members, key=lambda u: u.rnti):
            self.classes.setdefault(classifier(ue), []).append(ue.rnti)
            self.bits_per_prb[ue.rnti] = cell.bits_per_prb(ue.cqi(direction))
            self.pending[ue.rnti] = ue.queue(direction).pending_bits

    @property
    def backlogged(self) -> bool:
        return any(v > 0 for v in self.pending.values())

    def serve(self, budget: int, emit: Callable[[int, int, int], None]) -> int:
        """Grant up to `budget` PRBs; returns the number granted.

        `emit(rnti, n_prbs, bits_per_prb)` is called per run.
        """
        granted = 0
        for cls in sorted(self.classes):
            if budget <= 0:
                break
            served = self._serve_class(cls, budget, emit)
            granted += served
            budget -= served
        return granted

    def _serve_class(
        self, cls: int, budget: int, emit: Callable[[int, int, int], None]
    ) -> int:
        members = self.classes[cls]
        ring = [r for r in members if self.pending[r] > 0]
        if not ring:
            return 0
        cursor = self.sched.cursors.get(cls)
        if cursor is None:
            idx = 0
        else:
            idx = next((i for i, r in enumerate(ring) if r >= cursor), 0)
        granted = 0
        while budget > 0 and ring:
            if len(ring) == 1:
                # Single backlogged UE: grant its whole need in one run.
                rnti = ring[0]
                bits = self.bits_per_prb[rnti]
                need = -(-self.pending[rnti] // bits) if bits > 0 else 0
                if need == 0:
                    break
                n = min(budget, need)
                emit(rnti, n, bits)
                granted += n
                budget -= n
                self.pending[rnti] = max(0, self.pending[rnti] - n * bits)
                self.sched.cursors[cls] = _next_member_after(members, rnti)
                if self.pending[rnti] <= 0:
                    ring = []
            else:
                rnti = ring[idx]
                bits = self.bits_per_prb[rnti]
                if bits == 0:
                    ring.pop(idx)
                    if ring:
                        idx %= len(ring)
                    continue
                emit(rnti, 1, bits)
                granted += 1
                budget -= 1
                self.pending[rnti] -= bits
                self.sched.cursors[cls] = _next_member_after(members, rnti)
                if self.pending[rnti] <= 0:
                    self.pending[rnti] = 0
                    ring.pop(idx)
                    if ring:
                        idx %= len(ring)
                else:
                    idx = (idx + 1) % len(ring)
        return granted


def allocate_tti(
    cell: CellConfig,
    slices: Sequence[SliceDescriptor],
    ues: Iterable[UeContext],
    state: SchedulerState,
    tti_index: int,
    direction: Direction,
    classifier: Callable[[UeContext], int] | None = None,
) -> TtiAllocation:
    """Produce this TTI's grant map for one direction.

    Deterministic given (slices, UE queues, scheduler state). Queue
    contents are not mutated here; the transport layer drains them
    according to the returned allocation.
    """
    if classifier is None:
        classifier = lambda ue: 0  # noqa: E731 - single service class
    order = sorted(slices, key=SliceDescriptor.settlement_key)
    quotas = slice_prb_quota(order, cell.prb_count, state, direction)

    members: dict[int, list[UeContext]] = {desc.slice_id: [] for desc in order}
    for ue in ues:
        if ue.slice_id in members:
            members[ue.slice_id].append(ue)

    runs: list[GrantRun] = []
    prb_next = 0

    def make_emit(slice_id: int):
        def emit(rnti: int, n_prbs: int, bits_per_prb: int):
            nonlocal prb_next
            last = runs[-1] if runs else None
            if (
                last is not None
                and last.rnti == rnti
                and last.slice_id == slice_id
                and last.prb_start + last.n_prbs == prb_next
            ):
                runs[-1] = GrantRun(
                    last.prb_start, last.n_prbs + n_prbs, slice_id, rnti, bits_per_prb
                )
            else:
                runs.append(GrantRun(prb_next, n_prbs, slice_id, rnti, bits_per_prb))
            prb_next += n_prbs

        return emit

    servers = {
        desc.slice_id: _SliceServer(
            desc, members[desc.slice_id], state.slice_state(desc.slice_id),
            cell, direction, classifier,
        )
        for desc in order
    }

    leftover = 0
    for desc in order:
        server = servers[desc.slice_id]
        granted = server.serve(quotas[desc.slice_id], make_emit(desc.slice_id))
        leftover += quotas[desc.slice_id] - granted
    # Work conservation: hand PRBs unused by idle slices to backlogged
    # slices in settlement order. Slices that used their own quota in
    # full may borrow as well; a backlogged slice's quota was already
    # consumed above, so it is never lent out from under it.
    if leftover > 0:
        for desc in order:
            if leftover <= 0:
                break
            server = servers[desc.slice_id]
            if server.backlogged:
                granted = server.serve(leftover, make_emit(desc.slice_id))
                leftover -= granted

    return TtiAllocation(
        tti_index=tti_index,
        direction=direction,
        prb_count=cell.prb_count,
        runs=runs,
    )
