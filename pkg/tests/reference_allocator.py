"""Naive reference allocator used as the scheduling oracle.

Written straight from the scheduling contract with no shortcuts: quotas by
floor-plus-largest-remainder with a deficit carryover, strict one-PRB-at-
a-time round robin inside each slice, then per-PRB work-conserving
redistribution. Everything is O(prb_count * ues) loops on plain dicts so
it stays obviously correct; the production allocator must match it grant
for grant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class RefSlice:
    slice_id: int
    share: float
    priority: int = 0
    high_availability: bool = False

    def order_key(self):
        return (0 if self.high_availability else 1, -self.priority, self.slice_id)


@dataclass
class RefUe:
    rnti: int
    slice_id: int
    bits_per_prb: int
    pending_bits: int
    service_class: int = 0


@dataclass
class RefState:
    carryover: dict[int, float] = field(default_factory=dict)
    # (slice_id, service_class) -> rnti to serve next
    cursor: dict[tuple[int, int], int | None] = field(default_factory=dict)


def ref_quota(slices, prb_count, state):
    order = sorted(slices, key=RefSlice.order_key)
    ent = {}
    quota = {}
    for s in order:
        e = s.share * prb_count + state.carryover.get(s.slice_id, 0.0)
        q = math.floor(e)
        if e - q > 1.0 - 1e-9:
            q += 1
        ent[s.slice_id] = e
        quota[s.slice_id] = q
    leftover = prb_count - sum(quota.values())
    eligible = [s for s in order if ent[s.slice_id] - quota[s.slice_id] > 1e-9]
    eligible.sort(key=lambda s: (-(ent[s.slice_id] - quota[s.slice_id]), s.order_key()))
    for s in eligible:
        if leftover <= 0:
            break
        quota[s.slice_id] += 1
        leftover -= 1
    for s in order:
        state.carryover[s.slice_id] = ent[s.slice_id] - quota[s.slice_id]
    while leftover > 0 and order:
        for s in order:
            if leftover <= 0:
                break
            quota[s.slice_id] += 1
            leftover -= 1
    return quota


def _next_after(members, rnti):
    for m in members:
        if m > rnti:
            return m
    return members[0]


def _grant_one_prb(s, ues_by_slice, pending, state, cls_members, cls):
    """Pick the next UE of `s`/`cls` to serve, or None. Advances the cursor."""
    members = cls_members[(s.slice_id, cls)]
    ring = [r for r in members if pending[r] > 0]
    if not ring:
        return None
    cursor = state.cursor.get((s.slice_id, cls))
    chosen = None
    if cursor is not None:
        for r in ring:
            if r >= cursor:
                chosen = r
                break
    if chosen is None:
        chosen = ring[0]
    state.cursor[(s.slice_id, cls)] = _next_after(members, chosen)
    return chosen


def _serve_slice_one_prb(s, ues, pending, state, cls_members):
    for cls in sorted(c for (sid, c) in cls_members if sid == s.slice_id):
        rnti = _grant_one_prb(s, ues, pending, state, cls_members, cls)
        if rnti is not None:
            return rnti
    return None


def ref_allocate(slices, ues, prb_count, state):
    """Return (grants, quotas): grants is a list of (prb, slice_id, rnti, bits)."""
    order = sorted(slices, key=RefSlice.order_key)
    quotas = ref_quota(order, prb_count, state)
    pending = {u.rnti: u.pending_bits for u in ues}
    bits_of = {u.rnti: u.bits_per_prb for u in ues}
    cls_members: dict[tuple[int, int], list[int]] = {}
    for u in sorted(ues, key=lambda u: u.rnti):
        cls_members.setdefault((u.slice_id, u.service_class), []).append(u.rnti)

    grants = []
    prb = 0
    for s in order:
        for _ in range(quotas[s.slice_id]):
            rnti = _serve_slice_one_prb(s, ues, pending, state, cls_members)
            if rnti is None:
                break
            grants.append((prb, s.slice_id, rnti, bits_of[rnti]))
            pending[rnti] = max(0, pending[rnti] - bits_of[rnti])
            prb += 1
    # work conservation: leftover PRBs to backlogged slices in order
    leftover = prb_count - prb
    for s in order:
        slice_rntis = [r for (sid, c), ms in cls_members.items() if sid == s.slice_id for r in ms]
        while leftover > 0 and any(pending[r] > 0 for r in slice_rntis):
            rnti = _serve_slice_one_prb(s, ues, pending, state, cls_members)
            if rnti is None:
                break
            grants.append((prb, s.slice_id, rnti, bits_of[rnti]))
            pending[rnti] = max(0, pending[rnti] - bits_of[rnti])
            prb += 1
            leftover -= 1
    return grants, quotas
