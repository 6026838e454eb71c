"""Named, independently seeded random streams.

Every stochastic draw in a scenario comes from a stream addressed by a
stable name (e.g. ``link.dl``, ``app.events.4602``), derived from the
scenario seed. Streams are mutually independent and insensitive to the
order in which other streams are consumed, so adding a traffic source
never perturbs the draws of an existing one.
"""

from __future__ import annotations

import hashlib
import random


def _derive_seed(scenario_seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{scenario_seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class StreamBank:
    """Lazily creates one ``random.Random`` per stream name."""

    def __init__(self, scenario_seed: int):
        self.scenario_seed = int(scenario_seed)
        self._streams: dict[str, random.Random] = {}

    def stream(self, name: str) -> random.Random:
        rng = self._streams.get(name)
        if rng is None:
            rng = random.Random(_derive_seed(self.scenario_seed, name))
            self._streams[name] = rng
        return rng
