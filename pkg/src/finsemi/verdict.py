from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """A boolean answer plus the lexicographically first witness when relevant."""

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds
