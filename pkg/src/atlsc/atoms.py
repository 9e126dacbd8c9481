"""Reserved atomic propositions used by the reductions.

Every reserved name contains ``#``, which user propositions may not use, so
the families below never collide with the game's own labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

RESERVED_CHAR = "#"


@dataclass(frozen=True)
class FreshAtomRegistry:
    def path_atom(self, i: int, level: int) -> str:
        return f"q#{i}@{level}"

    def move_atom(self, agent: str, move: str) -> str:
        return f"m#{agent}#{move}"

    def class_atom(self, i: int) -> str:
        return f"s#{i}"

    def state_atom(self, q: str) -> str:
        return f"p#{q}"

    def obs_atom(self, agent: str, c: int) -> str:
        return f"o#{agent}#{c}"

    def fresh(self, avoid: Iterable[str], stem: str = "#P") -> str:
        taken = set(avoid)
        n = 0
        while f"{stem}{n}" in taken:
            n += 1
        return f"{stem}{n}"

    @staticmethod
    def is_reserved(name: str) -> bool:
        return RESERVED_CHAR in name

    def check_disjoint(self, props: Iterable[str]) -> None:
        bad = sorted(p for p in props if self.is_reserved(p))
        if bad:
            raise ValueError(f"user propositions use the reserved character '#': {', '.join(bad)}")
