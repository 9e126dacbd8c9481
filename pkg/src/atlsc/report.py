"""Check reports and their JSON form."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class CheckReport:
    verdict: bool
    engine: str
    witnesses: tuple[str, ...] = ()
    stats: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "engine": self.engine,
            "witnesses": list(self.witnesses),
            "stats": dict(sorted(self.stats.items())),
            "inputs": dict(sorted(self.inputs.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def format_table(game, table, keys: Optional[tuple] = None) -> list[str]:
    """One line per entry, e.g. ``strategy a1 memoryless: {q2 q3} -> m1``."""
    part = game.obs[table.agent]
    lines = []
    for key, move in table.entries:
        if keys is not None and key not in keys:
            continue
        if table.kind == "memoryless":
            what = "{" + " ".join(part.classes[key]) + "}"
            kind = "memoryless"
        else:
            what = "(" + " ".join(f"C{c}" for c in key) + ")"
            kind = f"window{table.window}"
        lines.append(f"strategy {table.agent} {kind}: {what} -> {move}")
    return lines


def format_valuation(valuation) -> list[str]:
    return [f"valuation {p}: {{{' '.join(states)}}}" for p, states in valuation]
