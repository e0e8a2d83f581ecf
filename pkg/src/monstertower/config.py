from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TowerConfig:
    """Run settings shared by the command line and the experiment scripts.

    ``precision=None`` lets :func:`monstertower.tower.prolong` pick a
    precision and double it when a decision cannot be certified.
    """

    levels: int = 6
    precision: int | None = None
    adaptive: bool = True
    horizon: int = 64

    def prolong_kwargs(self) -> dict:
        return {"precision": self.precision, "adaptive": self.adaptive}
