"""Numeric settings shared by the condition checkers and the solver."""

from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class Settings:
    """Grid sizes and tolerances; every report records the values it used.

    ``tol`` is the strictness margin: a strict inequality passes only when
    its margin exceeds ``tol``, while non-strict clauses (bound verification,
    domination) pass down to ``-tol``.
    """

    panels: int = 64
    nodes_per_panel: int = 4
    grid_n: int = 512
    box_grid: int = 128
    tol: float = 1e-6
    refine_tol: float = 1e-8

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_SETTINGS = Settings()
